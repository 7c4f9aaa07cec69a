//! The chord index of a real crossing in a virtual knot diagram, by two
//! independent definitions, and the degree-one polynomial invariants built
//! from it (writhe polynomial, affine index polynomial, flat invariant).

use std::collections::BTreeMap;

use crate::gauss::{GaussDiagram, GaussError, Passage, Token};
use crate::poly::LaurentPoly;

fn require_bar_free_knot(d: &GaussDiagram) -> Result<(), GaussError> {
    d.require_knot()?;
    d.require_bar_free()
}

/// True when `pos` lies strictly inside the cyclic interval `(from, to)` on a
/// circle with `n` positions.
fn in_open_interval(pos: usize, from: usize, to: usize, n: usize) -> bool {
    if from == to {
        return false;
    }
    let span = (to + n - from) % n;
    let off = (pos + n - from) % n;
    off > 0 && off < span
}

/// Chord index by the signed intersection count: each chord crossing `c`
/// contributes its sign, counted positively when its under endpoint sits on
/// the arc running from the under endpoint of `c` back to its over endpoint.
pub fn chord_index_intersection(d: &GaussDiagram, label: u32) -> Result<i64, GaussError> {
    require_bar_free_knot(d)?;
    let info = *d.chord(label)?;
    let n = d.components()[0].len();
    let (o, u) = (info.over.1, info.under.1);
    let mut ind = 0i64;
    for (&l, other) in d.chords() {
        if l == label {
            continue;
        }
        let (po, pu) = (other.over.1, other.under.1);
        let under_inside = in_open_interval(pu, u, o, n);
        let over_inside = in_open_interval(po, u, o, n);
        if under_inside != over_inside {
            ind += if under_inside { other.sign.value() } else { -other.sign.value() };
        }
    }
    Ok(ind)
}

/// Orient-smooth the crossing `label`, producing the 2-component link whose
/// first component is the arc entered when leaving the over passage.
pub fn oriented_smoothing(d: &GaussDiagram, label: u32) -> Result<GaussDiagram, GaussError> {
    require_bar_free_knot(d)?;
    let info = *d.chord(label)?;
    let tokens = &d.components()[0];
    let n = tokens.len();
    let (o, u) = (info.over.1, info.under.1);
    let walk = |from: usize, to: usize| -> Vec<Token> {
        let mut v = Vec::new();
        let mut i = (from + 1) % n;
        while i != to {
            v.push(tokens[i]);
            i = (i + 1) % n;
        }
        v
    };
    GaussDiagram::new(vec![walk(o, u), walk(u, o)])
}

/// Chord index as the difference of over and under linking numbers of the
/// oriented smoothing at the crossing.
pub fn chord_index_linking(d: &GaussDiagram, label: u32) -> Result<i64, GaussError> {
    let link = oriented_smoothing(d, label)?;
    let (lk_o, lk_u) = over_under_linking(&link);
    Ok(lk_o - lk_u)
}

/// Over and under linking numbers of a 2-component link: signed counts of the
/// inter-component crossings met as over (resp. under) passages while
/// traveling along the first component.
pub fn over_under_linking(link: &GaussDiagram) -> (i64, i64) {
    let (mut lk_o, mut lk_u) = (0i64, 0i64);
    for tok in &link.components()[0] {
        if let Token::Chord { label, passage, sign } = *tok {
            let info = link.chords()[&label];
            let partner = match passage {
                Passage::Over => info.under,
                Passage::Under => info.over,
            };
            if partner.0 != 0 {
                match passage {
                    Passage::Over => lk_o += sign.value(),
                    Passage::Under => lk_u += sign.value(),
                }
            }
        }
    }
    (lk_o, lk_u)
}

/// Indices of all chords, by the intersection definition.
pub fn chord_indices(d: &GaussDiagram) -> Result<BTreeMap<u32, i64>, GaussError> {
    require_bar_free_knot(d)?;
    d.chords()
        .keys()
        .map(|&l| chord_index_intersection(d, l).map(|i| (l, i)))
        .collect()
}

/// The coefficient `a_n`: signed count of index-`n` crossings, with the
/// writhe subtracted at `n = 0`.
pub fn a_n(d: &GaussDiagram, n: i64) -> Result<i64, GaussError> {
    let indices = chord_indices(d)?;
    let mut sum = 0i64;
    for (l, &ind) in &indices {
        if ind == n {
            sum += d.chords()[l].sign.value();
        }
    }
    if n == 0 {
        sum -= d.writhe();
    }
    Ok(sum)
}

/// Writhe polynomial: sum of `a_n t^n` over nonzero `n`.
pub fn writhe_polynomial(d: &GaussDiagram) -> Result<LaurentPoly, GaussError> {
    let indices = chord_indices(d)?;
    let mut w = LaurentPoly::zero();
    for (l, &ind) in &indices {
        if ind != 0 {
            w.add_term_q(4 * ind, d.chords()[l].sign.value());
        }
    }
    Ok(w)
}

/// Affine index polynomial: the writhe polynomial with the corrected constant
/// term, so that it vanishes at `t = 1`.
pub fn affine_index_polynomial(d: &GaussDiagram) -> Result<LaurentPoly, GaussError> {
    let mut p = writhe_polynomial(d)?;
    let a0 = a_n(d, 0)?;
    p.add_term_q(0, a0);
    Ok(p)
}

/// Invariant of the underlying flat knot: `W(t) - W(t^{-1})`.
pub fn flat_invariant(d: &GaussDiagram) -> Result<LaurentPoly, GaussError> {
    let w = writhe_polynomial(d)?;
    let inv = w.invert_var();
    Ok(w - inv)
}

/// Sum of `a_n` over odd `n`.
pub fn odd_writhe(d: &GaussDiagram) -> Result<i64, GaussError> {
    let indices = chord_indices(d)?;
    let mut sum = 0i64;
    for (l, &ind) in &indices {
        if ind.rem_euclid(2) == 1 {
            sum += d.chords()[l].sign.value();
        }
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::*;

    fn index_multiset(d: &GaussDiagram) -> Vec<i64> {
        let mut v: Vec<i64> = chord_indices(d).unwrap().values().copied().collect();
        v.sort();
        v
    }

    #[test]
    fn virtual_trefoil_indices() {
        assert_eq!(index_multiset(&virtual_trefoil()), vec![-1, 1]);
    }

    #[test]
    fn kink_chord_has_index_zero() {
        assert_eq!(chord_index_intersection(&positive_kink(), 1).unwrap(), 0);
        assert_eq!(chord_index_linking(&positive_kink(), 1).unwrap(), 0);
    }

    #[test]
    fn classical_diagram_has_all_indices_zero() {
        assert_eq!(index_multiset(&classical_trefoil()), vec![0, 0, 0]);
    }

    #[test]
    fn definitions_agree_on_examples() {
        for d in [virtual_trefoil(), classical_trefoil(), positive_kink()] {
            for &l in d.chords().keys() {
                assert_eq!(
                    chord_index_intersection(&d, l).unwrap(),
                    chord_index_linking(&d, l).unwrap(),
                    "chord {} of {}",
                    l,
                    d
                );
            }
        }
    }

    #[test]
    fn writhe_polynomials() {
        let w = writhe_polynomial(&virtual_trefoil()).unwrap();
        assert_eq!(w, LaurentPoly::from_terms([(1, 1), (-1, 1)]));
        assert_eq!(w.to_string(), "t + t^-1");

        let wm = writhe_polynomial(&virtual_trefoil().mirror()).unwrap();
        assert_eq!(wm, LaurentPoly::from_terms([(1, -1), (-1, -1)]));

        assert!(writhe_polynomial(&classical_trefoil()).unwrap().is_zero());
        assert!(writhe_polynomial(&unknot()).unwrap().is_zero());
    }

    #[test]
    fn affine_vanishes_at_one() {
        for d in [virtual_trefoil(), classical_trefoil(), positive_kink()] {
            let p = affine_index_polynomial(&d).unwrap();
            assert_eq!(p.eval_at_one(), 0);
        }
    }

    #[test]
    fn flat_invariant_formula() {
        // a diagram with W = t^2 + 2 t^-1 gives t^2 - 2t + 2t^-1 - t^-2
        let w = LaurentPoly::from_terms([(2, 1), (-1, 2)]);
        let f = w.clone() - w.invert_var();
        assert_eq!(f, LaurentPoly::from_terms([(2, 1), (1, -2), (-1, 2), (-2, -1)]));

        // symmetric writhe polynomial: the flat invariant vanishes
        assert!(flat_invariant(&virtual_trefoil()).unwrap().is_zero());
    }

    #[test]
    fn flat_invariant_stable_under_crossing_change() {
        let d = virtual_trefoil();
        let f = flat_invariant(&d).unwrap();
        for &l in d.chords().keys() {
            let c = d.crossing_change(l).unwrap();
            assert_eq!(flat_invariant(&c).unwrap(), f);
        }
    }

    #[test]
    fn odd_writhe_of_virtual_trefoil() {
        assert_eq!(odd_writhe(&virtual_trefoil()).unwrap(), 2);
        assert_eq!(odd_writhe(&classical_trefoil()).unwrap(), 0);
    }

    #[test]
    fn rejects_links_and_bars() {
        let link = GaussDiagram::parse("O1+ U2+ / U1+ O2+").unwrap();
        assert!(chord_index_intersection(&link, 1).is_err());
        let barred = GaussDiagram::parse("O1+ B U1+").unwrap();
        assert!(writhe_polynomial(&barred).is_err());
    }

    #[test]
    fn index_stability_under_other_crossing_changes() {
        let d = classical_trefoil();
        for &l in d.chords().keys() {
            let switched = d.crossing_change(l).unwrap();
            for &m in d.chords().keys() {
                if m != l {
                    assert_eq!(
                        chord_index_intersection(&d, m).unwrap(),
                        chord_index_intersection(&switched, m).unwrap()
                    );
                }
            }
        }
    }
}
