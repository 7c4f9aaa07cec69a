//! Vassiliev-style alternating sums over singular resolutions and the
//! degree-n invariants built from tuples of chord indices.

use std::ops::{Add, Sub};

use thiserror::Error;

use crate::gauss::{GaussDiagram, GaussError, Sign};
use crate::index::{a_n, chord_indices};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum FiniteTypeError {
    #[error(transparent)]
    Gauss(#[from] GaussError),
    #[error("index tuple must be strictly decreasing with nonzero entries: {0:?}")]
    BadTuple(Vec<i64>),
}

/// A diagram together with a set of chords marked as singular.
#[derive(Clone, Debug)]
pub struct SingularSelection {
    base: GaussDiagram,
    marked: Vec<u32>,
}

impl SingularSelection {
    pub fn new(base: GaussDiagram, marked: Vec<u32>) -> Result<Self, FiniteTypeError> {
        let mut marked = marked;
        marked.sort_unstable();
        marked.dedup();
        for &l in &marked {
            base.chord(l)?;
        }
        Ok(SingularSelection { base, marked })
    }

    pub fn n_marked(&self) -> usize {
        self.marked.len()
    }

    /// The resolution selected by `bits`: bit 0 turns the i-th marked chord
    /// positive, bit 1 negative.
    pub fn resolution(&self, bits: u64) -> GaussDiagram {
        let mut d = self.base.clone();
        for (i, &label) in self.marked.iter().enumerate() {
            let want = if (bits >> i) & 1 == 0 { Sign::Plus } else { Sign::Minus };
            if d.chords()[&label].sign != want {
                d = d.crossing_change(label).expect("marked chord exists");
            }
        }
        d
    }
}

/// Alternating sum of `f` over all resolutions of the marked chords:
/// resolutions with an odd number of negative choices enter negatively.
pub fn vassiliev_sum<T, E, F>(f: F, s: &SingularSelection) -> Result<T, E>
where
    T: Clone + Add<Output = T> + Sub<Output = T>,
    F: Fn(&GaussDiagram) -> Result<T, E>,
{
    let n = s.n_marked();
    let mut acc: Option<T> = None;
    for bits in 0..(1u64 << n) {
        let value = f(&s.resolution(bits))?;
        let negative = bits.count_ones() % 2 == 1;
        acc = Some(match acc {
            None => {
                if negative {
                    value.clone() - value
                } else {
                    value
                }
            }
            Some(a) => {
                if negative {
                    a - value
                } else {
                    a + value
                }
            }
        });
    }
    Ok(acc.expect("at least one resolution"))
}

fn validate_tuple(xs: &[i64]) -> Result<(), FiniteTypeError> {
    let ok = !xs.is_empty()
        && xs.iter().all(|&x| x != 0)
        && xs.windows(2).all(|w| w[0] > w[1]);
    if ok {
        Ok(())
    } else {
        Err(FiniteTypeError::BadTuple(xs.to_vec()))
    }
}

/// Sum over selections of distinct chords matching the strictly decreasing
/// index tuple of the product of their signs. Since the tuple entries are
/// pairwise distinct the sum factors as a product of writhe-polynomial
/// coefficients.
pub fn a_tuple(d: &GaussDiagram, xs: &[i64]) -> Result<i64, FiniteTypeError> {
    validate_tuple(xs)?;
    let mut prod = 1i64;
    for &x in xs {
        prod *= a_n(d, x)?;
        if prod == 0 {
            return Ok(0);
        }
    }
    Ok(prod)
}

/// Brute-force evaluation of the same sum by enumerating chord subsets;
/// retained as the independent oracle for [`a_tuple`].
pub fn a_tuple_brute_force(d: &GaussDiagram, xs: &[i64]) -> Result<i64, FiniteTypeError> {
    validate_tuple(xs)?;
    let indices = chord_indices(d)?;
    let labels: Vec<u32> = indices.keys().copied().collect();
    let n = xs.len();
    let mut total = 0i64;
    // ordered selections of n distinct chords with Ind(c_i) = xs[i]
    fn rec(
        d: &GaussDiagram,
        labels: &[u32],
        indices: &std::collections::BTreeMap<u32, i64>,
        xs: &[i64],
        chosen: &mut Vec<u32>,
        total: &mut i64,
    ) {
        if chosen.len() == xs.len() {
            let prod: i64 = chosen.iter().map(|l| d.chords()[l].sign.value()).product();
            *total += prod;
            return;
        }
        let want = xs[chosen.len()];
        for &l in labels {
            if indices[&l] == want && !chosen.contains(&l) {
                chosen.push(l);
                rec(d, labels, indices, xs, chosen, total);
                chosen.pop();
            }
        }
    }
    rec(d, &labels, &indices, xs, &mut Vec::with_capacity(n), &mut total);
    Ok(total)
}

/// The chord diagram of `n` nested parallel positive chords all crossed by
/// one positive transversal chord of index `n`.
pub fn parallel_with_transversal(n: usize) -> GaussDiagram {
    use crate::gauss::{Passage, Token};
    assert!(n >= 1);
    let transversal = (n + 1) as u32;
    let mut tokens = Vec::with_capacity(2 * n + 2);
    for i in 1..=n as u32 {
        tokens.push(Token::chord(i, Passage::Over, Sign::Plus));
    }
    tokens.push(Token::chord(transversal, Passage::Under, Sign::Plus));
    for i in (1..=n as u32).rev() {
        tokens.push(Token::chord(i, Passage::Under, Sign::Plus));
    }
    tokens.push(Token::chord(transversal, Passage::Over, Sign::Plus));
    GaussDiagram::new(vec![tokens]).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::*;
    use crate::index::affine_index_polynomial;
    use crate::moves::random_knot;
    use crate::poly::LaurentPoly;

    #[test]
    fn a_tuple_on_virtual_trefoil() {
        let d = virtual_trefoil();
        assert_eq!(a_tuple(&d, &[1]).unwrap(), 1);
        assert_eq!(a_tuple(&d, &[-1]).unwrap(), 1);
        assert_eq!(a_tuple(&d, &[1, -1]).unwrap(), 1);
        assert_eq!(a_tuple(&d, &[5]).unwrap(), 0);
    }

    #[test]
    fn a_tuple_rejects_bad_tuples() {
        let d = virtual_trefoil();
        assert!(a_tuple(&d, &[1, 1]).is_err());
        assert!(a_tuple(&d, &[-1, 1]).is_err());
        assert!(a_tuple(&d, &[1, 0]).is_err());
        assert!(a_tuple(&d, &[]).is_err());
    }

    #[test]
    fn a_tuple_matches_brute_force() {
        for seed in 0..30u64 {
            let d = random_knot(seed, 6);
            for xs in [vec![1], vec![-1], vec![2, 1], vec![1, -1], vec![2, 1, -1], vec![3, -2]] {
                assert_eq!(
                    a_tuple(&d, &xs).unwrap(),
                    a_tuple_brute_force(&d, &xs).unwrap(),
                    "seed {} xs {:?} d {}",
                    seed,
                    xs,
                    d
                );
            }
        }
    }

    #[test]
    fn zero_marked_chords_is_identity() {
        let d = virtual_trefoil();
        let s = SingularSelection::new(d.clone(), vec![]).unwrap();
        let v = vassiliev_sum(|k| affine_index_polynomial(k), &s).unwrap();
        assert_eq!(v, affine_index_polynomial(&d).unwrap());
    }

    #[test]
    fn affine_polynomial_has_degree_one() {
        for seed in 0..15u64 {
            let d = random_knot(seed + 100, 5);
            let labels: Vec<u32> = d.chords().keys().copied().collect();
            let s = SingularSelection::new(d.clone(), vec![labels[0], labels[1]]).unwrap();
            let v = vassiliev_sum(|k| affine_index_polynomial(k), &s).unwrap();
            assert!(v.is_zero(), "seed {} d {} -> {}", seed, d, v);
        }
    }

    #[test]
    fn transversal_witness_value() {
        for n in 1..=5usize {
            let d = parallel_with_transversal(n);
            let transversal = (n + 1) as u32;
            assert_eq!(
                crate::index::chord_index_intersection(&d, transversal).unwrap(),
                n as i64
            );
            let s = SingularSelection::new(d, vec![transversal]).unwrap();
            let v = vassiliev_sum(|k| affine_index_polynomial(k), &s).unwrap();
            let expected =
                LaurentPoly::from_terms([(n as i64, 1), (-(n as i64), 1), (0, -2)]);
            assert_eq!(v, expected, "n = {}", n);
            assert!(!v.is_zero());
        }
    }

    #[test]
    fn unknown_marked_label_errors() {
        assert!(SingularSelection::new(virtual_trefoil(), vec![9]).is_err());
    }
}
