//! The indexed Kauffman bracket: smooth exactly the crossings whose index is
//! a multiple of n, count state circles, and assemble the indexed Jones
//! polynomial. The graphical variant keeps each state's unsmoothed chords as
//! a flat diagram instead of a circle count.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::gauss::{FlatDiagram, FlatToken, GaussDiagram, GaussError, Passage, Sign, Token};
use crate::index::chord_indices;
use crate::poly::LaurentPoly;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum BracketError {
    #[error(transparent)]
    Gauss(#[from] GaussError),
    #[error("state enumeration would need 2^{chords} states, over the cap of {cap} (set CHORDAL_STATE_CAP to raise it)")]
    StateCap { chords: usize, cap: u64 },
    #[error("smoothing choices must cover exactly the index class: {0}")]
    BadChoices(String),
}

pub const STATE_CAP_ENV: &str = "CHORDAL_STATE_CAP";
const DEFAULT_STATE_CAP: u64 = 1 << 20;

fn state_cap() -> u64 {
    std::env::var(STATE_CAP_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_STATE_CAP)
}

/// Chords whose index is a multiple of `n`; for `n = 0` the chords of index
/// zero. Always contains every index-zero chord.
pub fn index_class(d: &GaussDiagram, n: u32) -> Result<BTreeSet<u32>, GaussError> {
    let indices = chord_indices(d)?;
    Ok(indices
        .into_iter()
        .filter(|&(_, ind)| if n == 0 { ind == 0 } else { ind % n as i64 == 0 })
        .map(|(l, _)| l)
        .collect())
}

/// One state of the bracket expansion.
#[derive(Clone, Debug)]
pub struct State {
    /// 0-smoothing (A-type) or 1-smoothing per smoothed chord.
    pub choices: BTreeMap<u32, u8>,
    /// Circles of the state carrying the retained chord endpoints, from the
    /// traversal construction. Circles without endpoints are empty vectors.
    pub circles: Vec<Vec<(u32, Passage)>>,
    pub n0: usize,
    pub n1: usize,
}

impl State {
    pub fn n_components(&self) -> usize {
        self.circles.len()
    }

    /// The retained chords as a flat link, with free circles dropped;
    /// returns the flat diagram and the number of dropped circles.
    pub fn flat_state(&self) -> (FlatDiagram, usize) {
        let mut components = Vec::new();
        let mut free = 0usize;
        for circle in &self.circles {
            if circle.is_empty() {
                free += 1;
            } else {
                components.push(circle.iter().map(|&(l, _)| FlatToken::Chord(l)).collect());
            }
        }
        if components.is_empty() {
            // keep one circle so the flat state is a diagram, not nothing
            if free > 0 {
                free -= 1;
            }
            components.push(Vec::new());
        }
        (FlatDiagram { components }, free)
    }
}

/// For a positive chord the 0-smoothing is the orientation-respecting
/// reconnection; for a negative chord the 0-smoothing reverses orientation.
fn smoothing_is_oriented(sign: Sign, choice: u8) -> bool {
    match (sign, choice) {
        (Sign::Plus, 0) | (Sign::Minus, 1) => true,
        _ => false,
    }
}

struct Smoothing {
    /// positions (token offsets) of smoothed endpoints, sorted
    cut_positions: Vec<usize>,
    /// chord data: for each smoothed chord, (cut index of over, cut index of under, oriented)
    glued: Vec<(usize, usize, bool)>,
    /// retained tokens per segment (segment i runs from cut i to cut i+1)
    segment_tokens: Vec<Vec<(u32, Passage)>>,
}

fn build_smoothing(
    d: &GaussDiagram,
    choices: &BTreeMap<u32, u8>,
) -> Result<Smoothing, BracketError> {
    let tokens = &d.components()[0];
    let n = tokens.len();
    let mut cut_positions = Vec::new();
    for (i, tok) in tokens.iter().enumerate() {
        if let Token::Chord { label, .. } = tok {
            if choices.contains_key(label) {
                cut_positions.push(i);
            }
        }
    }
    let m2 = cut_positions.len();
    let cut_index: BTreeMap<usize, usize> =
        cut_positions.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let mut glued = Vec::new();
    for (&label, &choice) in choices {
        let info = d.chord(&label.clone()).map_err(BracketError::Gauss)?;
        let (o, u) = (info.over.1, info.under.1);
        glued.push((cut_index[&o], cut_index[&u], smoothing_is_oriented(info.sign, choice)));
    }
    // retained tokens per segment
    let n_segments = m2.max(1).min(if m2 == 0 { 1 } else { m2 });
    let mut segment_tokens: Vec<Vec<(u32, Passage)>> = vec![Vec::new(); if m2 == 0 { 1 } else { m2 }];
    if m2 == 0 {
        for tok in tokens {
            if let Token::Chord { label, passage, .. } = *tok {
                segment_tokens[0].push((label, passage));
            }
        }
    } else {
        for k in 0..m2 {
            let from = cut_positions[k];
            let to = cut_positions[(k + 1) % m2];
            let mut i = (from + 1) % n;
            while i != to {
                if let Token::Chord { label, passage, .. } = tokens[i] {
                    segment_tokens[k].push((label, passage));
                }
                i = (i + 1) % n;
            }
        }
    }
    let _ = n_segments;
    Ok(Smoothing { cut_positions, glued, segment_tokens })
}

/// Fast circle count: union the segments glued by each smoothing and count
/// the classes.
fn component_count_union_find(s: &Smoothing) -> usize {
    let m2 = s.cut_positions.len();
    if m2 == 0 {
        return 1;
    }
    let mut parent: Vec<usize> = (0..m2).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut c = x;
        while parent[c] != r {
            let next = parent[c];
            parent[c] = r;
            c = next;
        }
        r
    }
    let mut union = |parent: &mut Vec<usize>, a: usize, b: usize| {
        let (ra, rb) = (find(parent, a), find(parent, b));
        if ra != rb {
            parent[ra] = rb;
        }
    };
    let seg_before = |cut: usize| (cut + m2 - 1) % m2;
    for &(a, b, oriented) in &s.glued {
        if oriented {
            union(&mut parent, seg_before(a), b);
            union(&mut parent, seg_before(b), a);
        } else {
            union(&mut parent, seg_before(a), seg_before(b));
            union(&mut parent, a, b);
        }
    }
    let mut roots = BTreeSet::new();
    for i in 0..m2 {
        roots.insert(find(&mut parent, i));
    }
    roots.len()
}

/// Independent circle construction by explicit traversal of segment ends.
/// Returns the circles as cyclic lists of retained endpoints.
fn circles_by_traversal(s: &Smoothing) -> Vec<Vec<(u32, Passage)>> {
    let m2 = s.cut_positions.len();
    if m2 == 0 {
        return vec![s.segment_tokens[0].clone()];
    }
    // ends: 2*seg = left end (at cut seg), 2*seg+1 = right end (at cut seg+1)
    let mut mate = vec![usize::MAX; 2 * m2];
    let left = |seg: usize| 2 * seg;
    let right = |seg: usize| 2 * seg + 1;
    let seg_before = |cut: usize| (cut + m2 - 1) % m2;
    for &(a, b, oriented) in &s.glued {
        if oriented {
            mate[right(seg_before(a))] = left(b);
            mate[left(b)] = right(seg_before(a));
            mate[right(seg_before(b))] = left(a);
            mate[left(a)] = right(seg_before(b));
        } else {
            mate[right(seg_before(a))] = right(seg_before(b));
            mate[right(seg_before(b))] = right(seg_before(a));
            mate[left(a)] = left(b);
            mate[left(b)] = left(a);
        }
    }
    let mut visited = vec![false; m2];
    let mut circles = Vec::new();
    for start in 0..m2 {
        if visited[start] {
            continue;
        }
        let mut circle: Vec<(u32, Passage)> = Vec::new();
        let mut seg = start;
        let mut forward = true;
        loop {
            if visited[seg] {
                break;
            }
            visited[seg] = true;
            if forward {
                circle.extend(s.segment_tokens[seg].iter().copied());
            } else {
                circle.extend(s.segment_tokens[seg].iter().rev().copied());
            }
            let exit = if forward { right(seg) } else { left(seg) };
            let entry = mate[exit];
            seg = entry / 2;
            forward = entry % 2 == 0;
        }
        circles.push(circle);
    }
    circles
}

/// Smooth the chords selected by `choices` (which must cover exactly one
/// index class or any chosen chord set) and build the resulting state.
pub fn smooth_state(
    d: &GaussDiagram,
    choices: &BTreeMap<u32, u8>,
) -> Result<State, BracketError> {
    d.require_knot().map_err(BracketError::Gauss)?;
    d.require_bar_free().map_err(BracketError::Gauss)?;
    for (&label, &c) in choices {
        d.chord(label).map_err(BracketError::Gauss)?;
        if c > 1 {
            return Err(BracketError::BadChoices(format!("choice for chord {} must be 0 or 1", label)));
        }
    }
    let s = build_smoothing(d, choices)?;
    let circles = circles_by_traversal(&s);
    debug_assert_eq!(circles.len(), component_count_union_find(&s));
    let n1 = choices.values().filter(|&&c| c == 1).count();
    let n0 = choices.len() - n1;
    Ok(State { choices: choices.clone(), circles, n0, n1 })
}

fn delta() -> LaurentPoly {
    // -A^2 - A^{-2} with A = t^{-1/4}
    let mut p = LaurentPoly::zero();
    p.add_term_q(-2, -1);
    p.add_term_q(2, -1);
    p
}

fn writhe_normalization(w: i64) -> LaurentPoly {
    // (-A^3)^{-w} = (-1)^w A^{-3w} = (-1)^w t^{3w/4}
    let coeff = if w.rem_euclid(2) == 0 { 1 } else { -1 };
    LaurentPoly::monomial_q(3 * w, coeff)
}

fn check_cap(n_smoothed: usize) -> Result<(), BracketError> {
    let cap = state_cap();
    if n_smoothed >= 63 || (1u64 << n_smoothed) > cap {
        return Err(BracketError::StateCap { chords: n_smoothed, cap });
    }
    Ok(())
}

/// The indexed Jones polynomial `V^n`: bracket state sum over the smoothings
/// of the index class of `n`, normalized so the unknot maps to 1.
pub fn indexed_jones(d: &GaussDiagram, n: u32) -> Result<LaurentPoly, BracketError> {
    d.require_knot().map_err(BracketError::Gauss)?;
    d.require_bar_free().map_err(BracketError::Gauss)?;
    let class: Vec<u32> = index_class(d, n)?.into_iter().collect();
    let m = class.len();
    check_cap(m)?;
    // precompute delta powers up to m + 1 circles
    let dl = delta();
    let mut delta_pow = vec![LaurentPoly::one()];
    for i in 1..=m + 2 {
        delta_pow.push(&delta_pow[i - 1] * &dl);
    }
    let mut sum = LaurentPoly::zero();
    for bits in 0..(1u64 << m) {
        let choices: BTreeMap<u32, u8> =
            class.iter().enumerate().map(|(i, &l)| (l, ((bits >> i) & 1) as u8)).collect();
        let s = build_smoothing(d, &choices)?;
        let circles = component_count_union_find(&s);
        let n1 = bits.count_ones() as i64;
        let n0 = m as i64 - n1;
        // A^{n0 - n1} = t^{-(n0-n1)/4}
        let mut term = LaurentPoly::monomial_q(-(n0 - n1), 1);
        term = &term * &delta_pow[circles - 1];
        sum += &term;
    }
    Ok(&writhe_normalization(d.writhe()) * &sum)
}

/// `|C_n| >= span V^n` check; vacuously true when `V^n = 0`.
pub fn span_bound_holds(d: &GaussDiagram, n: u32) -> Result<bool, BracketError> {
    let v = indexed_jones(d, n)?;
    let class = index_class(d, n)?;
    match v.span() {
        None => Ok(true),
        Some(span) => Ok(crate::poly::Frac::new(class.len() as i64, 1) >= span),
    }
}

/// The graphical indexed Jones polynomial: coefficients grouped by the
/// syntactic normal form of each state's flat diagram of retained chords.
/// Free circles are absorbed as factors of `-A^2 - A^{-2}`.
pub fn graphical_indexed_jones(
    d: &GaussDiagram,
    n: u32,
) -> Result<BTreeMap<String, LaurentPoly>, BracketError> {
    d.require_knot().map_err(BracketError::Gauss)?;
    d.require_bar_free().map_err(BracketError::Gauss)?;
    let class: Vec<u32> = index_class(d, n)?.into_iter().collect();
    let m = class.len();
    check_cap(m)?;
    let dl = delta();
    let mut delta_pow = vec![LaurentPoly::one()];
    for i in 1..=m + 2 {
        delta_pow.push(&delta_pow[i - 1] * &dl);
    }
    let norm = writhe_normalization(d.writhe());
    let mut out: BTreeMap<String, LaurentPoly> = BTreeMap::new();
    for bits in 0..(1u64 << m) {
        let choices: BTreeMap<u32, u8> =
            class.iter().enumerate().map(|(i, &l)| (l, ((bits >> i) & 1) as u8)).collect();
        let state = smooth_state(d, &choices)?;
        let (flat, free) = state.flat_state();
        let key = flat.canonical_string_unordered();
        let mut term = LaurentPoly::monomial_q(-(state.n0 as i64 - state.n1 as i64), 1);
        term = &term * &delta_pow[free];
        term = &term * &norm;
        let entry = out.entry(key).or_insert_with(LaurentPoly::zero);
        *entry += &term;
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

/// Replace every flat key by its circle-count power of `-A^2 - A^{-2}`,
/// recovering the plain indexed Jones polynomial.
pub fn specialize_graphical(graphical: &BTreeMap<String, LaurentPoly>) -> LaurentPoly {
    let dl = delta();
    let mut sum = LaurentPoly::zero();
    for (key, coeff) in graphical {
        let circles = key.split('/').count();
        let mut term = coeff.clone();
        for _ in 1..circles {
            term = &term * &dl;
        }
        sum += &term;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::*;

    #[test]
    fn index_classes_of_virtual_trefoil() {
        let d = virtual_trefoil();
        assert_eq!(index_class(&d, 1).unwrap().len(), 2);
        assert!(index_class(&d, 0).unwrap().is_empty());
        assert!(index_class(&d, 2).unwrap().is_empty());
    }

    #[test]
    fn kink_state_components() {
        let d = positive_kink();
        let s0 = smooth_state(&d, &BTreeMap::from([(1u32, 0u8)])).unwrap();
        assert_eq!(s0.n_components(), 2);
        let s1 = smooth_state(&d, &BTreeMap::from([(1u32, 1u8)])).unwrap();
        assert_eq!(s1.n_components(), 1);
    }

    #[test]
    fn unknot_state() {
        let s = smooth_state(&unknot(), &BTreeMap::new()).unwrap();
        assert_eq!(s.n_components(), 1);
    }

    #[test]
    fn positive_kink_bracket_is_minus_a_cubed() {
        // V of the kink must be 1 after writhe normalization; the raw state
        // sum A*delta + A^{-1} = -A^3 pins the smoothing convention.
        let v = indexed_jones(&positive_kink(), 1).unwrap();
        assert_eq!(v, LaurentPoly::one());
    }

    #[test]
    fn unknot_jones_is_one() {
        for n in 0..4 {
            assert_eq!(indexed_jones(&unknot(), n).unwrap(), LaurentPoly::one());
        }
    }

    #[test]
    fn classical_trefoil_jones() {
        let v = indexed_jones(&classical_trefoil(), 1).unwrap();
        assert_eq!(v, LaurentPoly::from_terms([(-4, -1), (-3, 1), (-1, 1)]));
        // classical diagrams: every index class contains all chords
        assert_eq!(indexed_jones(&classical_trefoil(), 0).unwrap(), v);
        assert_eq!(indexed_jones(&classical_trefoil(), 2).unwrap(), v);
    }

    #[test]
    fn state_counts_sum() {
        let d = virtual_trefoil();
        let class: Vec<u32> = index_class(&d, 1).unwrap().into_iter().collect();
        let mut total = 0;
        for bits in 0..(1u64 << class.len()) {
            let choices: BTreeMap<u32, u8> =
                class.iter().enumerate().map(|(i, &l)| (l, ((bits >> i) & 1) as u8)).collect();
            let s = smooth_state(&d, &choices).unwrap();
            assert_eq!(s.n0 + s.n1, class.len());
            total += 1;
        }
        assert_eq!(total, 4);
    }

    #[test]
    fn graphical_specializes_to_jones() {
        for (d, n) in [
            (virtual_trefoil(), 0u32),
            (virtual_trefoil(), 1),
            (virtual_trefoil(), 2),
            (classical_trefoil(), 1),
            (positive_kink(), 0),
        ] {
            let g = graphical_indexed_jones(&d, n).unwrap();
            let direct = indexed_jones(&d, n).unwrap();
            assert_eq!(specialize_graphical(&g), direct, "n={} d={}", n, d);
        }
    }

    #[test]
    fn graphical_of_classical_is_single_trivial_key() {
        let g = graphical_indexed_jones(&classical_trefoil(), 1).unwrap();
        assert_eq!(g.len(), 1);
        let (key, coeff) = g.iter().next().unwrap();
        assert_eq!(key, "");
        assert_eq!(*coeff, indexed_jones(&classical_trefoil(), 1).unwrap());
    }

    #[test]
    fn span_bound_on_examples() {
        for (d, n) in [(virtual_trefoil(), 0u32), (virtual_trefoil(), 1), (classical_trefoil(), 1)] {
            assert!(span_bound_holds(&d, n).unwrap());
        }
    }

    #[test]
    fn state_cap_is_enforced() {
        std::env::set_var(STATE_CAP_ENV, "4");
        let d = classical_trefoil();
        let r = indexed_jones(&d, 1);
        std::env::remove_var(STATE_CAP_ENV);
        assert!(matches!(r, Err(BracketError::StateCap { chords: 3, cap: 4 })));
    }
}
