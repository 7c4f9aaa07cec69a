//! Sparse Laurent polynomials with exact integer coefficients.
//!
//! Exponents are stored in quarter-units of `t`, so a single representation
//! covers integer powers (writhe polynomials), half powers (state sums of
//! diagrams with an even number of circles) and the bracket variable
//! `A = t^{-1/4}`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

/// A Laurent polynomial in `t` with integer coefficients; keys are exponents
/// counted in quarter-units (`4` means `t`, `2` means `t^{1/2}`, ...).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial_q(0, 1)
    }

    /// Monomial `coeff * t^(quarter_exp / 4)`.
    pub fn monomial_q(quarter_exp: i64, coeff: i64) -> Self {
        let mut terms = BTreeMap::new();
        if coeff != 0 {
            terms.insert(quarter_exp, coeff);
        }
        LaurentPoly { terms }
    }

    /// Monomial `coeff * t^exp` with an integer exponent.
    pub fn monomial(exp: i64, coeff: i64) -> Self {
        Self::monomial_q(exp * 4, coeff)
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(integer_exp_terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in integer_exp_terms {
            p.add_term_q(e * 4, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term_q(&mut self, quarter_exp: i64, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(quarter_exp).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.remove(&quarter_exp);
        }
    }

    /// Coefficient of `t^(quarter_exp/4)`; 0 when absent.
    pub fn coeff_q(&self, quarter_exp: i64) -> i64 {
        self.terms.get(&quarter_exp).copied().unwrap_or(0)
    }

    /// Coefficient of `t^exp` for an integer exponent.
    pub fn coeff(&self, exp: i64) -> i64 {
        self.coeff_q(exp * 4)
    }

    pub fn iter_q(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    /// Substitute `t -> t^{-1}`.
    pub fn invert_var(&self) -> Self {
        let mut p = Self::zero();
        for (&e, &c) in &self.terms {
            p.add_term_q(-e, c);
        }
        p
    }

    /// Sum of all coefficients, i.e. the evaluation at `t = 1`.
    pub fn eval_at_one(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Degree span in `t`-units as a reduced fraction, `None` for the zero
    /// polynomial.
    pub fn span(&self) -> Option<Frac> {
        let min = *self.terms.keys().next()?;
        let max = *self.terms.keys().next_back()?;
        Some(Frac::new(max - min, 4))
    }

    /// `[exp_numerator, exp_denominator, coeff]` triples, exponents reduced
    /// to lowest terms and listed in descending order.
    pub fn to_triples(&self) -> Vec<(i64, i64, i64)> {
        self.terms
            .iter()
            .rev()
            .map(|(&e, &c)| {
                let f = Frac::new(e, 4);
                (f.num, f.den, c)
            })
            .collect()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, &c) in self.terms.iter().rev() {
            let (sign, mag) = if c < 0 { ("-", -c) } else { ("+", c) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            let frac = Frac::new(e, 4);
            if e == 0 {
                write!(f, "{}", mag)?;
            } else {
                if mag != 1 {
                    write!(f, "{}", mag)?;
                }
                if frac.den == 1 {
                    if frac.num == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{}", frac.num)?;
                    }
                } else {
                    write!(f, "t^({}/{})", frac.num, frac.den)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, &c) in &rhs.terms {
            self.add_term_q(e, c);
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, &c) in &rhs.terms {
            self.add_term_q(e, -c);
        }
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly::zero() - self
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e1, &c1) in &self.terms {
            for (&e2, &c2) in &rhs.terms {
                out.add_term_q(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        (&self) * (&rhs)
    }
}

/// Reduced fraction, used for polynomial spans.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct Frac {
    pub num: i64,
    pub den: i64,
}

impl Frac {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0);
        let g = gcd(num.unsigned_abs(), den.unsigned_abs()) as i64;
        let (mut num, mut den) = (num / g, den / g);
        if den < 0 {
            num = -num;
            den = -den;
        }
        Frac { num, den }
    }

    pub fn as_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl fmt::Display for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl PartialOrd for Frac {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Frac {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.num * other.den).cmp(&(other.num * self.den))
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if a == 0 && b == 0 {
        return 1;
    }
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Formal Z-linear combination of elements of an ordered set: group-ring
/// elements, coloring-weight multisets and similar state sums.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FormalSum<K: Ord> {
    terms: BTreeMap<K, i64>,
}

impl<K: Ord + Clone> FormalSum<K> {
    pub fn zero() -> Self {
        FormalSum { terms: BTreeMap::new() }
    }

    pub fn singleton(k: K) -> Self {
        let mut s = Self::zero();
        s.add(k, 1);
        s
    }

    pub fn add(&mut self, k: K, mult: i64) {
        if mult == 0 {
            return;
        }
        let e = self.terms.entry(k.clone()).or_insert(0);
        *e += mult;
        if *e == 0 {
            self.terms.remove(&k);
        }
    }

    pub fn get(&self, k: &K) -> i64 {
        self.terms.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, i64)> {
        self.terms.iter().map(|(k, &m)| (k, m))
    }

    /// Total multiplicity (with signs).
    pub fn total(&self) -> i64 {
        self.terms.values().sum()
    }
}

impl<K: Ord + fmt::Display> fmt::Display for FormalSum<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &m) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if m == 1 {
                write!(f, "{}", k)?;
            } else {
                write!(f, "{}\u{b7}{}", m, k)?;
            }
        }
        Ok(())
    }
}

impl<K: Ord + fmt::Display> fmt::Debug for FormalSum<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let p = LaurentPoly::from_terms([(1, 1), (-1, 1)]);
        let q = LaurentPoly::from_terms([(1, -1), (-1, -1)]);
        assert!((p.clone() + q).is_zero());
        let sq = &p * &p;
        assert_eq!(sq, LaurentPoly::from_terms([(2, 1), (0, 2), (-2, 1)]));
        assert_eq!(p.eval_at_one(), 2);
    }

    #[test]
    fn rendering() {
        let p = LaurentPoly::from_terms([(1, 1), (-1, 1)]);
        assert_eq!(p.to_string(), "t + t^-1");
        let q = LaurentPoly::from_terms([(2, 2), (-4, 1), (0, -3)]);
        assert_eq!(q.to_string(), "2t^2 - 3 + t^-4");
        let mut r = LaurentPoly::monomial_q(10, 1);
        r.add_term_q(16, -1);
        r.add_term_q(12, 1);
        assert_eq!(r.to_string(), "-t^4 + t^3 + t^(5/2)");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }

    #[test]
    fn span_in_t_units() {
        let mut r = LaurentPoly::monomial_q(10, 1);
        r.add_term_q(16, -1);
        r.add_term_q(12, 1);
        assert_eq!(r.span(), Some(Frac::new(3, 2)));
        assert_eq!(LaurentPoly::one().span(), Some(Frac::new(0, 1)));
        assert_eq!(LaurentPoly::zero().span(), None);
    }

    #[test]
    fn inversion_is_involutive() {
        let p = LaurentPoly::from_terms([(2, 1), (-1, 2)]);
        assert_eq!(p.invert_var().invert_var(), p);
    }

    #[test]
    fn formal_sums() {
        let mut s: FormalSum<i64> = FormalSum::zero();
        s.add(3, 2);
        s.add(0, 1);
        assert_eq!(s.to_string(), "0 + 2\u{b7}3");
        s.add(3, -2);
        assert_eq!(s.to_string(), "0");
        assert_eq!(s.total(), 1);
    }
}
