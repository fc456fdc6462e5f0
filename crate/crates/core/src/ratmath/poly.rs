//! Univariate polynomials and rational functions over [`Rational`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::rational::Rational;

/// Coefficients lowest degree first; trailing zeros are trimmed so the zero
/// polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Poly1 {
    coeffs: Vec<Rational>,
}

impl Poly1 {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        Poly1 { coeffs }
    }

    pub fn zero() -> Self {
        Poly1 { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `t`.
    pub fn t() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from_integer(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * t + c)
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * t + c.to_f64())
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::constant(Rational::one()), |acc, _| &acc * self)
    }
}

impl Add for &Poly1 {
    type Output = Poly1;
    fn add(self, rhs: &Poly1) -> Poly1 {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly1::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Poly1 {
    type Output = Poly1;
    fn sub(self, rhs: &Poly1) -> Poly1 {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly1::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Poly1 {
    type Output = Poly1;
    fn mul(self, rhs: &Poly1) -> Poly1 {
        if self.is_zero() || rhs.is_zero() {
            return Poly1::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly1::new(out)
    }
}

impl Neg for &Poly1 {
    type Output = Poly1;
    fn neg(self) -> Poly1 {
        Poly1::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Poly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})t")?,
                _ => write!(f, "({c})t^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `numerator / denominator` with a nonzero denominator. Not reduced.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RatFn {
    numerator: Poly1,
    denominator: Poly1,
}

impl RatFn {
    pub fn new(numerator: Poly1, denominator: Poly1) -> Self {
        assert!(!denominator.is_zero(), "zero denominator");
        RatFn {
            numerator,
            denominator,
        }
    }

    pub fn poly(p: Poly1) -> Self {
        Self::new(p, Poly1::constant(Rational::one()))
    }

    pub fn constant(c: Rational) -> Self {
        Self::poly(Poly1::constant(c))
    }

    pub fn numerator(&self) -> &Poly1 {
        &self.numerator
    }

    pub fn denominator(&self) -> &Poly1 {
        &self.denominator
    }

    /// `None` at a pole.
    pub fn eval(&self, t: &Rational) -> Option<Rational> {
        let d = self.denominator.eval(t);
        if d.is_zero() {
            None
        } else {
            Some(self.numerator.eval(t) / d)
        }
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        self.numerator.eval_f64(t) / self.denominator.eval_f64(t)
    }

    /// Limit as `t → ∞`, `None` if it diverges.
    pub fn at_infinity(&self) -> Option<Rational> {
        let dn = self.numerator.degree();
        let dd = self.denominator.degree().unwrap();
        match dn {
            None => Some(Rational::zero()),
            Some(n) if n < dd => Some(Rational::zero()),
            Some(n) if n == dd => Some(self.numerator.leading() / self.denominator.leading()),
            _ => None,
        }
    }

    /// The constant value when `numerator - k·denominator` is the zero
    /// polynomial for some `k`; a polynomial identity, not a sampled check.
    pub fn constant_value(&self) -> Option<Rational> {
        if self.numerator.is_zero() {
            return Some(Rational::zero());
        }
        let d = self.denominator.degree().unwrap();
        if self.numerator.degree() != Some(d) {
            return None;
        }
        let k = self.numerator.leading() / self.denominator.leading();
        (&self.numerator - &self.denominator.scale(&k))
            .is_zero()
            .then_some(k)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(self.numerator.scale(k), self.denominator.clone())
    }
}

impl Add for &RatFn {
    type Output = RatFn;
    fn add(self, rhs: &RatFn) -> RatFn {
        if self.denominator == rhs.denominator {
            return RatFn::new(&self.numerator + &rhs.numerator, self.denominator.clone());
        }
        RatFn::new(
            &(&self.numerator * &rhs.denominator) + &(&rhs.numerator * &self.denominator),
            &self.denominator * &rhs.denominator,
        )
    }
}

impl Sub for &RatFn {
    type Output = RatFn;
    fn sub(self, rhs: &RatFn) -> RatFn {
        self + &RatFn::new(-&rhs.numerator, rhs.denominator.clone())
    }
}

impl Mul for &RatFn {
    type Output = RatFn;
    fn mul(self, rhs: &RatFn) -> RatFn {
        RatFn::new(
            &self.numerator * &rhs.numerator,
            &self.denominator * &rhs.denominator,
        )
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.numerator, self.denominator)
    }
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratmath::rational::{q, qi};
    use proptest::prelude::*;

    #[test]
    fn trims_leading_zeros() {
        let p = Poly1::from_ints(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(Poly1::from_ints(&[0, 0]).degree(), None);
    }

    #[test]
    fn half_angle_identity() {
        // (1-t²)² + (2t)² = (1+t²)²
        let one_plus = Poly1::from_ints(&[1, 0, 1]);
        let c = RatFn::new(Poly1::from_ints(&[1, 0, -1]), one_plus.clone());
        let s = RatFn::new(Poly1::from_ints(&[0, 2]), one_plus);
        let sum = &(&c * &c) + &(&s * &s);
        assert_eq!(sum.constant_value(), Some(qi(1)));
        assert_eq!(c.at_infinity(), Some(qi(-1)));
        assert_eq!(s.at_infinity(), Some(qi(0)));
    }

    #[test]
    fn non_constant_detected() {
        let f = RatFn::new(Poly1::from_ints(&[0, 1]), Poly1::from_ints(&[1, 0, 1]));
        assert_eq!(f.constant_value(), None);
        assert_eq!(f.eval(&qi(1)), Some(q(1, 2)));
        assert_eq!(RatFn::new(Poly1::t(), Poly1::t()).eval(&qi(0)), None);
    }

    proptest! {
        #[test]
        fn evaluation_is_a_ring_map(
            a in prop::collection::vec(-20i64..20, 0..5),
            b in prop::collection::vec(-20i64..20, 0..5),
            t in (-7i64..7, 1i64..4),
        ) {
            let (pa, pb) = (Poly1::from_ints(&a), Poly1::from_ints(&b));
            let t = q(t.0, t.1);
            prop_assert_eq!((&pa * &pb).eval(&t), pa.eval(&t) * pb.eval(&t));
            prop_assert_eq!((&pa + &pb).eval(&t), pa.eval(&t) + pb.eval(&t));
            prop_assert_eq!(&pa - &pa, Poly1::zero());
        }
    }
}
