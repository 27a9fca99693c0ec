//! Exact arithmetic in a real quadratic field `Q(sqrt(d))`.
//!
//! Used to evaluate polynomials exactly at points such as `sqrt(3)` or `sqrt(2) - 1`.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::bivariate::BivariatePolynomial;
use super::poly::RationalPolynomial;
use super::rational::{int, sign, to_f64, Rational};

/// The number `a + b sqrt(d)` for a fixed non-square `d > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticSurd {
    /// Rational part.
    pub a: Rational,
    /// Coefficient of the square root.
    pub b: Rational,
    /// Radicand.
    pub d: i64,
}

impl QuadraticSurd {
    /// Builds `a + b sqrt(d)`.
    pub fn new(a: Rational, b: Rational, d: i64) -> Self {
        Self { a, b, d }
    }

    /// A rational number viewed in `Q(sqrt(d))`.
    pub fn rational(a: Rational, d: i64) -> Self {
        Self::new(a, Rational::zero(), d)
    }

    /// `sqrt(d)` itself.
    pub fn sqrt(d: i64) -> Self {
        Self::new(Rational::zero(), Rational::one(), d)
    }

    /// True when the number is exactly zero.
    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Exact sign.
    pub fn signum(&self) -> i32 {
        let sa = sign(&self.a);
        let sb = sign(&self.b);
        if sa == 0 || sb == 0 || sa == sb {
            return if sa != 0 { sa } else { sb };
        }
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * int(self.d);
        if a2 > b2d {
            sa
        } else if a2 < b2d {
            sb
        } else {
            0
        }
    }

    /// Nearest double.
    pub fn to_f64(&self) -> f64 {
        to_f64(&self.a) + to_f64(&self.b) * (self.d as f64).sqrt()
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let norm = &self.a * &self.a - &self.b * &self.b * int(self.d);
        Some(Self::new(&self.a / &norm, -(&self.b / &norm), self.d))
    }

    /// Exact value of a univariate polynomial at this number.
    pub fn eval_poly(&self, p: &RationalPolynomial) -> Self {
        let mut acc = Self::rational(Rational::zero(), self.d);
        for c in p.coeffs().iter().rev() {
            acc = &(&acc * self) + &Self::rational(c.clone(), self.d);
        }
        acc
    }

    /// Exact value of a bivariate polynomial at `(x, y)` in the same field.
    pub fn eval_bivariate(p: &BivariatePolynomial, x: &Self, y: &Self) -> Self {
        let d = x.d;
        let mut acc = Self::rational(Rational::zero(), d);
        for (&(i, j), c) in p.terms() {
            let mut t = Self::rational(c.clone(), d);
            for _ in 0..i {
                t = &t * x;
            }
            for _ in 0..j {
                t = &t * y;
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Absolute value.
    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }
}

impl Add for &QuadraticSurd {
    type Output = QuadraticSurd;
    fn add(self, r: Self) -> QuadraticSurd {
        assert_eq!(self.d, r.d, "mixed radicands");
        QuadraticSurd::new(&self.a + &r.a, &self.b + &r.b, self.d)
    }
}

impl Sub for &QuadraticSurd {
    type Output = QuadraticSurd;
    fn sub(self, r: Self) -> QuadraticSurd {
        assert_eq!(self.d, r.d, "mixed radicands");
        QuadraticSurd::new(&self.a - &r.a, &self.b - &r.b, self.d)
    }
}

impl Mul for &QuadraticSurd {
    type Output = QuadraticSurd;
    fn mul(self, r: Self) -> QuadraticSurd {
        assert_eq!(self.d, r.d, "mixed radicands");
        QuadraticSurd::new(
            &self.a * &r.a + &self.b * &r.b * int(self.d),
            &self.a * &r.b + &self.b * &r.a,
            self.d,
        )
    }
}

impl Neg for &QuadraticSurd {
    type Output = QuadraticSurd;
    fn neg(self) -> QuadraticSurd {
        QuadraticSurd::new(-self.a.clone(), -self.b.clone(), self.d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::rational::rat;

    #[test]
    fn field_arithmetic() {
        let s = QuadraticSurd::sqrt(3);
        let sq = &s * &s;
        assert_eq!(sq, QuadraticSurd::rational(int(3), 3));
        let x = QuadraticSurd::new(int(1), int(1), 2);
        let inv = x.inverse().unwrap();
        assert_eq!(&x * &inv, QuadraticSurd::rational(int(1), 2));
    }

    #[test]
    fn exact_signs() {
        assert_eq!(QuadraticSurd::new(int(-1), int(1), 2).signum(), 1);
        assert_eq!(QuadraticSurd::new(int(2), int(-1), 3).signum(), 1);
        assert_eq!(QuadraticSurd::new(int(1), int(-1), 3).signum(), -1);
        assert_eq!(QuadraticSurd::new(rat(-3, 1), int(1), 9).signum(), 0);
    }

    #[test]
    fn polynomial_at_sqrt() {
        let p = RationalPolynomial::from_ints(&[-3, 0, 1]);
        assert!(QuadraticSurd::sqrt(3).eval_poly(&p).is_zero());
        let q = RationalPolynomial::from_ints(&[-1, 2, 1]);
        assert!(QuadraticSurd::new(int(-1), int(1), 2).eval_poly(&q).is_zero());
    }
}
