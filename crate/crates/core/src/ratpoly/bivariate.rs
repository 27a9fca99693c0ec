//! Sparse polynomials in two variables over the rationals.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::RationalPolynomial;
use super::rational::{int, to_f64, Rational};

/// Variable selector for [`BivariatePolynomial`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    /// The first variable.
    X,
    /// The second variable.
    Y,
}

impl Var {
    /// The other variable.
    pub fn other(self) -> Var {
        match self {
            Var::X => Var::Y,
            Var::Y => Var::X,
        }
    }
}

/// Polynomial `sum c[i,j] x^i y^j` stored sparsely without zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BivariatePolynomial {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl BivariatePolynomial {
    /// The zero polynomial.
    pub fn zero() -> Self {
        Self::default()
    }

    /// The constant `c`.
    pub fn constant(c: Rational) -> Self {
        Self::from_terms([((0, 0), c)])
    }

    /// The variable `x` or `y`.
    pub fn var(v: Var) -> Self {
        match v {
            Var::X => Self::from_terms([((1, 0), Rational::one())]),
            Var::Y => Self::from_terms([((0, 1), Rational::one())]),
        }
    }

    /// Builds a polynomial from `((deg_x, deg_y), coefficient)` pairs, summing repeats.
    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), Rational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Builds a polynomial from `(deg_x, deg_y, integer coefficient)` triples.
    pub fn from_int_terms(terms: &[(u32, u32, i64)]) -> Self {
        Self::from_terms(terms.iter().map(|&(i, j, c)| ((i, j), int(c))))
    }

    /// Embeds a univariate polynomial in the chosen variable.
    pub fn from_univariate(p: &RationalPolynomial, v: Var) -> Self {
        Self::from_terms(p.coeffs().iter().enumerate().map(|(i, c)| {
            let e = match v {
                Var::X => (i as u32, 0),
                Var::Y => (0, i as u32),
            };
            (e, c.clone())
        }))
    }

    fn add_term(&mut self, e: (u32, u32), c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    /// Nonzero terms in exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    /// Coefficient of `x^i y^j`.
    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    /// True for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree in one variable, `None` for the zero polynomial.
    pub fn degree_in(&self, v: Var) -> Option<u32> {
        self.terms
            .keys()
            .map(|&(i, j)| if v == Var::X { i } else { j })
            .max()
    }

    /// Exact evaluation.
    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        self.specialize(Var::Y, y).eval(x)
    }

    /// Floating-point evaluation.
    pub fn eval_f64(&self, x: f64, y: f64) -> f64 {
        self.terms
            .iter()
            .map(|(&(i, j), c)| to_f64(c) * x.powi(i as i32) * y.powi(j as i32))
            .sum()
    }

    /// Substitutes a value for `v`, leaving a univariate polynomial in the other variable.
    pub fn specialize(&self, v: Var, value: &Rational) -> RationalPolynomial {
        let keep = v.other();
        let n = self.degree_in(keep).unwrap_or(0) as usize;
        let mut coeffs = vec![Rational::zero(); n + 1];
        let mut powers: BTreeMap<u32, Rational> = BTreeMap::new();
        for (&(i, j), c) in &self.terms {
            let (fixed, free) = if v == Var::X { (i, j) } else { (j, i) };
            let pw = powers
                .entry(fixed)
                .or_insert_with(|| num_traits::pow(value.clone(), fixed as usize))
                .clone();
            coeffs[free as usize] += c * pw;
        }
        RationalPolynomial::new(coeffs)
    }

    /// Coefficients with respect to `v`: entry `i` is the coefficient of `v^i`, a polynomial in
    /// the other variable.
    pub fn coefficients_in(&self, v: Var) -> Vec<RationalPolynomial> {
        let n = self.degree_in(v).map_or(0, |d| d as usize + 1);
        let m = self.degree_in(v.other()).unwrap_or(0) as usize;
        let mut rows = vec![vec![Rational::zero(); m + 1]; n];
        for (&(i, j), c) in &self.terms {
            let (a, b) = if v == Var::X { (i, j) } else { (j, i) };
            rows[a as usize][b as usize] = c.clone();
        }
        rows.into_iter().map(RationalPolynomial::new).collect()
    }

    /// Partial derivative.
    pub fn derivative(&self, v: Var) -> Self {
        Self::from_terms(self.terms.iter().filter_map(|(&(i, j), c)| match v {
            Var::X if i > 0 => Some(((i - 1, j), c * int(i as i64))),
            Var::Y if j > 0 => Some(((i, j - 1), c * int(j as i64))),
            _ => None,
        }))
    }

    /// Exchanges the roles of `x` and `y`.
    pub fn swap_vars(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(&(i, j), c)| ((j, i), c.clone())))
    }

    /// Multiplies by a rational constant.
    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(&e, a)| (e, a * c)))
    }

    /// Integer power.
    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::constant(Rational::one());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
}

impl Add for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn add(self, rhs: Self) -> BivariatePolynomial {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn sub(self, rhs: Self) -> BivariatePolynomial {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, -c.clone());
        }
        out
    }
}

impl Mul for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn mul(self, rhs: Self) -> BivariatePolynomial {
        let mut out = BivariatePolynomial::zero();
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &rhs.terms {
                out.add_term((i + k, j + l), a * b);
            }
        }
        out
    }
}

impl Neg for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn neg(self) -> BivariatePolynomial {
        self.scale(&-Rational::one())
    }
}

impl Add for BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn add(self, rhs: Self) -> BivariatePolynomial {
        &self + &rhs
    }
}

impl Sub for BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn sub(self, rhs: Self) -> BivariatePolynomial {
        &self - &rhs
    }
}

impl Mul for BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn mul(self, rhs: Self) -> BivariatePolynomial {
        &self * &rhs
    }
}

impl Neg for BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn neg(self) -> BivariatePolynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::rational::rat;

    #[test]
    fn arithmetic_and_evaluation() {
        let x = BivariatePolynomial::var(Var::X);
        let y = BivariatePolynomial::var(Var::Y);
        let p = &(&x * &x) + &(&y * &y);
        assert_eq!(p.eval(&int(3), &int(4)), int(25));
        assert_eq!(p.degree_in(Var::X), Some(2));
        assert!((&p - &p).is_zero());
        assert_eq!(p.eval_f64(0.5, 0.5), 0.5);
    }

    #[test]
    fn specialization_and_coefficients() {
        let p = BivariatePolynomial::from_int_terms(&[(2, 1, 3), (0, 2, -1), (1, 0, 5)]);
        assert_eq!(
            p.specialize(Var::Y, &int(2)),
            RationalPolynomial::from_ints(&[-4, 5, 6])
        );
        assert_eq!(
            p.specialize(Var::X, &rat(1, 2)),
            RationalPolynomial::new(vec![rat(5, 2), rat(3, 4), int(-1)])
        );
        let c = p.coefficients_in(Var::X);
        assert_eq!(c.len(), 3);
        assert_eq!(c[2], RationalPolynomial::from_ints(&[0, 3]));
        assert_eq!(c[0], RationalPolynomial::from_ints(&[0, 0, -1]));
    }

    #[test]
    fn derivatives() {
        let p = BivariatePolynomial::from_int_terms(&[(2, 1, 3), (0, 2, -1)]);
        assert_eq!(
            p.derivative(Var::X),
            BivariatePolynomial::from_int_terms(&[(1, 1, 6)])
        );
        assert_eq!(
            p.derivative(Var::Y),
            BivariatePolynomial::from_int_terms(&[(2, 0, 3), (0, 1, -2)])
        );
        assert_eq!(p.swap_vars().coeff(1, 2), int(3));
    }
}
