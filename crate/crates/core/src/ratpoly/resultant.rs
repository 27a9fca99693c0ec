//! Sylvester resultants: exact determinants for univariate inputs and
//! evaluation/interpolation for eliminating one variable of a bivariate pair.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::bivariate::{BivariatePolynomial, Var};
use super::poly::RationalPolynomial;
use super::rational::{int, Rational};
use crate::error::{Error, Result};

/// Determinant of a square integer matrix by fraction-free Bareiss elimination.
pub fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Clears denominators: returns integer coefficients `c` and `d > 0` with `coeffs = c / d`.
fn integer_coeffs(coeffs: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let mut d = BigInt::one();
    for c in coeffs {
        d = d.lcm(c.denom());
    }
    let ints = coeffs
        .iter()
        .map(|c| (c * Rational::from_integer(d.clone())).to_integer())
        .collect();
    (ints, d)
}

/// Sylvester determinant for coefficient lists of formal degrees `f.len()-1` and `g.len()-1`.
///
/// Leading coefficients may vanish; the value is then the specialization of the generic
/// resultant, which is what evaluation/interpolation elimination needs.
pub fn sylvester_determinant(f: &[Rational], g: &[Rational]) -> Rational {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    if size == 0 {
        return Rational::one();
    }
    let (fi, fd) = integer_coeffs(f);
    let (gi, gd) = integer_coeffs(g);
    let mut mat = vec![vec![BigInt::zero(); size]; size];
    for r in 0..n {
        for (i, c) in fi.iter().rev().enumerate() {
            mat[r][r + i] = c.clone();
        }
    }
    for r in 0..m {
        for (i, c) in gi.iter().rev().enumerate() {
            mat[n + r][r + i] = c.clone();
        }
    }
    let det = bareiss_determinant(mat);
    let scale = num_traits::pow(fd, n) * num_traits::pow(gd, m);
    Rational::new(det, scale)
}

/// Resultant of two nonzero univariate polynomials with respect to their variable.
pub fn resultant_univariate(f: &RationalPolynomial, g: &RationalPolynomial) -> Result<Rational> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::Domain("resultant with the zero polynomial".into()));
    }
    Ok(sylvester_determinant(f.coeffs(), g.coeffs()))
}

/// Discriminant-like quantity `Res(p, p')`; zero exactly when `p` has a repeated root.
pub fn resultant_with_derivative(p: &RationalPolynomial) -> Result<Rational> {
    let d = p.derivative();
    if d.is_zero() {
        return Err(Error::Domain("constant polynomial has no discriminant".into()));
    }
    resultant_univariate(p, &d)
}

/// Newton interpolation through `(x_i, y_i)` with distinct nodes.
pub fn interpolate(xs: &[Rational], ys: &[Rational]) -> RationalPolynomial {
    let n = xs.len();
    let mut dd: Vec<Rational> = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    let mut p = RationalPolynomial::constant(dd[n - 1].clone());
    for i in (0..n - 1).rev() {
        p = &(&p * &RationalPolynomial::linear_root(&xs[i])) + &RationalPolynomial::constant(dd[i].clone());
    }
    p
}

/// Sylvester resultant of `f` and `g` with respect to `eliminate`, as a polynomial in the
/// remaining variable.
///
/// The determinant is evaluated exactly at enough integer nodes to pin down the degree bound
/// `deg_v(f) deg_w(g) + deg_v(g) deg_w(f)` and then interpolated.
pub fn resultant(
    f: &BivariatePolynomial,
    g: &BivariatePolynomial,
    eliminate: Var,
) -> Result<RationalPolynomial> {
    let m = f.degree_in(eliminate).unwrap_or(0);
    let n = g.degree_in(eliminate).unwrap_or(0);
    if m == 0 || n == 0 {
        return Err(Error::Domain(
            "resultant needs positive degree in the eliminated variable".into(),
        ));
    }
    let keep = eliminate.other();
    let bound = (m * g.degree_in(keep).unwrap_or(0) + n * f.degree_in(keep).unwrap_or(0)) as usize;
    let fc = f.coefficients_in(eliminate);
    let gc = g.coefficients_in(eliminate);
    let xs: Vec<Rational> = (0..=bound as i64).map(int).collect();
    let ys: Vec<Rational> = xs
        .par_iter()
        .map(|t| {
            let fv: Vec<Rational> = fc.iter().map(|c| c.eval(t)).collect();
            let gv: Vec<Rational> = gc.iter().map(|c| c.eval(t)).collect();
            sylvester_determinant(&fv, &gv)
        })
        .collect();
    Ok(interpolate(&xs, &ys))
}

/// True when `f(., y0)` and `g(., y0)` share a complex root, decided by an exact gcd.
pub fn share_root_at(f: &BivariatePolynomial, g: &BivariatePolynomial, eliminate: Var, y0: &Rational) -> bool {
    let a = f.specialize(eliminate.other(), y0);
    let b = g.specialize(eliminate.other(), y0);
    if a.is_zero() || b.is_zero() {
        return true;
    }
    a.gcd(&b).degree().unwrap_or(0) > 0
}

/// Determinant of a square rational matrix by Gaussian elimination.
pub fn rational_determinant(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = Rational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return Rational::zero();
        };
        if p != k {
            m.swap(p, k);
            det = -det;
        }
        let pivot = m[k][k].clone();
        det *= &pivot;
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let f = &m[i][k] / &pivot;
            for j in k..n {
                let v = &f * &m[k][j];
                m[i][j] -= v;
            }
        }
    }
    det
}
