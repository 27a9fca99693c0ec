//! Critical points of `G4` restricted to `f = 0`.
//!
//! Eliminating the Lagrange multiplier from `grad G4 = -lambda grad f` leaves `h1(k, l) = 0`.
//! With `M = 2 (1+k^2)(1+l^2)(k+l)` and `F = M f` the elimination reads
//! `(N_k D - N D_k)(F_l M - F M_l) - (N_l D - N D_l)(F_k M - F M_k) = -4 (k+l)(1+k^2)(1+l^2) h1`,
//! which is checked by exact multiplication.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::landmarks::{arc_of, ArcId};
use super::trace::{project, tangent};
use super::{cleared_f, cleared_f_polynomial, gamma4_of, gamma4_parts, gamma4_polynomials, KitePoint};
use crate::error::{Error, Result};
use crate::ratpoly::{
    count_all_real_roots, decimal_eps, int, rat, real_roots, resultant, to_f64,
    BivariatePolynomial, QuadraticSurd, RationalPolynomial, RootIsolator, Var,
};

/// The published multiplier-free polynomial `h1(k, l)` as `(k power, l power, coefficient)`.
pub const H1_TERMS: [(u32, u32, i64); 35] = [
    (0, 0, 6),
    (0, 4, 36),
    (2, 0, -24),
    (0, 6, 9),
    (4, 0, -20),
    (6, 0, 24),
    (8, 0, -18),
    (0, 2, 9),
    (5, 5, 30),
    (4, 4, 304),
    (5, 3, 84),
    (9, 1, -3),
    (4, 6, -50),
    (9, 5, 1),
    (6, 6, 84),
    (5, 7, 32),
    (7, 3, 200),
    (6, 4, 208),
    (7, 5, 76),
    (1, 1, -27),
    (8, 4, 28),
    (9, 3, 6),
    (8, 6, 1),
    (3, 1, 12),
    (3, 3, 104),
    (1, 5, 9),
    (4, 2, 126),
    (2, 6, 36),
    (1, 3, 54),
    (2, 2, 36),
    (8, 2, 49),
    (3, 5, 252),
    (7, 1, -100),
    (5, 1, 102),
    (6, 2, -140),
];

/// Coefficients of `r(l)` in ascending even powers `l^0, l^2, ..., l^20`.
pub const R_EVEN_COEFFS: [i64; 11] = [
    243, 1455, 324, -18904, 51534, -61986, 33264, -1776, -2457, 315, 36,
];

/// Polynomials of the elimination and the identities linking them.
#[derive(Clone, Debug)]
pub struct CriticalPolynomials {
    /// `h1(k, l)`.
    pub h1: BivariatePolynomial,
    /// The cleared curve `F(k, l)`.
    pub f: BivariatePolynomial,
    /// `f1 = k l (k (l^2 - 3)(k + l) + 1 + 5 l^2)`, satisfying `F = f1 + 3 l^2 (l^2 - 1) - 2`.
    pub f1: BivariatePolynomial,
    /// The published variant with `(l^2 + 3)`.
    pub f1_published: BivariatePolynomial,
    /// `r(l)`.
    pub r: RationalPolynomial,
    /// The multiplier elimination identity holds exactly.
    pub elimination_identity: bool,
    /// `F = f1 + 3 l^2 (l^2 - 1) - 2` holds exactly.
    pub decomposition_holds: bool,
    /// The same decomposition with the published `f1`.
    pub published_decomposition_holds: bool,
}

fn c(v: i64) -> BivariatePolynomial {
    BivariatePolynomial::constant(int(v))
}

fn f1_with(sign: i64) -> BivariatePolynomial {
    let k = BivariatePolynomial::var(Var::X);
    let l = BivariatePolynomial::var(Var::Y);
    let l2 = &l * &l;
    let inner = &(&(&k * &(&l2 + &c(3 * sign))) * &(&k + &l)) + &(&c(1) + &(&c(5) * &l2));
    &(&k * &l) * &inner
}

/// Builds the elimination polynomials and checks both identities exactly.
pub fn critical_polynomials() -> CriticalPolynomials {
    let h1 = BivariatePolynomial::from_int_terms(&H1_TERMS);
    let f = cleared_f_polynomial();
    let (n, d) = gamma4_polynomials();
    let k = BivariatePolynomial::var(Var::X);
    let l = BivariatePolynomial::var(Var::Y);
    let one_k2 = &c(1) + &(&k * &k);
    let one_l2 = &c(1) + &(&l * &l);
    let m = &(&(&c(2) * &one_k2) * &one_l2) * &(&k + &l);
    let dx = |p: &BivariatePolynomial| p.derivative(Var::X);
    let dy = |p: &BivariatePolynomial| p.derivative(Var::Y);
    let gk = &(&dx(&n) * &d) - &(&n * &dx(&d));
    let gl = &(&dy(&n) * &d) - &(&n * &dy(&d));
    let fk = &(&dx(&f) * &m) - &(&f * &dx(&m));
    let fl = &(&dy(&f) * &m) - &(&f * &dy(&m));
    let lhs = &(&gk * &fl) - &(&gl * &fk);
    let rhs = &(&(&(&c(-4) * &(&k + &l)) * &one_k2) * &one_l2) * &h1;
    let f1 = f1_with(-1);
    let f1_published = f1_with(1);
    let tail = &(&(&c(3) * &(&l * &l)) * &(&(&l * &l) - &c(1))) - &c(2);
    let decomposition_holds = (&(&f1 + &tail) - &f).is_zero();
    let published_decomposition_holds = (&(&f1_published + &tail) - &f).is_zero();
    let mut r = vec![int(0); 21];
    for (i, &v) in R_EVEN_COEFFS.iter().enumerate() {
        r[2 * i] = int(v);
    }
    CriticalPolynomials {
        elimination_identity: (&lhs - &rhs).is_zero(),
        h1,
        f,
        f1,
        f1_published,
        r: RationalPolynomial::new(r),
        decomposition_holds,
        published_decomposition_holds,
    }
}

/// `Res_k(h1, F)` as an exact polynomial in `l`.
pub fn lagrange_resultant() -> Result<RationalPolynomial> {
    let cp = critical_polynomials();
    resultant(&cp.h1, &cp.f, Var::X)
}

/// The product `6144 l (l^2 - 3)(l^2 + 1)^12 (3 l^2 - 1)^2 r(l)`.
pub fn published_resultant_factorization(r: &RationalPolynomial) -> RationalPolynomial {
    let p = |c: &[i64]| RationalPolynomial::from_ints(c);
    let mut out = p(&[0, 6144]);
    out = &out * &p(&[-3, 0, 1]);
    out = &out * &p(&[1, 0, 1]).pow(12);
    out = &out * &p(&[-1, 0, 3]).pow(2);
    &out * r
}

/// Classification of a critical point by a centred second difference along the curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExtremumKind {
    /// Local maximum of `G4` along `f = 0`.
    Maximum,
    /// Local minimum of `G4` along `f = 0`.
    Minimum,
    /// Neither.
    Inflection,
}

/// A critical point of `G4` on the curve.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriticalPoint {
    /// Location.
    pub point: KitePoint,
    /// `G4` at the point.
    pub gamma4: f64,
    /// Lagrange multiplier in `grad G4 + lambda grad f = 0`.
    pub multiplier: f64,
    /// Arc containing the point.
    pub arc: ArcId,
    /// Second difference of `G4` along the curve at arc-length spacing `1e-3`.
    pub second_difference: f64,
    /// Extremum type read off the second difference.
    pub kind: ExtremumKind,
    /// `h1`, `F` and `N - D` vanish exactly at the closed form, when one is known.
    pub exact: bool,
}

/// A common root of `h1` and `F` that is not a critical point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RejectedRoot {
    /// Location.
    pub point: KitePoint,
    /// Reason for rejection.
    pub reason: String,
}

/// Result of the critical point analysis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriticalAnalysis {
    /// The computed resultant equals the published factorization.
    pub factorization_matches: bool,
    /// Number of distinct real roots of `r(l)`.
    pub r_real_roots: usize,
    /// Non-zero real roots of the full resultant.
    pub resultant_real_roots: Vec<f64>,
    /// `l = +-sqrt 3` and `l = +-1/sqrt 3` are exact roots of the resultant.
    pub exact_roots_verified: bool,
    /// Critical points with non-zero multiplier in the admissible chart.
    pub points: Vec<CriticalPoint>,
    /// Common roots discarded, with reasons.
    pub rejected: Vec<RejectedRoot>,
}

fn second_difference(p: &KitePoint, h: f64) -> Result<f64> {
    let t = tangent(p).ok_or_else(|| Error::Degenerate("singular point of f = 0".into()))?;
    let g0 = gamma4_of(p.k, p.l)?;
    let mut sum = -2.0 * g0;
    for s in [h, -h] {
        let q = project(KitePoint::new(p.k + s * t[0], p.l + s * t[1]), 1e-14)?;
        sum += gamma4_of(q.k, q.l)?;
    }
    Ok(sum)
}

fn exact_check(cp: &CriticalPolynomials, p: &KitePoint) -> bool {
    // The only closed form expected here is (-1/sqrt 3, sqrt 3).
    if p.distance(&KitePoint::new(-1.0 / 3f64.sqrt(), 3f64.sqrt())) > 1e-8 {
        return false;
    }
    let k = QuadraticSurd::new(int(0), rat(-1, 3), 3);
    let l = QuadraticSurd::sqrt(3);
    let (n, d) = gamma4_polynomials();
    QuadraticSurd::eval_bivariate(&cp.h1, &k, &l).is_zero()
        && QuadraticSurd::eval_bivariate(&cp.f, &k, &l).is_zero()
        && QuadraticSurd::eval_bivariate(&(&n - &d), &k, &l).is_zero()
}

static CRITICAL: OnceLock<Vec<CriticalPoint>> = OnceLock::new();

/// Critical points of `G4` on the curve, computed once.
///
/// A solution where `G4` touches a level without crossing it can only sit at one of these points.
pub fn cached_critical_points() -> &'static [CriticalPoint] {
    CRITICAL.get_or_init(|| {
        critical_points()
            .expect("critical point analysis succeeds")
            .points
    })
}

/// Solves `h1 = F = 0` by resultant elimination and back-substitution.
pub fn critical_points() -> Result<CriticalAnalysis> {
    let cp = critical_polynomials();
    if !cp.elimination_identity {
        return Err(Error::Transcription(
            "h1 does not match the multiplier elimination".into(),
        ));
    }
    let res = resultant(&cp.h1, &cp.f, Var::X)?;
    let expected = published_resultant_factorization(&cp.r);
    let factorization_matches = res == expected;
    let r_real_roots = count_all_real_roots(&cp.r)?;

    let (without_zero, _) = res.remove_factor(&RationalPolynomial::from_ints(&[0, 1]));
    let eps = decimal_eps(40);
    let roots = real_roots(&without_zero, &eps)?;
    let resultant_real_roots: Vec<f64> = roots.iter().map(|iv| iv.approx()).collect();

    let s3 = QuadraticSurd::sqrt(3);
    let inv = QuadraticSurd::new(int(0), rat(1, 3), 3);
    let exact_roots_verified = [s3.clone(), -&s3, inv.clone(), -&inv]
        .iter()
        .all(|x| x.eval_poly(&res).is_zero());

    let mut points = Vec::new();
    let mut rejected = Vec::new();
    for iv in &roots {
        let l = iv.midpoint();
        let lf = to_f64(&l);
        let fk = cp.f.specialize(Var::Y, &l);
        let Ok(iso) = RootIsolator::new(&fk) else {
            continue;
        };
        for kiv in iso.isolate() {
            let kv = iso.refine(&kiv, &decimal_eps(30))?.approx();
            let p = KitePoint::new(kv, lf);
            let h = cp.h1.eval_f64(kv, lf);
            let hscale: f64 = cp
                .h1
                .terms()
                .map(|(&(i, j), c)| (to_f64(c) * kv.powi(i as i32) * lf.powi(j as i32)).abs())
                .sum();
            if h.abs() > 1e-9 * hscale {
                continue;
            }
            let reject = |reason: &str| RejectedRoot {
                point: p,
                reason: reason.into(),
            };
            if !p.is_admissible() {
                rejected.push(reject("outside the chart k + l > 0, k != 0"));
                continue;
            }
            let ((n, ng), (d, dg)) = gamma4_parts(kv, lf);
            if d.abs() < 1e-8 * (1.0 + n.abs()) {
                rejected.push(reject(if n.abs() < 1e-8 {
                    "removable singularity of G4 (N = D = 0)"
                } else {
                    "pole of G4"
                }));
                continue;
            }
            let grad = [
                (ng[0] * d - n * dg[0]) / (d * d),
                (ng[1] * d - n * dg[1]) / (d * d),
            ];
            let (_, fg, _) = cleared_f(kv, lf);
            let m = 2.0 * (1.0 + kv * kv) * (1.0 + lf * lf) * (kv + lf);
            // On F = 0, grad f = grad F / M.
            let fgrad = [fg[0] / m, fg[1] / m];
            let i = if fgrad[0].abs() > fgrad[1].abs() { 0 } else { 1 };
            let multiplier = -grad[i] / fgrad[i];
            if multiplier.abs() < 1e-9 {
                rejected.push(reject("vanishing Lagrange multiplier"));
                continue;
            }
            let second = second_difference(&p, 1e-3)?;
            let kind = if second < -1e-12 {
                ExtremumKind::Maximum
            } else if second > 1e-12 {
                ExtremumKind::Minimum
            } else {
                ExtremumKind::Inflection
            };
            points.push(CriticalPoint {
                point: p,
                gamma4: gamma4_of(kv, lf)?,
                multiplier,
                arc: arc_of(&p),
                second_difference: second,
                kind,
                exact: exact_check(&cp, &p),
            });
        }
    }
    Ok(CriticalAnalysis {
        factorization_matches,
        r_real_roots,
        resultant_real_roots,
        exact_roots_verified,
        points,
        rejected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identities() {
        let cp = critical_polynomials();
        assert!(cp.elimination_identity);
        assert!(cp.decomposition_holds);
        assert!(!cp.published_decomposition_holds);
        assert_eq!(cp.h1.degree_in(Var::X), Some(9));
        assert_eq!(cp.r.degree(), Some(20));
    }

    #[test]
    fn single_critical_point_is_a_maximum() {
        let a = critical_points().unwrap();
        assert!(a.factorization_matches);
        assert!(a.exact_roots_verified);
        assert_eq!(a.r_real_roots, 0);
        assert_eq!(a.resultant_real_roots.len(), 4);
        assert_eq!(a.points.len(), 1);
        let p = &a.points[0];
        assert!(p.exact);
        assert_eq!(p.arc, ArcId::Gamma3);
        assert!((p.gamma4 - 1.0).abs() < 1e-9);
        assert_eq!(p.kind, ExtremumKind::Maximum);
    }
}
