//! Kite relative equilibria in the symmetry-adapted `(k, l)` chart.
//!
//! The unit vortices sit at `(-1, 0)` and `(1, 0)`, vortex 3 at `(0, -k)` and vortex 4 at
//! `(0, l)`, with `k + l > 0`. The reduced Dziobek system is `f(k, l) = 0` together with
//! `G4 = N(k, l) / D(k, l)`, where
//! `N = k (3 - k^2)(1 + l^2)(k + l)` and `D = 2 (1 + k^2)(k^2 + 2 k l - 1)`.

mod critical;
mod landmarks;
mod solve;
mod trace;

pub use critical::{
    cached_critical_points, critical_points, critical_polynomials, lagrange_resultant, published_resultant_factorization,
    CriticalAnalysis, CriticalPoint, CriticalPolynomials, ExtremumKind, RejectedRoot,
};
pub use landmarks::{arc_of, landmark_values, landmarks, ArcId, LandmarkPoint, LandmarkValues};
pub use solve::{
    arc_endpoint_limits, atlas, solve_by_elimination, solve_kite, solve_kite_gamma4_zero,
    solve_kite_on, ArcLimit, Atlas, KiteReport, KiteSolution, UnresolvedCandidate,
};
pub use trace::{
    project, relative_residual, tangent, trace_curve, trace_curve_from, Bounds, CurveArc,
    StopReason, TraceOptions, TracedBranch,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ratpoly::{BivariatePolynomial, Var};
use crate::vortexcore::{interior_vortex, PlanarConfiguration};

/// A point of the `(k, l)` chart.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KitePoint {
    /// Vortex 3 sits at `(0, -k)`.
    pub k: f64,
    /// Vortex 4 sits at `(0, l)`.
    pub l: f64,
}

impl KitePoint {
    /// Builds a chart point.
    pub fn new(k: f64, l: f64) -> Self {
        Self { k, l }
    }

    /// Euclidean distance to another chart point.
    pub fn distance(&self, other: &KitePoint) -> f64 {
        (self.k - other.k).hypot(self.l - other.l)
    }

    /// True when the point lies in the admissible chart `k + l > 0`, `k != 0`, `l != 0`.
    pub fn is_admissible(&self) -> bool {
        self.k + self.l > 0.0 && self.k != 0.0 && self.l != 0.0
    }

    /// The planar configuration with strengths `(1, 1, 1, gamma4)`.
    pub fn embed(&self, gamma4: f64) -> PlanarConfiguration {
        PlanarConfiguration::new(
            [[-1.0, 0.0], [1.0, 0.0], [0.0, -self.k], [0.0, self.l]],
            [1.0, 1.0, 1.0, gamma4],
        )
    }
}

/// Shape class of a kite solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KiteClass {
    /// `k > 0`, `l > 0`: no vortex inside the hull of the others.
    Convex,
    /// `k < 0`, `l > 0`: vortex 3 inside, vortex 4 at a vertex of the hull triangle.
    ConcaveExterior,
    /// `k > 0`, `l < 0`: vortex 4 inside the triangle of the unit vortices.
    ConcaveInterior,
    /// Equilateral triangle of unit vortices with vortex 4 at the barycenter.
    EquilateralBarycenter,
    /// The square `(k, l) = (1, 1)`.
    Square,
}

impl KiteClass {
    /// True for the two concave kite classes other than the barycenter.
    pub fn is_concave_non_barycentric(self) -> bool {
        matches!(self, KiteClass::ConcaveExterior | KiteClass::ConcaveInterior)
    }
}

/// The barycenter point `(sqrt 3, -1/sqrt 3)`.
pub fn barycenter_point() -> KitePoint {
    KitePoint::new(3f64.sqrt(), -1.0 / 3f64.sqrt())
}

/// Shape class from the chart signs, with the square and the barycenter singled out.
pub fn classify(p: &KitePoint) -> Result<KiteClass> {
    if !p.is_admissible() {
        return Err(Error::Domain(format!("({}, {}) is outside the kite chart", p.k, p.l)));
    }
    if p.distance(&KitePoint::new(1.0, 1.0)) < 1e-8 {
        return Ok(KiteClass::Square);
    }
    if p.distance(&barycenter_point()) < 1e-8 {
        return Ok(KiteClass::EquilateralBarycenter);
    }
    Ok(match (p.k > 0.0, p.l > 0.0) {
        (true, true) => KiteClass::Convex,
        (false, true) => KiteClass::ConcaveExterior,
        (true, false) => KiteClass::ConcaveInterior,
        (false, false) => unreachable!("k + l > 0 excludes both negative"),
    })
}

/// Class derived from the convex hull of the embedded configuration.
pub fn hull_class(p: &KitePoint) -> KiteClass {
    let cfg = p.embed(1.0);
    match interior_vortex(&cfg.positions) {
        None => KiteClass::Convex,
        Some(2) => KiteClass::ConcaveExterior,
        Some(_) => KiteClass::ConcaveInterior,
    }
}

/// Reduced Dziobek function `(k+l)[(1+k^2)^-1 - (k+l)^-2] + 2l[1/4 - (1+l^2)^-1]`.
pub fn f(k: f64, l: f64) -> Result<f64> {
    let s = k + l;
    if s == 0.0 {
        return Err(Error::Domain("f is undefined on k + l = 0".into()));
    }
    Ok(s * (1.0 / (1.0 + k * k) - 1.0 / (s * s)) + 2.0 * l * (0.25 - 1.0 / (1.0 + l * l)))
}

/// Cleared form `F = 2 (k+l)(1+k^2)(1+l^2) f
///  = 2 (1+l^2)(2kl + l^2 - 1) + l (k+l)(1+k^2)(l^2 - 3)`, with its gradient and a term-magnitude
/// scale for relative tolerances.
pub fn cleared_f(k: f64, l: f64) -> (f64, [f64; 2], f64) {
    let a = 2.0 * (1.0 + l * l);
    let b = 2.0 * k * l + l * l - 1.0;
    let c = l * (l * l - 3.0);
    let e = k + l;
    let g = 1.0 + k * k;
    let value = a * b + c * e * g;
    let dk = a * 2.0 * l + c * (g + e * 2.0 * k);
    let dl = 4.0 * l * b + a * (2.0 * k + 2.0 * l) + (3.0 * l * l - 3.0) * e * g + c * g;
    let scale = a * (2.0 * (k * l).abs() + l * l + 1.0)
        + l.abs() * (l * l + 3.0) * (k.abs() + l.abs()) * g;
    (value, [dk, dl], scale)
}

/// Numerator and denominator of `G4(k, l)` with their gradients.
pub fn gamma4_parts(k: f64, l: f64) -> ((f64, [f64; 2]), (f64, [f64; 2])) {
    let q = 1.0 + l * l;
    let s = k + l;
    let a = k * (3.0 - k * k);
    let n = a * q * s;
    let nk = (3.0 - 3.0 * k * k) * q * s + a * q;
    let nl = a * (2.0 * l * s + q);
    let g = 1.0 + k * k;
    let t = k * k + 2.0 * k * l - 1.0;
    let d = 2.0 * g * t;
    let dk = 2.0 * (2.0 * k * t + g * (2.0 * k + 2.0 * l));
    let dl = 2.0 * g * 2.0 * k;
    ((n, [nk, nl]), (d, [dk, dl]))
}

/// `G4(k, l) = k (3 - k^2)(1 + l^2)(k + l) / (2 (1 + k^2)(k^2 + 2 k l - 1))`.
///
/// Fails with [`Error::Degenerate`] on the pole curve `k^2 + 2 k l - 1 = 0`.
pub fn gamma4_of(k: f64, l: f64) -> Result<f64> {
    let ((n, _), (d, _)) = gamma4_parts(k, l);
    if d == 0.0 {
        return Err(Error::Degenerate(format!(
            "({k}, {l}) lies on the pole curve l = (1 - k^2) / 2k"
        )));
    }
    Ok(n / d)
}

/// The pole curve `l = (1 - k^2) / (2k)`.
pub fn pole_curve(k: f64) -> Option<f64> {
    (k != 0.0).then(|| (1.0 - k * k) / (2.0 * k))
}

/// Recovers `(k, l)` from a kite-shaped configuration after any similarity transform.
pub fn chart_from_configuration(cfg: &PlanarConfiguration) -> Result<KitePoint> {
    let [p1, p2, p3, p4] = cfg.positions;
    let m = [(p1[0] + p2[0]) / 2.0, (p1[1] + p2[1]) / 2.0];
    let e = [p2[0] - p1[0], p2[1] - p1[1]];
    let half = e[0].hypot(e[1]) / 2.0;
    if half == 0.0 {
        return Err(Error::Domain("vortices 1 and 2 coincide".into()));
    }
    let u = [e[0] / (2.0 * half), e[1] / (2.0 * half)];
    let n = [-u[1], u[0]];
    let along = |p: [f64; 2]| ((p[0] - m[0]) * u[0] + (p[1] - m[1]) * u[1]) / half;
    let across = |p: [f64; 2]| ((p[0] - m[0]) * n[0] + (p[1] - m[1]) * n[1]) / half;
    if along(p3).abs() > 1e-9 || along(p4).abs() > 1e-9 {
        return Err(Error::Domain("vortices 3 and 4 are off the symmetry axis".into()));
    }
    Ok(KitePoint::new(-across(p3), across(p4)))
}

/// `F(k, l)` as an exact polynomial (`x = k`, `y = l`).
pub fn cleared_f_polynomial() -> BivariatePolynomial {
    let k = BivariatePolynomial::var(Var::X);
    let l = BivariatePolynomial::var(Var::Y);
    let c = |v: i64| BivariatePolynomial::constant(crate::ratpoly::int(v));
    let one_l2 = &c(1) + &(&l * &l);
    let one_k2 = &c(1) + &(&k * &k);
    let first = &(&c(2) * &one_l2) * &(&(&(&c(2) * &k) * &l) + &(&(&l * &l) - &c(1)));
    let second = &(&(&l * &(&k + &l)) * &one_k2) * &(&(&l * &l) - &c(3));
    &first + &second
}

/// Numerator `N` and denominator `D` of `G4` as exact polynomials.
pub fn gamma4_polynomials() -> (BivariatePolynomial, BivariatePolynomial) {
    let k = BivariatePolynomial::var(Var::X);
    let l = BivariatePolynomial::var(Var::Y);
    let c = |v: i64| BivariatePolynomial::constant(crate::ratpoly::int(v));
    let n = &(&(&k * &(&c(3) - &(&k * &k))) * &(&c(1) + &(&l * &l))) * &(&k + &l);
    let d = &(&c(2) * &(&c(1) + &(&k * &k))) * &(&(&(&k * &k) + &(&(&c(2) * &k) * &l)) - &c(1));
    (n, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f_examples() {
        assert!(f(1.0, 1.0).unwrap().abs() < 1e-15);
        let s3 = 3f64.sqrt();
        assert!(f(s3, -1.0 / s3).unwrap().abs() < 1e-15);
        assert!(f(s3, 1.19175).unwrap().abs() < 1e-4);
        assert!(f(1.0, -1.0).is_err());
    }

    #[test]
    fn cleared_form_matches() {
        for &(k, l) in &[(0.3, 1.7), (-1.2, 2.5), (2.0, -0.4), (1.1, 0.2)] {
            let (v, grad, _) = cleared_f(k, l);
            let expect = 2.0 * (k + l) * (1.0 + k * k) * (1.0 + l * l) * f(k, l).unwrap();
            assert!((v - expect).abs() < 1e-12 * (1.0 + expect.abs()));
            let h = 1e-6;
            let dk = (cleared_f(k + h, l).0 - cleared_f(k - h, l).0) / (2.0 * h);
            let dl = (cleared_f(k, l + h).0 - cleared_f(k, l - h).0) / (2.0 * h);
            assert!((dk - grad[0]).abs() < 1e-6 * (1.0 + dk.abs()));
            assert!((dl - grad[1]).abs() < 1e-6 * (1.0 + dl.abs()));
            let p = cleared_f_polynomial().eval_f64(k, l);
            assert!((p - v).abs() < 1e-12 * (1.0 + v.abs()));
        }
    }

    #[test]
    fn gamma4_examples() {
        assert!((gamma4_of(1.0, 1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!(gamma4_of(3f64.sqrt(), 0.7).unwrap().abs() < 1e-15);
        assert!(matches!(gamma4_of(1.0, 0.0), Err(Error::Degenerate(_))));
        let ((n, ng), (d, dg)) = gamma4_parts(0.7, 1.3);
        let h = 1e-6;
        let ((n2, _), (d2, _)) = gamma4_parts(0.7 + h, 1.3);
        assert!(((n2 - n) / h - ng[0]).abs() < 1e-4);
        assert!(((d2 - d) / h - dg[0]).abs() < 1e-4);
    }

    #[test]
    fn barycenter_limit_is_one() {
        let p = barycenter_point();
        for s in [1e-4, -1e-4] {
            // Move along the curve f = 0 away from the barycenter and evaluate the ratio.
            let q = trace::project(KitePoint::new(p.k + s, p.l), 1e-13).unwrap();
            assert!((gamma4_of(q.k, q.l).unwrap() - 1.0).abs() < 1e-3);
        }
    }

    #[test]
    fn classification_matches_hull() {
        for p in [
            KitePoint::new(1.27, 1.07),
            KitePoint::new(-1.2, 2.3),
            KitePoint::new(1.6, -0.43),
        ] {
            assert_eq!(classify(&p).unwrap(), hull_class(&p));
        }
        assert_eq!(classify(&KitePoint::new(1.0, 1.0)).unwrap(), KiteClass::Square);
        assert!(classify(&KitePoint::new(-1.0, 0.5)).is_err());
    }

    #[test]
    fn chart_round_trip() {
        let p = KitePoint::new(-0.4, 1.9);
        let cfg = p.embed(0.5).scaled(2.5).rotated(0.8).translated(1.0, -3.0);
        let q = chart_from_configuration(&cfg).unwrap();
        assert!(q.distance(&p) < 1e-12);
    }
}
