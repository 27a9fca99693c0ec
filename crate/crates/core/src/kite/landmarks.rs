//! Landmark points of `f = 0` and the named arcs between them.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::{cleared_f_polynomial, KitePoint};
use crate::error::Result;
use crate::ratpoly::{
    decimal_eps, int, rat, to_f64, BivariatePolynomial, QuadraticSurd, Rational,
    RationalPolynomial, RootIsolator,
};

/// Named pieces of `f = 0` in `k + l > 0`.
///
/// `Gamma1` to `Gamma4` are the four arcs of the classical analysis; the remaining ids cover the
/// parts of the two branches beyond them, out to the asymptotes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ArcId {
    /// Upper branch, `sqrt 2 - 1 < k < sqrt 3` (from P1 to P2).
    Gamma1,
    /// Upper branch, `0 < k < sqrt 2 - 1` (from P2 to P4).
    Gamma2,
    /// Upper branch, `-sqrt 3 < k < 0` (from P3 to P4).
    Gamma3,
    /// Lower branch, `-1 < l < l(P5)` (from P5 through P6 to P7).
    Gamma4,
    /// Upper branch, `k < -sqrt 3`, out to the asymptote `k + l -> 0`.
    UpperWest,
    /// Upper branch, `k > sqrt 3`, out to the asymptote `l -> sqrt 3`.
    UpperEast,
    /// Lower branch, `l(P5) < l < 0`, out to the asymptote `l -> 0-`.
    LowerTail,
    /// Lower branch, `l < -1`, out to the asymptote `l -> -sqrt 3`.
    BeyondP7,
}

impl ArcId {
    /// Every arc id.
    pub const ALL: [ArcId; 8] = [
        ArcId::Gamma1,
        ArcId::Gamma2,
        ArcId::Gamma3,
        ArcId::Gamma4,
        ArcId::UpperWest,
        ArcId::UpperEast,
        ArcId::LowerTail,
        ArcId::BeyondP7,
    ];

    /// Short display name.
    pub fn name(self) -> &'static str {
        match self {
            ArcId::Gamma1 => "gamma1",
            ArcId::Gamma2 => "gamma2",
            ArcId::Gamma3 => "gamma3",
            ArcId::Gamma4 => "gamma4",
            ArcId::UpperWest => "upper-west",
            ArcId::UpperEast => "upper-east",
            ArcId::LowerTail => "lower-tail",
            ArcId::BeyondP7 => "beyond-p7",
        }
    }

    /// True for the four classical arcs.
    pub fn is_classical(self) -> bool {
        matches!(
            self,
            ArcId::Gamma1 | ArcId::Gamma2 | ArcId::Gamma3 | ArcId::Gamma4
        )
    }

    /// Bounding landmarks or asymptotes, in the order of increasing `k` (upper branch) or
    /// decreasing `l` (lower branch).
    pub fn endpoints(self) -> (&'static str, &'static str) {
        match self {
            ArcId::UpperWest => ("asymptote k+l->0", "P3"),
            ArcId::Gamma3 => ("P3", "P4"),
            ArcId::Gamma2 => ("P4", "P2"),
            ArcId::Gamma1 => ("P2", "P1"),
            ArcId::UpperEast => ("P1", "asymptote l->sqrt3"),
            ArcId::LowerTail => ("asymptote l->0-", "P5"),
            ArcId::Gamma4 => ("P5", "P7"),
            ArcId::BeyondP7 => ("P7", "asymptote l->-sqrt3"),
        }
    }

    /// Limit of `G4` at the asymptotic end of an extension arc.
    pub fn asymptotic_gamma4(self) -> Option<f64> {
        match self {
            ArcId::UpperWest => Some(-1.0),
            ArcId::UpperEast | ArcId::BeyondP7 => Some(-2.0),
            ArcId::LowerTail => Some(-0.5),
            _ => None,
        }
    }
}

/// A distinguished point of `f = 0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LandmarkPoint {
    /// `P1` to `P7`.
    pub name: String,
    /// Location.
    pub point: KitePoint,
    /// Defining condition.
    pub condition: String,
    /// Closed form when one is known.
    pub closed_form: Option<String>,
    /// True when the point lies on the excluded line `k = 0` and is only a limit.
    pub limit_only: bool,
    /// True when membership in `f = 0` (and the defining condition) was checked exactly.
    pub exact: bool,
}

/// Numerical landmark coordinates used to split the branches into arcs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LandmarkValues {
    /// `l` at P1 on `k = sqrt 3`.
    pub l1: f64,
    /// `k` at P2, `sqrt 2 - 1`.
    pub k2: f64,
    /// `l` at P3 on `k = -sqrt 3`.
    pub l3: f64,
    /// `l` at P4 on `k = 0`.
    pub l4: f64,
    /// `l` at P5 on `k = sqrt 3`.
    pub l5: f64,
    /// `l` at P6, `-1/sqrt 3`.
    pub l6: f64,
    /// `k` at P7, `1 + sqrt 2`.
    pub k7: f64,
}

/// Splits `F(s sqrt(d), l)` into `A(l) + s sqrt(d) B(l)`.
pub(crate) fn parity_split(p: &BivariatePolynomial, d: i64) -> (RationalPolynomial, RationalPolynomial) {
    let n = p.terms().map(|(&(_, j), _)| j as usize).max().unwrap_or(0);
    let mut a = vec![Rational::zero(); n + 1];
    let mut b = vec![Rational::zero(); n + 1];
    for (&(i, j), c) in p.terms() {
        let w = num_traits::pow(int(d), (i / 2) as usize) * c;
        if i % 2 == 0 {
            a[j as usize] += w;
        } else {
            b[j as usize] += w;
        }
    }
    (RationalPolynomial::new(a), RationalPolynomial::new(b))
}

use num_traits::Zero;

/// Real roots `l` of `A(l) + s sqrt(d) B(l) = 0` for the chosen sign `s`, refined to 30 digits.
pub(crate) fn surd_line_roots(
    p: &BivariatePolynomial,
    d: i64,
    s: i32,
) -> Result<Vec<Rational>> {
    let (a, b) = parity_split(p, d);
    let norm = &(&a * &a) - &(&(&b * &b) * &RationalPolynomial::constant(int(d)));
    if norm.is_zero() {
        return Ok(Vec::new());
    }
    let iso = RootIsolator::new(&norm)?;
    let eps = decimal_eps(30);
    let sd = (d as f64).sqrt();
    let mut out = Vec::new();
    for iv in iso.isolate() {
        let iv = iso.refine(&iv, &eps)?;
        let l = iv.midpoint();
        let (av, bv) = (to_f64(&a.eval(&l)), to_f64(&b.eval(&l)));
        let plus = (av + sd * bv).abs();
        let minus = (av - sd * bv).abs();
        let chosen = if s > 0 { plus <= minus } else { minus <= plus };
        if chosen || (plus == 0.0 && minus == 0.0) {
            out.push(l);
        }
    }
    Ok(out)
}

fn compute_landmarks() -> Vec<LandmarkPoint> {
    let f = cleared_f_polynomial();
    let s3 = 3f64.sqrt();
    let on_plus: Vec<f64> = surd_line_roots(&f, 3, 1)
        .expect("nonzero norm polynomial")
        .iter()
        .map(to_f64)
        .filter(|l| s3 + l > 0.0)
        .collect();
    let on_minus: Vec<f64> = surd_line_roots(&f, 3, -1)
        .expect("nonzero norm polynomial")
        .iter()
        .map(to_f64)
        .filter(|l| -s3 + l > 0.0)
        .collect();
    let p6_exact = {
        let k = QuadraticSurd::sqrt(3);
        let l = QuadraticSurd::new(int(0), rat(-1, 3), 3);
        QuadraticSurd::eval_bivariate(&f, &k, &l).is_zero()
    };
    let l6 = -1.0 / s3;
    let pick = |v: &[f64], pred: &dyn Fn(f64) -> bool| v.iter().cloned().find(|&x| pred(x));
    let l1 = pick(&on_plus, &|l| l > 0.0).expect("P1 exists");
    let l5 = pick(&on_plus, &|l| l < 0.0 && (l - l6).abs() > 1e-6).expect("P5 exists");
    let l3 = on_minus[0];
    // k = 0: F(0, l) = 3 l^4 - 3 l^2 - 2, so l^2 = (3 + sqrt 33) / 6.
    let f0 = f.specialize(crate::ratpoly::Var::X, &int(0));
    let l4 = crate::ratpoly::real_roots(&f0, &decimal_eps(30))
        .expect("quartic has real roots")
        .iter()
        .map(|iv| iv.approx())
        .find(|&l| l > 0.0)
        .expect("P4 exists");
    let pole_check = |k: QuadraticSurd, l: i64| {
        let lq = QuadraticSurd::rational(int(l), 2);
        let on_f = QuadraticSurd::eval_bivariate(&f, &k, &lq).is_zero();
        let pole = &(&(&k * &k) + &(&(&QuadraticSurd::rational(int(2), 2) * &k) * &lq))
            - &QuadraticSurd::rational(int(1), 2);
        on_f && pole.is_zero()
    };
    let p2_exact = pole_check(QuadraticSurd::new(int(-1), int(1), 2), 1);
    let p7_exact = pole_check(QuadraticSurd::new(int(1), int(1), 2), -1);
    let lm = |name: &str, k: f64, l: f64, cond: &str, closed: Option<&str>, limit: bool, exact| {
        LandmarkPoint {
            name: name.into(),
            point: KitePoint::new(k, l),
            condition: cond.into(),
            closed_form: closed.map(str::to_string),
            limit_only: limit,
            exact,
        }
    };
    vec![
        lm("P1", s3, l1, "k = sqrt 3, f = 0, l > 0", None, false, true),
        lm("P2", 2f64.sqrt() - 1.0, 1.0, "pole curve, f = 0, l = 1", Some("(sqrt 2 - 1, 1)"), false, p2_exact),
        lm("P3", -s3, l3, "k = -sqrt 3, f = 0, k + l > 0", None, false, true),
        lm("P4", 0.0, l4, "k = 0, f = 0", Some("(0, sqrt((3 + sqrt 33) / 6))"), true, true),
        lm("P5", s3, l5, "k = sqrt 3, f = 0, l(P6) < l < 0", None, false, true),
        lm("P6", s3, l6, "k = sqrt 3, f = 0, pole curve", Some("(sqrt 3, -1/sqrt 3)"), false, p6_exact),
        lm("P7", 1.0 + 2f64.sqrt(), -1.0, "pole curve, f = 0, l = -1", Some("(1 + sqrt 2, -1)"), false, p7_exact),
    ]
}

static LANDMARKS: OnceLock<Vec<LandmarkPoint>> = OnceLock::new();

/// The seven landmarks P1 to P7, computed once by exact root isolation.
pub fn landmarks() -> Vec<LandmarkPoint> {
    LANDMARKS.get_or_init(compute_landmarks).clone()
}

/// Landmark coordinates as plain numbers.
pub fn landmark_values() -> LandmarkValues {
    let lm = LANDMARKS.get_or_init(compute_landmarks);
    let get = |n: &str| lm.iter().find(|p| p.name == n).expect("known landmark").point;
    LandmarkValues {
        l1: get("P1").l,
        k2: get("P2").k,
        l3: get("P3").l,
        l4: get("P4").l,
        l5: get("P5").l,
        l6: get("P6").l,
        k7: get("P7").k,
    }
}

/// The named arc containing a point of `f = 0` in `k + l > 0`.
pub fn arc_of(p: &KitePoint) -> ArcId {
    let v = landmark_values();
    let s3 = 3f64.sqrt();
    if p.l > 0.0 {
        if p.k < -s3 {
            ArcId::UpperWest
        } else if p.k < 0.0 {
            ArcId::Gamma3
        } else if p.k < v.k2 {
            ArcId::Gamma2
        } else if p.k < s3 {
            ArcId::Gamma1
        } else {
            ArcId::UpperEast
        }
    } else if p.l > v.l5 {
        ArcId::LowerTail
    } else if p.l > -1.0 {
        ArcId::Gamma4
    } else {
        ArcId::BeyondP7
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_landmarks() {
        let v = landmark_values();
        assert_eq!(format!("{:.5}", v.l3), "2.74748");
        assert_eq!(format!("{:.4}", v.l4), "1.2072");
        assert_eq!(format!("{:.5}", v.l1), "1.19175");
        assert_eq!(format!("{:.5}", v.l5), "-0.17633");
        assert!((v.k2 - (2f64.sqrt() - 1.0)).abs() < 1e-15);
        assert!(landmarks().iter().all(|p| p.exact));
    }

    #[test]
    fn arcs_of_known_points() {
        assert_eq!(arc_of(&KitePoint::new(1.0, 1.0)), ArcId::Gamma1);
        assert_eq!(arc_of(&KitePoint::new(-0.5, 1.7)), ArcId::Gamma3);
        assert_eq!(arc_of(&KitePoint::new(1.9, -0.72)), ArcId::Gamma4);
        assert_eq!(arc_of(&KitePoint::new(2.4, -0.05)), ArcId::LowerTail);
        assert_eq!(arc_of(&KitePoint::new(-2.06, 2.99)), ArcId::UpperWest);
    }
}
