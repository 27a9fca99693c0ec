//! Shared checks for the property suites and the acceptance report.
#![allow(dead_code)]

use vortex_atlas::ratpoly::{int, ExtRational, Rational, RationalPolynomial, RootIsolator};
use vortex_atlas::vortexcore::{cayley_menger, oriented_areas, pair_index, PlanarConfiguration};

/// Smallest |A_i| relative to the squared diameter accepted for a "general position" sample.
pub const MIN_AREA_RATIO: f64 = 0.02;

/// Squared distances in pair order.
pub fn rho_of(p: &[[f64; 2]; 4]) -> [f64; 6] {
    let mut rho = [0.0; 6];
    for i in 0..4 {
        for j in i + 1..4 {
            let (dx, dy) = (p[i][0] - p[j][0], p[i][1] - p[j][1]);
            rho[pair_index(i, j)] = dx * dx + dy * dy;
        }
    }
    rho
}

/// True when every oriented area is bounded away from zero relative to the diameter.
pub fn in_general_position(p: &[[f64; 2]; 4]) -> bool {
    let d2 = rho_of(p).into_iter().fold(0.0, f64::max);
    oriented_areas(p).iter().all(|a| a.abs() >= MIN_AREA_RATIO * d2)
}

/// Worst relative error of a central difference of `S` against `-32 A_i A_j` over all pairs.
pub fn ds_drho_error(p: &[[f64; 2]; 4]) -> f64 {
    let rho = rho_of(p);
    let a = oriented_areas(p);
    let scale = rho.iter().fold(0.0f64, |m, r| m.max(*r));
    let mut worst: f64 = 0.0;
    for i in 0..4 {
        for j in i + 1..4 {
            let k = pair_index(i, j);
            let h = 1e-4 * scale;
            let (mut up, mut dn) = (rho, rho);
            up[k] += h;
            dn[k] -= h;
            let (mut up2, mut dn2) = (rho, rho);
            up2[k] += 2.0 * h;
            dn2[k] -= 2.0 * h;
            // Five-point stencil: exact for the cubic S up to rounding.
            let fd = (8.0 * (cayley_menger(&up) - cayley_menger(&dn))
                - (cayley_menger(&up2) - cayley_menger(&dn2)))
                / (12.0 * h);
            let want = -32.0 * a[i] * a[j];
            worst = worst.max((fd - want).abs() / want.abs());
        }
    }
    worst
}

/// `A_1 + A_2 + A_3 + A_4` relative to the squared diameter.
pub fn area_sum_relative(p: &[[f64; 2]; 4]) -> f64 {
    let d2 = rho_of(p).into_iter().fold(0.0, f64::max);
    oriented_areas(p).iter().sum::<f64>().abs() / d2
}

/// Rotates by `theta`, scales by `s` and translates by `(dx, dy)`.
pub fn transform(cfg: &PlanarConfiguration, theta: f64, s: f64, dx: f64, dy: f64) -> PlanarConfiguration {
    cfg.rotated(theta).scaled(s).translated(dx, dy)
}

/// Integer polynomial from low-to-high coefficients.
pub fn poly(coeffs: &[i64]) -> RationalPolynomial {
    RationalPolynomial::new(coeffs.iter().map(|&c| int(c)).collect())
}

fn eval(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &a| acc * x + a)
}

fn deriv(c: &[f64]) -> Vec<f64> {
    c.iter().enumerate().skip(1).map(|(i, &a)| i as f64 * a).collect()
}

fn bisect(c: &[f64], mut lo: f64, mut hi: f64) -> f64 {
    let mut slo = eval(c, lo).signum();
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let sm = eval(c, mid).signum();
        if sm == 0.0 {
            return mid;
        }
        if sm == slo {
            lo = mid;
            slo = sm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// All real roots of a square-free float polynomial in `(-b, b)`, found by bisecting between
/// consecutive roots of the derivative, which are found the same way.
pub fn bisection_roots(c: &[f64], b: f64) -> Vec<f64> {
    let mut c = c.to_vec();
    while c.len() > 1 && *c.last().unwrap() == 0.0 {
        c.pop();
    }
    if c.len() <= 1 {
        return Vec::new();
    }
    let mut knots = vec![-b];
    knots.extend(bisection_roots(&deriv(&c), b));
    knots.push(b);
    let mut roots = Vec::new();
    for w in knots.windows(2) {
        let (fa, fb) = (eval(&c, w[0]), eval(&c, w[1]));
        if fa == 0.0 {
            if roots.last() != Some(&w[0]) {
                roots.push(w[0]);
            }
        } else if fa.signum() != fb.signum() && fb != 0.0 {
            roots.push(bisect(&c, w[0], w[1]));
        }
    }
    if eval(&c, b) == 0.0 {
        roots.push(b);
    }
    roots
}

/// Outcome of comparing Sturm, Descartes and the bisection oracle on one polynomial.
#[derive(Debug)]
pub struct RootCheck {
    /// Distinct real roots by Sturm.
    pub sturm: usize,
    /// Distinct real roots by the oracle.
    pub oracle: usize,
    /// Positive roots by Sturm.
    pub sturm_positive: usize,
    /// Descartes sign variations of the square-free part.
    pub descartes: usize,
}

impl RootCheck {
    /// Sturm agrees with the oracle and the Descartes bound holds with the right parity.
    pub fn consistent(&self) -> bool {
        self.sturm == self.oracle
            && self.sturm_positive <= self.descartes
            && (self.descartes - self.sturm_positive).is_multiple_of(2)
    }
}

/// Runs the comparison; `None` for constant polynomials.
pub fn check_roots(coeffs: &[i64]) -> Option<RootCheck> {
    let p = poly(coeffs);
    if p.degree().unwrap_or(0) == 0 {
        return None;
    }
    let sf = p.square_free_part();
    // Drop the root at zero so the Descartes parity statement applies.
    let (sf0, _) = sf.remove_factor(&poly(&[0, 1]));
    let iso = RootIsolator::new(&sf).ok()?;
    let sturm = iso.root_count();
    let positive = RootIsolator::new(&sf0)
        .map(|i| i.count_in(&ExtRational::Finite(Rational::from_integer(0.into())), &ExtRational::PosInf))
        .unwrap_or(0);
    let b = vortex_atlas::ratpoly::to_f64(&sf.cauchy_bound()) + 1.0;
    let oracle = bisection_roots(&sf.to_f64_coeffs(), b).len();
    Some(RootCheck {
        sturm,
        oracle,
        sturm_positive: positive,
        descartes: sf0.coefficient_sign_variations(),
    })
}
