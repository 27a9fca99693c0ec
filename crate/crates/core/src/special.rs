//! Absolute equilibria (`L = 0`) and the zero-total-vorticity regime (`G = 0`).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kite::{solve_kite, KiteClass};
use crate::vortexcore::{
    velocities, velocity_scale, MutualDistanceState, PlanarConfiguration, Vorticities, PAIRS,
};

/// Kind of special motion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpecialKind {
    /// Every vortex is at rest.
    AbsoluteEquilibrium,
    /// Every vortex moves with one common nonzero velocity.
    RigidTranslation,
}

/// Configurations of one special kind.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpecialCaseResult {
    /// Motion type.
    pub kind: SpecialKind,
    /// Configurations found.
    pub configurations: Vec<PlanarConfiguration>,
    /// Common velocity of each configuration, for rigid translations.
    pub translation_velocities: Vec<[f64; 2]>,
    /// Largest deviation of a velocity from the common value (zero for equilibria), per
    /// configuration, relative to [`velocity_scale`].
    pub residuals: Vec<f64>,
}

/// Largest speed divided by the velocity scale.
pub fn max_relative_speed(cfg: &PlanarConfiguration) -> f64 {
    let v = velocities(cfg);
    v.iter().map(|w| w[0].hypot(w[1])).fold(0.0, f64::max) / velocity_scale(cfg)
}

/// Largest pairwise velocity difference divided by the velocity scale.
pub fn max_relative_velocity_spread(cfg: &PlanarConfiguration) -> f64 {
    let v = velocities(cfg);
    let mut worst: f64 = 0.0;
    for &(i, j) in &PAIRS {
        worst = worst.max((v[i][0] - v[j][0]).hypot(v[i][1] - v[j][1]));
    }
    worst / velocity_scale(cfg)
}

/// The two explicit equilibria with `z3 = (1, 0)`, `z4 = (0, 0)`:
/// `z1 = (2 G4 + G2, +-G2 sqrt 3) / (2 (G2 + G3 + G4))`,
/// `z2 = (2 G4 + G1, -+G1 sqrt 3) / (2 (G1 + G3 + G4))`.
pub fn absolute_equilibria(v: &Vorticities) -> Result<SpecialCaseResult> {
    let l = v.angular_momentum();
    let g = v.gamma;
    let scale = g.iter().map(|x| x * x).sum::<f64>();
    if l.abs() > 1e-12 * scale {
        return Err(Error::Precondition(format!(
            "absolute equilibria need L = 0, got L = {l}"
        )));
    }
    let d1 = 2.0 * (g[1] + g[2] + g[3]);
    let d2 = 2.0 * (g[0] + g[2] + g[3]);
    if d1 == 0.0 || d2 == 0.0 {
        return Err(Error::Degenerate(
            "G2 + G3 + G4 or G1 + G3 + G4 vanishes".into(),
        ));
    }
    let s3 = 3f64.sqrt();
    let configurations: Vec<PlanarConfiguration> = [1.0, -1.0]
        .iter()
        .map(|&s| {
            PlanarConfiguration::new(
                [
                    [(2.0 * g[3] + g[1]) / d1, s * g[1] * s3 / d1],
                    [(2.0 * g[3] + g[0]) / d2, -s * g[0] * s3 / d2],
                    [1.0, 0.0],
                    [0.0, 0.0],
                ],
                g,
            )
        })
        .collect();
    let residuals = configurations.iter().map(max_relative_speed).collect();
    Ok(SpecialCaseResult {
        kind: SpecialKind::AbsoluteEquilibrium,
        configurations,
        translation_velocities: Vec::new(),
        residuals,
    })
}

/// `S_i = sum_{j != i} G_j r_ij^2`.
pub fn weighted_sums(rho: &[f64; 6], gamma: &[f64; 4]) -> [f64; 4] {
    let mut s = [0.0; 4];
    for (k, &(i, j)) in PAIRS.iter().enumerate() {
        s[i] += gamma[j] * rho[k];
        s[j] += gamma[i] * rho[k];
    }
    s
}

/// Residuals of `S_1 = S_2 = S_3 = S_4 = s0` followed by the two cleared equalities of
/// `1/s12 + 1/s34 = 1/s13 + 1/s24 = 1/s14 + 1/s23`.
///
/// The `S` residuals are relative to `|s0|`; the cleared equalities are relative to the
/// cube of the largest squared distance.
pub fn eq17_residuals(s: &MutualDistanceState, gamma: &[f64; 4], s0: f64) -> Result<[f64; 6]> {
    if s.rho.iter().any(|&r| r <= 0.0) {
        return Err(Error::Domain("vortices collide".into()));
    }
    let sums = weighted_sums(&s.rho, gamma);
    let norm = s0.abs().max(f64::MIN_POSITIVE);
    let [r12, r13, r14, r23, r24, r34] = s.rho;
    let m = s.rho.iter().cloned().fold(0.0, f64::max);
    let cube = m * m * m;
    // 1/a + 1/b = 1/c + 1/d  <=>  cd (a + b) = ab (c + d).
    let cleared = |a: f64, b: f64, c: f64, d: f64| (c * d * (a + b) - a * b * (c + d)) / cube;
    Ok([
        (sums[0] - s0) / norm,
        (sums[1] - s0) / norm,
        (sums[2] - s0) / norm,
        (sums[3] - s0) / norm,
        cleared(r12, r34, r13, r24),
        cleared(r13, r24, r14, r23),
    ])
}

/// The two symmetric shapes of the `G = 0` regime for strengths `(1, 1, 1, -3)`: the
/// equilateral triangle with vortex 4 at its center, and the concave kite with vortex 4 inside
/// the isosceles triangle of the unit vortices.
pub fn symmetric_zero_total_shapes() -> Result<Vec<PlanarConfiguration>> {
    let s3 = 3f64.sqrt();
    let gamma = [1.0, 1.0, 1.0, -3.0];
    let equilateral = PlanarConfiguration::new(
        [[-1.0, 0.0], [1.0, 0.0], [0.0, -s3], [0.0, -1.0 / s3]],
        gamma,
    );
    let report = solve_kite(-3.0, 1e-10)?;
    let kite = report
        .solutions
        .iter()
        .find(|s| s.class == KiteClass::ConcaveInterior)
        .ok_or_else(|| Error::Inconsistency("no concave kite at G4 = -3".into()))?;
    Ok(vec![equilateral, kite.point.embed(-3.0)])
}

fn normalized(u: &[f64; 4], gamma: [f64; 4]) -> PlanarConfiguration {
    PlanarConfiguration::new([[u[0], u[1]], [u[2], u[3]], [1.0, 0.0], [0.0, 0.0]], gamma)
}

fn translation_residual(u: &[f64; 4], gamma: [f64; 4]) -> [f64; 6] {
    let v = velocities(&normalized(u, gamma));
    [
        v[0][0] - v[3][0],
        v[0][1] - v[3][1],
        v[1][0] - v[3][0],
        v[1][1] - v[3][1],
        v[2][0] - v[3][0],
        v[2][1] - v[3][1],
    ]
}

fn solve4(mut a: [[f64; 4]; 4], mut b: [f64; 4]) -> Option<[f64; 4]> {
    for c in 0..4 {
        let p = (c..4).max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs()))?;
        if a[p][c].abs() < 1e-300 {
            return None;
        }
        a.swap(c, p);
        b.swap(c, p);
        for r in c + 1..4 {
            let f = a[r][c] / a[c][c];
            for k in c..4 {
                a[r][k] -= f * a[c][k];
            }
            b[r] -= f * b[c];
        }
    }
    let mut x = [0.0; 4];
    for r in (0..4).rev() {
        let s: f64 = (r + 1..4).map(|k| a[r][k] * x[k]).sum();
        x[r] = (b[r] - s) / a[r][r];
    }
    Some(x)
}

/// Levenberg-Marquardt on the six velocity differences with `z3`, `z4` pinned.
fn levenberg_marquardt(start: [f64; 4], gamma: [f64; 4]) -> Option<[f64; 4]> {
    let norm2 = |r: &[f64; 6]| r.iter().map(|x| x * x).sum::<f64>();
    let mut u = start;
    let mut r = translation_residual(&u, gamma);
    let mut mu = 1e-3;
    for _ in 0..200 {
        let mut jac = [[0.0; 4]; 6];
        for c in 0..4 {
            let h = 1e-7 * (1.0 + u[c].abs());
            let (mut up, mut dn) = (u, u);
            up[c] += h;
            dn[c] -= h;
            let (rp, rm) = (translation_residual(&up, gamma), translation_residual(&dn, gamma));
            for k in 0..6 {
                jac[k][c] = (rp[k] - rm[k]) / (2.0 * h);
            }
        }
        let mut jtj = [[0.0; 4]; 4];
        let mut jtr = [0.0; 4];
        for k in 0..6 {
            for a in 0..4 {
                jtr[a] -= jac[k][a] * r[k];
                for b in 0..4 {
                    jtj[a][b] += jac[k][a] * jac[k][b];
                }
            }
        }
        let mut improved = false;
        for _ in 0..20 {
            let mut damped = jtj;
            for (a, row) in damped.iter_mut().enumerate() {
                row[a] += mu * (1.0 + jtj[a][a]);
            }
            let Some(step) = solve4(damped, jtr) else {
                mu *= 10.0;
                continue;
            };
            let cand = [u[0] + step[0], u[1] + step[1], u[2] + step[2], u[3] + step[3]];
            let rc = translation_residual(&cand, gamma);
            if rc.iter().all(|x| x.is_finite()) && norm2(&rc) < norm2(&r) {
                let small = step.iter().map(|s| s.abs()).fold(0.0, f64::max) < 1e-15;
                u = cand;
                r = rc;
                mu = (mu / 10.0).max(1e-15);
                improved = true;
                if small {
                    return Some(u);
                }
                break;
            }
            mu *= 10.0;
        }
        if !improved || norm2(&r) < 1e-30 {
            break;
        }
    }
    Some(u)
}

/// Multi-start search for rigidly translating configurations, normalized with `z3 = (1, 0)` and
/// `z4 = (0, 0)`, deduplicated at `1e-6` and certified with pairwise velocity spread `<= eps`.
///
/// Seeds are drawn deterministically from `seed`.
pub fn rigid_translation_search(
    v: &Vorticities,
    eps: f64,
    starts: usize,
    seed: u64,
) -> Result<SpecialCaseResult> {
    let total = v.total();
    let scale = v.gamma.iter().map(|g| g.abs()).sum::<f64>();
    if total.abs() > 1e-12 * scale {
        return Err(Error::Precondition(format!(
            "rigid translations need G = 0, got G = {total}"
        )));
    }
    if !(eps > 0.0) {
        return Err(Error::Domain("tolerance must be positive".into()));
    }
    let gamma = v.gamma;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let seeds: Vec<[f64; 4]> = (0..starts)
        .map(|_| std::array::from_fn(|_| rng.gen_range(-3.0..3.0)))
        .collect();
    let found: Vec<[f64; 4]> = seeds
        .par_iter()
        .filter_map(|s| levenberg_marquardt(*s, gamma))
        .filter(|u| {
            let cfg = normalized(u, gamma);
            u.iter().all(|x| x.abs() < 1e2)
                && PAIRS.iter().all(|&(i, j)| cfg.rho(i, j).sqrt() > 1e-3)
                && max_relative_velocity_spread(&cfg) <= eps
                && max_relative_speed(&cfg) > 1e-6
        })
        .collect();
    let mut unique: Vec<[f64; 4]> = Vec::new();
    for u in found {
        let dup = unique
            .iter()
            .any(|w| w.iter().zip(&u).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max) < 1e-6);
        if !dup {
            unique.push(u);
        }
    }
    unique.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    let configurations: Vec<PlanarConfiguration> =
        unique.iter().map(|u| normalized(u, gamma)).collect();
    let translation_velocities = configurations
        .iter()
        .map(|c| {
            let w = velocities(c);
            [
                w.iter().map(|p| p[0]).sum::<f64>() / 4.0,
                w.iter().map(|p| p[1]).sum::<f64>() / 4.0,
            ]
        })
        .collect();
    let residuals = configurations.iter().map(max_relative_velocity_spread).collect();
    Ok(SpecialCaseResult {
        kind: SpecialKind::RigidTranslation,
        configurations,
        translation_velocities,
        residuals,
    })
}
