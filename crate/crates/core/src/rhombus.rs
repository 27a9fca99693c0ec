//! Closed-form rhombus families with strengths `(1, 1, 1, G4)`.
//!
//! Vortices 1 and 2 sit at `(-1, 0)` and `(1, 0)`, vortices 3 and 4 at `(0, -x)` and `(0, x)`, so
//! `r12 = 2` and `x = r34 / r12` is the ratio of the diagonals. The diagonal ratio and the angular
//! velocity follow `G4 = (x^2 - 3) / (1 - 3 x^2)`, `x^2 = (G4 + 3) / (3 G4 + 1)` and
//! `lambda r12^2 = -3 (1 + G4)`.
//!
//! Every rhombus satisfies the multiplier-free necessary condition, and the closed form for
//! `lambda` agrees exactly with `-L / (2 I)` on the embedding. The strength-weighted equations for
//! the pairs 13 and 14 however force `G4 = 1` whenever vortex 3 of strength 1 sits opposite
//! vortex 4, so away from the square the embeddings do not move rigidly.
//! [`RhombusFamily::certificate`] records the velocity check on every embedding.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ratpoly::{int, to_f64, Rational};
use crate::vortexcore::{certify, dziobek_products_exact, EquilibriumCertificate, PlanarConfiguration};

/// The two branches of `x^2 = (G4 + 3) / (3 G4 + 1) > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilyId {
    /// `G4 > -1/3`, `lambda < 0`, containing the square at `G4 = 1`.
    A,
    /// `G4 < -3`, `lambda > 0`, born from the 3-4 collision at `G4 = -3`.
    B,
}

impl FamilyId {
    /// The family containing `gamma4`, if any.
    pub fn of(gamma4: f64) -> Option<Self> {
        if gamma4 > -1.0 / 3.0 {
            Some(FamilyId::A)
        } else if gamma4 < -3.0 {
            Some(FamilyId::B)
        } else {
            None
        }
    }

    /// The `G4` interval quoted in words for this family, which is narrower than the formula's
    /// admissible range for family A.
    pub fn stated_interval(self) -> (f64, f64) {
        match self {
            FamilyId::A => (-1.0 / 3.0, 0.0),
            FamilyId::B => (f64::NEG_INFINITY, -3.0),
        }
    }
}

/// One member of a rhombus family.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RhombusFamily {
    /// The fourth strength.
    pub gamma4: f64,
    /// `x^2 = (r34 / r12)^2`.
    pub x_squared: f64,
    /// `(r13 / r12)^2 = (1 + x^2) / 4`, forced by the geometry of the rhombus.
    pub side_ratio_sq: f64,
    /// The alternative closed form `(r13 / r12)^2 = G4 + 1`.
    pub side_ratio_sq_alt: f64,
    /// `lambda r12^2 = -3 (1 + G4)`.
    pub lambda_scaled: f64,
    /// Branch.
    pub family: FamilyId,
    /// Whether `G4` lies in the interval quoted in words for the family.
    pub in_stated_interval: bool,
    /// The embedded configuration with `r12 = 2`.
    pub configuration: PlanarConfiguration,
    /// Velocity and Dziobek check of the embedding.
    pub certificate: EquilibriumCertificate,
}

impl RhombusFamily {
    /// True when the two closed forms for the side ratio agree to `1e-12`.
    pub fn side_ratio_consistent(&self) -> bool {
        (self.side_ratio_sq - self.side_ratio_sq_alt).abs() <= 1e-12 * (1.0 + self.side_ratio_sq.abs())
    }
}

/// `G4 = (x^2 - 3) / (1 - 3 x^2)`.
pub fn gamma4_of_ratio(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain("the diagonal ratio must be positive".into()));
    }
    let x2 = x * x;
    let den = 1.0 - 3.0 * x2;
    if den.abs() <= 1e-15 {
        return Err(Error::Degenerate("x = 1/sqrt 3 is a pole of G4".into()));
    }
    Ok((x2 - 3.0) / den)
}

/// `x^2 = (G4 + 3) / (3 G4 + 1)`; fails when no rhombus exists.
pub fn ratio_of_gamma4(gamma4: f64) -> Result<f64> {
    let den = 3.0 * gamma4 + 1.0;
    if den == 0.0 {
        return Err(Error::Degenerate("G4 = -1/3 is a pole of x^2".into()));
    }
    let x2 = (gamma4 + 3.0) / den;
    if !(x2 > 0.0) {
        return Err(Error::Domain(format!("no rhombus for G4 = {gamma4} (x^2 = {x2})")));
    }
    Ok(x2)
}

/// `lambda r12^2 = -3 (1 + G4)`.
pub fn angular_velocity_scaled(gamma4: f64) -> f64 {
    -3.0 * (1.0 + gamma4)
}

/// Exact `G4` from a rational `x^2`.
pub fn gamma4_of_ratio_sq_exact(x2: &Rational) -> Result<Rational> {
    let den = int(1) - int(3) * x2;
    if den.is_zero() || !x2.is_positive() {
        return Err(Error::Domain("x^2 must be positive and different from 1/3".into()));
    }
    Ok((x2 - int(3)) / den)
}

/// Exact `x^2` from a rational `G4`.
pub fn ratio_of_gamma4_exact(gamma4: &Rational) -> Result<Rational> {
    let den = int(3) * gamma4 + int(1);
    if den.is_zero() {
        return Err(Error::Degenerate("G4 = -1/3 is a pole of x^2".into()));
    }
    let x2 = (gamma4 + int(3)) / den;
    if !x2.is_positive() {
        return Err(Error::Domain("no rhombus for this G4".into()));
    }
    Ok(x2)
}

/// Exact `lambda r12^2 = -3 (1 + G4)`.
pub fn angular_velocity_scaled_exact(gamma4: &Rational) -> Rational {
    -int(3) * (Rational::one() + gamma4)
}

/// Squared distances of the embedding in pair order `12, 13, 14, 23, 24, 34`.
pub fn squared_distances_exact(x2: &Rational) -> [Rational; 6] {
    let side = Rational::one() + x2;
    [
        int(4),
        side.clone(),
        side.clone(),
        side.clone(),
        side,
        int(4) * x2,
    ]
}

/// `lambda r12^2` from `-L / (2 I)` on the embedding, exactly.
///
/// Uses `2 I G = sum_{i<j} G_i G_j r_ij^2`, so `lambda r12^2 = -4 L G / sum G_i G_j r_ij^2`.
pub fn lambda_scaled_from_invariants(gamma4: &Rational) -> Result<Rational> {
    let x2 = ratio_of_gamma4_exact(gamma4)?;
    let g = [int(1), int(1), int(1), gamma4.clone()];
    let rho = squared_distances_exact(&x2);
    let pairs = crate::vortexcore::PAIRS;
    let l: Rational = pairs.iter().map(|&(i, j)| &g[i] * &g[j]).sum();
    let total: Rational = g.iter().sum();
    let weighted: Rational = pairs
        .iter()
        .zip(&rho)
        .map(|(&(i, j), r)| &g[i] * &g[j] * r)
        .sum();
    if weighted.is_zero() {
        return Err(Error::Degenerate("moment of inertia vanishes".into()));
    }
    Ok(-int(4) * l * total / weighted)
}

/// Checks the multiplier-free necessary condition
/// `(r13^2 - r12^2)(r23^2 - r34^2)(r24^2 - r14^2) = (r12^2 - r14^2)(r24^2 - r34^2)(r13^2 - r23^2)`
/// exactly on the embedding.
pub fn necessary_condition_exact(gamma4: &Rational) -> Result<bool> {
    let x2 = ratio_of_gamma4_exact(gamma4)?;
    let [r12, r13, r14, r23, r24, r34] = squared_distances_exact(&x2);
    let lhs = (&r13 - &r12) * (&r23 - &r34) * (&r24 - &r14);
    let rhs = (&r12 - &r14) * (&r24 - &r34) * (&r13 - &r23);
    Ok(lhs == rhs)
}

/// Checks the three Dziobek products exactly with `l' = lambda / G` taken from the closed form
/// for `lambda`.
pub fn dziobek_products_agree_exact(gamma4: &Rational) -> Result<bool> {
    let x2 = ratio_of_gamma4_exact(gamma4)?;
    let total = int(3) + gamma4;
    if total.is_zero() {
        return Err(Error::Degenerate("total vorticity vanishes".into()));
    }
    let lp = angular_velocity_scaled_exact(gamma4) / (int(4) * total);
    let p = dziobek_products_exact(&squared_distances_exact(&x2), &lp);
    Ok(p[0] == p[1] && p[1] == p[2])
}

/// The rhombus embedding with `r12 = 2`.
pub fn embed(gamma4: f64, x_squared: f64) -> PlanarConfiguration {
    let x = x_squared.sqrt();
    PlanarConfiguration::new(
        [[-1.0, 0.0], [1.0, 0.0], [0.0, -x], [0.0, x]],
        [1.0, 1.0, 1.0, gamma4],
    )
}

/// The rhombus family member at `gamma4`, or an empty list when `x^2 <= 0`.
pub fn enumerate_families(gamma4: f64, eps: f64) -> Result<Vec<RhombusFamily>> {
    let Some(family) = FamilyId::of(gamma4) else {
        return Ok(Vec::new());
    };
    let x_squared = ratio_of_gamma4(gamma4)?;
    let configuration = embed(gamma4, x_squared);
    let (lo, hi) = family.stated_interval();
    Ok(vec![RhombusFamily {
        gamma4,
        x_squared,
        side_ratio_sq: (1.0 + x_squared) / 4.0,
        side_ratio_sq_alt: gamma4 + 1.0,
        lambda_scaled: angular_velocity_scaled(gamma4),
        family,
        in_stated_interval: (gamma4 > lo && gamma4 < hi) || gamma4 == 1.0,
        configuration,
        certificate: certify(&configuration, eps)?,
    }])
}

/// One row of a rhombus sweep.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RhombusRow {
    /// The fourth strength.
    pub gamma4: f64,
    /// `x^2`, when positive.
    pub x_squared: Option<f64>,
    /// Geometric side ratio squared.
    pub side_ratio_sq: Option<f64>,
    /// `lambda r12^2`.
    pub lambda_scaled: f64,
    /// Branch.
    pub family: Option<FamilyId>,
    /// A rhombus exists.
    pub admissible: bool,
    /// The embedding passed the velocity check.
    pub certified: bool,
}

/// Evaluates the closed forms on `samples` evenly spaced values in `[lo, hi]`.
pub fn sweep(lo: f64, hi: f64, samples: usize, eps: f64) -> Result<Vec<RhombusRow>> {
    if samples < 2 || !(lo < hi) {
        return Err(Error::Domain("need lo < hi and at least two samples".into()));
    }
    (0..samples)
        .map(|i| {
            let g = lo + (hi - lo) * i as f64 / (samples - 1) as f64;
            let fam = enumerate_families(g, eps)?;
            let first = fam.first();
            Ok(RhombusRow {
                gamma4: g,
                x_squared: first.map(|f| f.x_squared),
                side_ratio_sq: first.map(|f| f.side_ratio_sq),
                lambda_scaled: angular_velocity_scaled(g),
                family: first.map(|f| f.family),
                admissible: first.is_some(),
                certified: first.is_some_and(|f| f.certificate.pass),
            })
        })
        .collect()
}

/// Strength `m` making the rhombus with strengths `(1, 1, m, m)` a relative equilibrium:
/// `m = x^2 (3 - x^2) / (3 x^2 - 1)`.
pub fn paired_axis_strength(x2: &Rational) -> Result<Rational> {
    let den = int(3) * x2 - int(1);
    if den.is_zero() {
        return Err(Error::Degenerate("x^2 = 1/3".into()));
    }
    Ok(x2 * (int(3) - x2) / den)
}

/// Convenience: `x^2` of a rational `G4` as a float.
pub fn ratio_of_gamma4_f64(gamma4: &Rational) -> Result<f64> {
    ratio_of_gamma4_exact(gamma4).map(|x| to_f64(&x))
}
