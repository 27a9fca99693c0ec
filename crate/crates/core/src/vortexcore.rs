//! Four-vortex configurations: conserved quantities, the velocity field, mutual-distance
//! coordinates, Dziobek equations and equilibrium certificates.
//!
//! Positions are planar points, strengths are real. The velocity of vortex `i` is
//! `(-sum G_j (y_i - y_j) / r_ij^2, sum G_j (x_i - x_j) / r_ij^2)`, so positive vortices turn
//! counterclockwise around each other. A relative equilibrium rotates rigidly with
//! `z_j' = -lambda J (z_j - c)`, `J (x, y) = (-y, x)`, so `lambda = -omega` for a
//! counterclockwise rate `omega`, and `lambda = -L / (2 I)`.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ratpoly::resultant::rational_determinant;
use crate::ratpoly::Rational;

/// Pair order used for every six-vector of mutual quantities.
pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Default relative tolerance for floating-point certificates.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Index into a six-vector for the unordered pair `{i, j}`.
pub fn pair_index(i: usize, j: usize) -> usize {
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    PAIRS.iter().position(|&p| p == (a, b)).expect("distinct indices below 4")
}

/// The four vortex strengths.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Vorticities {
    /// Strengths in label order.
    pub gamma: [f64; 4],
}

impl Vorticities {
    /// Three unit vortices and a fourth of strength `gamma4`.
    pub fn three_unit(gamma4: f64) -> Self {
        Self {
            gamma: [1.0, 1.0, 1.0, gamma4],
        }
    }

    /// Total vorticity.
    pub fn total(&self) -> f64 {
        self.gamma.iter().sum()
    }

    /// Angular momentum `L = sum_{i<j} G_i G_j`.
    pub fn angular_momentum(&self) -> f64 {
        PAIRS.iter().map(|&(i, j)| self.gamma[i] * self.gamma[j]).sum()
    }
}

/// Labeled positions and strengths; serializes as `{"positions": [[x, y]; 4], "gamma": [..; 4]}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlanarConfiguration {
    /// Positions in label order.
    pub positions: [[f64; 2]; 4],
    /// Strengths in label order.
    pub gamma: [f64; 4],
}

impl PlanarConfiguration {
    /// Builds a configuration.
    pub fn new(positions: [[f64; 2]; 4], gamma: [f64; 4]) -> Self {
        Self { positions, gamma }
    }

    /// Strengths as a [`Vorticities`] value.
    pub fn vorticities(&self) -> Vorticities {
        Vorticities { gamma: self.gamma }
    }

    /// Uniformly scaled copy.
    pub fn scaled(&self, s: f64) -> Self {
        let mut out = *self;
        for p in &mut out.positions {
            p[0] *= s;
            p[1] *= s;
        }
        out
    }

    /// Copy rotated by `theta` about the origin.
    pub fn rotated(&self, theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        let mut out = *self;
        for p in &mut out.positions {
            let (x, y) = (p[0], p[1]);
            *p = [c * x - s * y, s * x + c * y];
        }
        out
    }

    /// Copy translated by `(dx, dy)`.
    pub fn translated(&self, dx: f64, dy: f64) -> Self {
        let mut out = *self;
        for p in &mut out.positions {
            p[0] += dx;
            p[1] += dy;
        }
        out
    }

    /// Squared distance between vortices `i` and `j`.
    pub fn rho(&self, i: usize, j: usize) -> f64 {
        let dx = self.positions[i][0] - self.positions[j][0];
        let dy = self.positions[i][1] - self.positions[j][1];
        dx * dx + dy * dy
    }

    /// Largest distance from the centroid of the positions.
    pub fn radius(&self) -> f64 {
        let cx = self.positions.iter().map(|p| p[0]).sum::<f64>() / 4.0;
        let cy = self.positions.iter().map(|p| p[1]).sum::<f64>() / 4.0;
        self.positions
            .iter()
            .map(|p| ((p[0] - cx).powi(2) + (p[1] - cy).powi(2)).sqrt())
            .fold(0.0, f64::max)
    }

    fn check_collisions(&self) -> Result<()> {
        let scale = self.radius().max(f64::MIN_POSITIVE);
        for &(i, j) in &PAIRS {
            if self.rho(i, j).sqrt() <= 1e-12 * scale {
                return Err(Error::Domain(format!(
                    "vortices {} and {} collide",
                    i + 1,
                    j + 1
                )));
            }
        }
        Ok(())
    }
}

/// Conserved and derived quantities of a configuration.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VortexQuantities {
    /// Total vorticity `G = sum G_l`.
    pub total_vorticity: f64,
    /// Angular momentum `L = sum_{l<k} G_l G_k`.
    pub angular_momentum: f64,
    /// Moment of vorticity `M = sum G_l z_l`.
    pub moment_of_vorticity: [f64; 2],
    /// Center of vorticity `M / G`, absent when `G = 0`.
    pub center_of_vorticity: Option<[f64; 2]>,
    /// Moment of inertia `1/2 sum G_l |z_l - c|^2`, measured from the center of vorticity when it
    /// exists and from the origin otherwise.
    pub moment_of_inertia: f64,
}

/// Computes the quantities of a configuration.
pub fn quantities(cfg: &PlanarConfiguration) -> VortexQuantities {
    let g = cfg.gamma;
    let total: f64 = g.iter().sum();
    let l = cfg.vorticities().angular_momentum();
    let mut m = [0.0; 2];
    for (gi, p) in g.iter().zip(&cfg.positions) {
        m[0] += gi * p[0];
        m[1] += gi * p[1];
    }
    let center = if total != 0.0 {
        Some([m[0] / total, m[1] / total])
    } else {
        None
    };
    let origin = center.unwrap_or([0.0, 0.0]);
    let inertia = 0.5
        * g.iter()
            .zip(&cfg.positions)
            .map(|(gi, p)| gi * ((p[0] - origin[0]).powi(2) + (p[1] - origin[1]).powi(2)))
            .sum::<f64>();
    VortexQuantities {
        total_vorticity: total,
        angular_momentum: l,
        moment_of_vorticity: m,
        center_of_vorticity: center,
        moment_of_inertia: inertia,
    }
}

/// Angular velocity `lambda = -L / (2 I)` of a relative equilibrium.
pub fn angular_velocity(q: &VortexQuantities) -> Result<f64> {
    if q.moment_of_inertia == 0.0 {
        return Err(Error::Degenerate("moment of inertia vanishes".into()));
    }
    Ok(-q.angular_momentum / (2.0 * q.moment_of_inertia))
}

/// Velocity of every vortex induced by the other three.
pub fn velocities(cfg: &PlanarConfiguration) -> [[f64; 2]; 4] {
    let mut v = [[0.0; 2]; 4];
    for i in 0..4 {
        for j in 0..4 {
            if i == j {
                continue;
            }
            let dx = cfg.positions[i][0] - cfg.positions[j][0];
            let dy = cfg.positions[i][1] - cfg.positions[j][1];
            let r2 = dx * dx + dy * dy;
            v[i][0] -= cfg.gamma[j] * dy / r2;
            v[i][1] += cfg.gamma[j] * dx / r2;
        }
    }
    v
}

/// Typical induced speed: the largest `sum_j |G_j| / r_ij`.
pub fn velocity_scale(cfg: &PlanarConfiguration) -> f64 {
    (0..4)
        .map(|i| {
            (0..4)
                .filter(|&j| j != i)
                .map(|j| cfg.gamma[j].abs() / cfg.rho(i, j).sqrt())
                .sum::<f64>()
        })
        .fold(0.0, f64::max)
}

/// Signed area of the triangle `(a, b, c)`.
pub fn signed_area(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> f64 {
    0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))
}

/// Oriented areas `A_i = (-1)^(i+1) D_i` (labels from 1), where `D_i` is the signed area of the
/// triangle of the other three vortices taken in increasing label order.
///
/// With this orientation `A_1 + A_2 + A_3 + A_4 = 0`, and a rhombus with vortices 1, 2 on one
/// diagonal has `A_1 = A_2 = -A_3 = -A_4`.
pub fn oriented_areas(positions: &[[f64; 2]; 4]) -> [f64; 4] {
    let mut out = [0.0; 4];
    for (i, a) in out.iter_mut().enumerate() {
        let others: Vec<usize> = (0..4).filter(|&j| j != i).collect();
        let d = signed_area(
            positions[others[0]],
            positions[others[1]],
            positions[others[2]],
        );
        *a = if i % 2 == 0 { d } else { -d };
    }
    out
}

fn determinant_f64(mut m: Vec<Vec<f64>>) -> f64 {
    let n = m.len();
    let mut det = 1.0;
    for k in 0..n {
        let p = (k..n)
            .max_by(|&a, &b| m[a][k].abs().total_cmp(&m[b][k].abs()))
            .expect("nonempty range");
        if m[p][k] == 0.0 {
            return 0.0;
        }
        if p != k {
            m.swap(p, k);
            det = -det;
        }
        det *= m[k][k];
        for i in k + 1..n {
            let f = m[i][k] / m[k][k];
            for j in k..n {
                m[i][j] -= f * m[k][j];
            }
        }
    }
    det
}

fn cayley_menger_matrix<T: Clone + Zero + From<i32>>(rho: &[T; 6]) -> Vec<Vec<T>> {
    let mut m = vec![vec![T::from(1); 5]; 5];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = T::zero();
    }
    for (k, &(i, j)) in PAIRS.iter().enumerate() {
        m[i + 1][j + 1] = rho[k].clone();
        m[j + 1][i + 1] = rho[k].clone();
    }
    m
}

/// Cayley-Menger determinant `S` of six squared distances; zero exactly for planar quadruples.
pub fn cayley_menger(rho: &[f64; 6]) -> f64 {
    determinant_f64(cayley_menger_matrix(rho))
}

/// Exact Cayley-Menger determinant for rational squared distances.
pub fn cayley_menger_exact(rho: &[Rational; 6]) -> Rational {
    let m = cayley_menger_matrix(&rho.clone().map(RationalCell))
        .into_iter()
        .map(|r| r.into_iter().map(|c| c.0).collect())
        .collect();
    rational_determinant(m)
}

#[derive(Clone)]
struct RationalCell(Rational);

impl Zero for RationalCell {
    fn zero() -> Self {
        RationalCell(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl std::ops::Add for RationalCell {
    type Output = RationalCell;
    fn add(self, r: Self) -> Self {
        RationalCell(self.0 + r.0)
    }
}

impl From<i32> for RationalCell {
    fn from(v: i32) -> Self {
        RationalCell(Rational::from_integer(v.into()))
    }
}

/// Exact oriented areas for rational positions, same convention as [`oriented_areas`].
pub fn oriented_areas_exact(positions: &[[Rational; 2]; 4]) -> [Rational; 4] {
    let area = |a: &[Rational; 2], b: &[Rational; 2], c: &[Rational; 2]| {
        ((&b[0] - &a[0]) * (&c[1] - &a[1]) - (&b[1] - &a[1]) * (&c[0] - &a[0]))
            / Rational::from_integer(2.into())
    };
    let mut out: [Rational; 4] = Default::default();
    for (i, a) in out.iter_mut().enumerate() {
        let o: Vec<usize> = (0..4).filter(|&j| j != i).collect();
        let d = area(&positions[o[0]], &positions[o[1]], &positions[o[2]]);
        *a = if i % 2 == 0 { d } else { -d };
    }
    out
}

/// Exact squared distances for rational positions.
pub fn squared_distances_exact(positions: &[[Rational; 2]; 4]) -> [Rational; 6] {
    PAIRS.map(|(i, j)| {
        let dx = &positions[i][0] - &positions[j][0];
        let dy = &positions[i][1] - &positions[j][1];
        &dx * &dx + &dy * &dy
    })
}

/// The three Dziobek products `(1/rho_ij + l)(1/rho_kl + l)` over complementary pairs, exactly.
pub fn dziobek_products_exact(rho: &[Rational; 6], lambda_prime: &Rational) -> [Rational; 3] {
    let s = |k: usize| Rational::from_integer(1.into()) / &rho[k] + lambda_prime;
    [s(0) * s(5), s(1) * s(4), s(2) * s(3)]
}

/// Squared distances, oriented areas and the optional Dziobek scale `lambda'`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MutualDistanceState {
    /// Squared distances in [`PAIRS`] order.
    pub rho: [f64; 6],
    /// Oriented areas.
    pub areas: [f64; 4],
    /// Dziobek multiplier `lambda' = lambda / G`, when known.
    pub lambda_prime: Option<f64>,
    /// Cayley-Menger determinant of `rho`.
    pub cayley_menger: f64,
}

impl MutualDistanceState {
    /// Inverse squared distance of pair `k`.
    pub fn s(&self, k: usize) -> f64 {
        1.0 / self.rho[k]
    }

    /// Copy with a known `lambda'`.
    pub fn with_lambda_prime(mut self, lp: f64) -> Self {
        self.lambda_prime = Some(lp);
        self
    }

    /// True when every oriented area is negligible against the squared size.
    pub fn is_collinear(&self) -> bool {
        let scale = self.rho.iter().cloned().fold(0.0, f64::max);
        self.areas.iter().all(|a| a.abs() <= 1e-9 * scale)
    }
}

/// Mutual distances and areas of a configuration.
pub fn to_mutual_distances(cfg: &PlanarConfiguration) -> Result<MutualDistanceState> {
    cfg.check_collisions()?;
    let rho = PAIRS.map(|(i, j)| cfg.rho(i, j));
    Ok(MutualDistanceState {
        rho,
        areas: oriented_areas(&cfg.positions),
        lambda_prime: None,
        cayley_menger: cayley_menger(&rho),
    })
}

/// `lambda'` eliminated from the first Dziobek equality, if the elimination is regular.
pub fn eliminate_lambda_prime(s: &MutualDistanceState) -> Option<f64> {
    let (a, b, c, d) = (s.s(0), s.s(5), s.s(1), s.s(4));
    let den = a + b - c - d;
    if den.abs() <= 1e-14 * (a.abs() + b.abs() + c.abs() + d.abs()) {
        None
    } else {
        Some((c * d - a * b) / den)
    }
}

/// The two independent differences of the three Dziobek products.
///
/// When `lambda'` is unknown it is eliminated from the first equality, which then holds by
/// construction; the second component carries the information.
pub fn dziobek_residuals(s: &MutualDistanceState) -> Result<[f64; 2]> {
    if s.rho.iter().any(|&r| r <= 0.0) {
        return Err(Error::Domain("squared distances must be positive".into()));
    }
    let lp = match s.lambda_prime.or_else(|| eliminate_lambda_prime(s)) {
        Some(v) => v,
        None => {
            let (c, d, e, f) = (s.s(1), s.s(4), s.s(2), s.s(3));
            let den = c + d - e - f;
            if den == 0.0 {
                return Ok([0.0, 0.0]);
            }
            (e * f - c * d) / den
        }
    };
    let p = |i: usize, j: usize| (s.s(i) + lp) * (s.s(j) + lp);
    let (p1, p2, p3) = (p(0, 5), p(1, 4), p(2, 3));
    Ok([p1 - p2, p2 - p3])
}

/// Scale-free Dziobek residual: the larger difference divided by the squared magnitude of the
/// shifted inverse distances.
pub fn dziobek_relative_residual(s: &MutualDistanceState) -> Result<f64> {
    let r = dziobek_residuals(s)?;
    let lp = s.lambda_prime.unwrap_or(0.0);
    let scale = (0..6).map(|k| s.s(k).abs() + lp.abs()).fold(0.0, f64::max);
    Ok(r[0].abs().max(r[1].abs()) / (scale * scale))
}

/// `(r13^2 - r12^2)(r23^2 - r34^2)(r24^2 - r14^2) - (r12^2 - r14^2)(r24^2 - r34^2)(r13^2 - r23^2)`.
pub fn condition10_residual(s: &MutualDistanceState) -> f64 {
    let [r12, r13, r14, r23, r24, r34] = s.rho;
    (r13 - r12) * (r23 - r34) * (r24 - r14) - (r12 - r14) * (r24 - r34) * (r13 - r23)
}

/// Necessary-condition residual divided by the cube of the largest squared distance.
pub fn condition10_relative_residual(s: &MutualDistanceState) -> f64 {
    let m = s.rho.iter().cloned().fold(0.0, f64::max);
    condition10_residual(s) / (m * m * m)
}

/// For each pair `(i, j)` in [`PAIRS`] order, the pairs whose inverse squared distances give
/// `G_i A_j / (G_j A_i) = (s_a - s_b) / (s_c - s_d)`.
const RATIO_TABLE: [[(usize, usize); 4]; 6] = [
    [(1, 2), (1, 3), (0, 2), (0, 3)],
    [(1, 2), (2, 3), (0, 1), (0, 3)],
    [(1, 3), (2, 3), (0, 1), (0, 2)],
    [(0, 2), (2, 3), (0, 1), (1, 3)],
    [(0, 3), (2, 3), (0, 1), (1, 2)],
    [(0, 3), (1, 3), (0, 2), (1, 2)],
];

/// Strength ratios `G_i A_j / (G_j A_i)` from differences of inverse squared distances.
///
/// Fails with [`Error::Degenerate`] when a denominator vanishes (a symmetry forces two distances
/// to agree); use [`vorticity_ratios_with_lambda`] in that case.
pub fn vorticity_ratios(s: &MutualDistanceState) -> Result<[f64; 6]> {
    let inv = |p: (usize, usize)| s.s(pair_index(p.0, p.1));
    let scale = (0..6).map(|k| s.s(k)).fold(0.0, f64::max);
    let mut out = [0.0; 6];
    for (k, row) in RATIO_TABLE.iter().enumerate() {
        let num = inv(row[0]) - inv(row[1]);
        let den = inv(row[2]) - inv(row[3]);
        if den.abs() <= 1e-12 * scale {
            let (i, j) = PAIRS[k];
            return Err(Error::Degenerate(format!(
                "symmetric degeneracy in the ratio for vortices {} and {}",
                i + 1,
                j + 1
            )));
        }
        out[k] = num / den;
    }
    Ok(out)
}

/// Strength ratios `G_i A_j / (G_j A_i)` from the `lambda'` forms `(s_a + l)/(s_c + l)`.
pub fn vorticity_ratios_with_lambda(s: &MutualDistanceState) -> Result<[f64; 6]> {
    let lp = s
        .lambda_prime
        .ok_or_else(|| Error::Precondition("lambda' is required".into()))?;
    let inv = |p: (usize, usize)| s.s(pair_index(p.0, p.1));
    let mut out = [0.0; 6];
    for (k, row) in RATIO_TABLE.iter().enumerate() {
        let den = inv(row[2]) + lp;
        if den == 0.0 {
            return Err(Error::Degenerate("vanishing lambda' denominator".into()));
        }
        out[k] = (inv(row[0]) + lp) / den;
    }
    Ok(out)
}

/// Recovers `G_4` from the shape alone, given `G_1`.
pub fn recover_gamma4(s: &MutualDistanceState, gamma1: f64) -> Result<f64> {
    let r = vorticity_ratios(s)?;
    let ratio14 = r[pair_index(0, 3)];
    if s.areas[0] == 0.0 || ratio14 == 0.0 {
        return Err(Error::Degenerate("cannot recover G4 from this shape".into()));
    }
    Ok(gamma1 * s.areas[3] / (s.areas[0] * ratio14))
}

/// Residuals of the six equations `G_i G_j (1/rho_ij + lambda') = mu A_i A_j`, with `mu` fitted
/// by least squares, each divided by the largest left-hand-side magnitude.
pub fn dziobek_full_residuals(s: &MutualDistanceState, gamma: &[f64; 4]) -> Result<[f64; 6]> {
    let lp = s
        .lambda_prime
        .ok_or_else(|| Error::Precondition("lambda' is required".into()))?;
    let lhs: Vec<f64> = PAIRS
        .iter()
        .enumerate()
        .map(|(k, &(i, j))| gamma[i] * gamma[j] * (s.s(k) + lp))
        .collect();
    let rhs: Vec<f64> = PAIRS.iter().map(|&(i, j)| s.areas[i] * s.areas[j]).collect();
    let den: f64 = rhs.iter().map(|v| v * v).sum();
    if den == 0.0 {
        return Err(Error::Degenerate("all area products vanish".into()));
    }
    let mu = lhs.iter().zip(&rhs).map(|(a, b)| a * b).sum::<f64>() / den;
    let scale = lhs.iter().map(|v| v.abs()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let mut out = [0.0; 6];
    for k in 0..6 {
        out[k] = (lhs[k] - mu * rhs[k]) / scale;
    }
    Ok(out)
}

/// Type of rigid motion detected by [`certify`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MotionKind {
    /// All velocities vanish.
    AbsoluteEquilibrium,
    /// All velocities agree and are nonzero.
    RigidTranslation,
    /// Rigid rotation with nonzero angular velocity.
    Rotation,
}

/// Outcome of [`certify`]. All residuals are scale-free.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EquilibriumCertificate {
    /// Dziobek residual, absent for collinear shapes, rigid translations, or when the total vanishes.
    pub residual_dziobek: Option<f64>,
    /// Necessary-condition residual, with the same applicability as the Dziobek residual.
    pub residual_condition10: Option<f64>,
    /// `max_j |z_j' + lambda J (z_j - c) - v|` divided by the velocity scale.
    pub residual_motion: f64,
    /// Fitted angular velocity.
    pub lambda: f64,
    /// `-L / (2 I)`, when `I` is nonzero.
    pub lambda_formula: Option<f64>,
    /// `lambda / G`, when `G` is nonzero.
    pub lambda_prime: Option<f64>,
    /// Fitted center of rotation for rotating motions.
    pub center: Option<[f64; 2]>,
    /// Common velocity for rigid translations.
    pub translation_velocity: Option<[f64; 2]>,
    /// Detected motion type.
    pub kind: MotionKind,
    /// Tolerance used for the verdict.
    pub tolerance: f64,
    /// True when every applicable residual is at most the tolerance.
    pub pass: bool,
}

fn solve3(a: [[f64; 3]; 3], b: [f64; 3]) -> Option<[f64; 3]> {
    let det = |m: [[f64; 3]; 3]| {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    };
    let d = det(a);
    if d == 0.0 {
        return None;
    }
    let mut out = [0.0; 3];
    for (k, o) in out.iter_mut().enumerate() {
        let mut m = a;
        for r in 0..3 {
            m[r][k] = b[r];
        }
        *o = det(m) / d;
    }
    Some(out)
}

/// Certifies a candidate relative equilibrium against the velocity field.
///
/// Fits `v_j = omega (-(y_j - c_y), x_j - c_x)` (or a common translation) by least squares and
/// reports the worst deviation; for non-collinear shapes with all strengths and the total
/// nonzero the Dziobek equations and the necessary condition are checked as well.
pub fn certify(cfg: &PlanarConfiguration, tol: f64) -> Result<EquilibriumCertificate> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Domain("tolerance must be positive".into()));
    }
    let state = to_mutual_distances(cfg)?;
    let v = velocities(cfg);
    let vs = velocity_scale(cfg);
    let centroid = [
        cfg.positions.iter().map(|p| p[0]).sum::<f64>() / 4.0,
        cfg.positions.iter().map(|p| p[1]).sum::<f64>() / 4.0,
    ];
    let pts: Vec<[f64; 2]> = cfg
        .positions
        .iter()
        .map(|p| [p[0] - centroid[0], p[1] - centroid[1]])
        .collect();
    // Unknowns (omega, a, b): vx = -omega y + b, vy = omega x - a, centered coordinates.
    let mut ata = [[0.0; 3]; 3];
    let mut atb = [0.0; 3];
    for (p, vj) in pts.iter().zip(&v) {
        let rows = [([-p[1], 0.0, 1.0], vj[0]), ([p[0], -1.0, 0.0], vj[1])];
        for (row, rhs) in rows {
            for r in 0..3 {
                atb[r] += row[r] * rhs;
                for c in 0..3 {
                    ata[r][c] += row[r] * row[c];
                }
            }
        }
    }
    let [omega, a, b] = solve3(ata, atb)
        .ok_or_else(|| Error::Degenerate("velocity fit is singular".into()))?;
    let residual_motion = pts
        .iter()
        .zip(&v)
        .map(|(p, vj)| {
            let ex = vj[0] - (-omega * p[1] + b);
            let ey = vj[1] - (omega * p[0] - a);
            ex.hypot(ey)
        })
        .fold(0.0, f64::max)
        / vs;
    let max_speed = v.iter().map(|w| w[0].hypot(w[1])).fold(0.0, f64::max) / vs;
    let radius = cfg.radius();
    let kind = if max_speed <= tol {
        MotionKind::AbsoluteEquilibrium
    } else if (omega * radius).abs() / vs <= tol {
        MotionKind::RigidTranslation
    } else {
        MotionKind::Rotation
    };
    let lambda = if kind == MotionKind::Rotation { -omega } else { 0.0 };
    let center = (kind == MotionKind::Rotation)
        .then(|| [centroid[0] + a / omega, centroid[1] + b / omega]);
    let translation_velocity = (kind == MotionKind::RigidTranslation).then(|| [b, -a]);
    let q = quantities(cfg);
    let lambda_formula = angular_velocity(&q).ok();
    let total = q.total_vorticity;
    let lambda_prime = (total != 0.0).then(|| lambda / total);
    // The product form involves the strengths only through lambda' = lambda / G, so it also
    // applies with a passive vortex: there every product has a vanishing factor.
    let dziobek_applies = !state.is_collinear()
        && total != 0.0
        && kind != MotionKind::RigidTranslation;
    let (residual_dziobek, residual_condition10) = if dziobek_applies {
        let st = state.with_lambda_prime(lambda_prime.expect("total is nonzero"));
        (
            Some(dziobek_relative_residual(&st)?),
            Some(condition10_relative_residual(&st).abs()),
        )
    } else {
        (None, None)
    };
    let pass = residual_motion <= tol
        && residual_dziobek.is_none_or(|r| r <= tol)
        && residual_condition10.is_none_or(|r| r <= tol);
    Ok(EquilibriumCertificate {
        residual_dziobek,
        residual_condition10,
        residual_motion,
        lambda,
        lambda_formula,
        lambda_prime,
        center,
        translation_velocity,
        kind,
        tolerance: tol,
        pass,
    })
}

/// Index of a vortex lying strictly inside the triangle of the other three, if any.
pub fn interior_vortex(positions: &[[f64; 2]; 4]) -> Option<usize> {
    (0..4).find(|&i| {
        let o: Vec<usize> = (0..4).filter(|&j| j != i).collect();
        let p = positions[i];
        let d1 = signed_area(positions[o[0]], positions[o[1]], p);
        let d2 = signed_area(positions[o[1]], positions[o[2]], p);
        let d3 = signed_area(positions[o[2]], positions[o[0]], p);
        (d1 > 0.0 && d2 > 0.0 && d3 > 0.0) || (d1 < 0.0 && d2 < 0.0 && d3 < 0.0)
    })
}
