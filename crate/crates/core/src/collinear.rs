//! Collinear relative equilibria with `x3 = -1`, `x4 = 1`, `G1 = G2 = G3 = 1` and `G4` free.
//!
//! Collinear equilibria satisfy `sum_j G_j / (x_i - x_j) = omega (x_i - c)`, the rotation rate
//! being `omega = -lambda`. The equations for vortices 3 and 4 fix `omega` and `omega c`; the
//! remaining two, cleared of denominators, give a pair `F(x1, x2) = G(x1, x2) = 0`. Eliminating
//! `x1` leaves a degree-12 polynomial `p(x2)` whose real roots away from `x2 = +-1` enumerate the
//! solutions.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ratpoly::{
    int, rat, resultant, resultant_with_derivative, to_f64, BivariatePolynomial, IsolatingInterval,
    Rational, RationalPolynomial, RootIsolator, Var,
};
use crate::vortexcore::{certify, EquilibriumCertificate, PlanarConfiguration, DEFAULT_TOL};

/// Coefficients of `p(x2)`: row `k` holds the coefficient of `x2^k` as a polynomial in `G4`,
/// constant term first.
const P_TABLE: [[i64; 6]; 13] = [
    [-1148, 1050, 1227, -472, -711, 162],
    [7068, 9846, -6492, -12102, 600, 1080],
    [9048, -49626, -66484, 2348, 13886, 2916],
    [-112340, -93138, 78260, 91162, 32192, 3864],
    [166860, 334552, 261207, 114080, 24859, 2078],
    [-5112, 6476, 9528, -6092, -4144, -656],
    [-62688, -156484, -145312, -62936, -14092, -1288],
    [8712, 8492, -5640, -8636, -2656, -272],
    [7020, 23290, 26937, 13688, 3007, 254],
    [-740, -1346, 100, 1234, 664, 88],
    [-312, -1250, -1836, -1204, -338, -28],
    [12, 38, 20, -30, -32, -8],
    [4, 20, 37, 32, 13, 2],
];

/// The `x2^6` row as it appears in the published display, whose signs disagree with direct
/// elimination.
const PRINTED_X6: [i64; 6] = [62688, 156484, 145312, -62936, -14092, 1288];

fn eval_row(row: &[i64; 6], g: &Rational) -> Rational {
    row.iter()
        .rev()
        .fold(Rational::zero(), |acc, &c| acc * g + int(c))
}

fn p_from_table(g: &Rational, x6: &[i64; 6]) -> RationalPolynomial {
    let coeffs = P_TABLE
        .iter()
        .enumerate()
        .map(|(k, row)| eval_row(if k == 6 { x6 } else { row }, g))
        .collect();
    RationalPolynomial::new(coeffs)
}

/// The degree-12 eliminant `p(x2)` specialized at `gamma4`, exactly.
///
/// Its `x2^6` coefficient is `-(1288 G^5 + 14092 G^4 + 62936 G^3 + 145312 G^2 + 156484 G + 62688)`,
/// the value produced by eliminating `x1` from the cleared equations; every other coefficient
/// agrees with the published display.
pub fn asymmetric_polynomial(gamma4: &Rational) -> RationalPolynomial {
    p_from_table(gamma4, &P_TABLE[6])
}

/// The eliminant with the `x2^6` coefficient exactly as published. Kept so that
/// [`elimination_crosscheck_against`] can demonstrate that the published form is rejected.
pub fn printed_asymmetric_polynomial(gamma4: &Rational) -> RationalPolynomial {
    p_from_table(gamma4, &PRINTED_X6)
}

/// Leading coefficient `2 G^5 + 13 G^4 + 32 G^3 + 37 G^2 + 20 G + 4` of `p`.
pub fn leading_coefficient(gamma4: &Rational) -> Rational {
    eval_row(&P_TABLE[12], gamma4)
}

/// The normalized collinear problem at one exact strength.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollinearSystem {
    /// Strength of vortex 4.
    pub gamma4: Rational,
}

impl CollinearSystem {
    /// Builds the system for `gamma4`.
    pub fn new(gamma4: Rational) -> Self {
        Self { gamma4 }
    }

    /// The cleared equations `(F, G)` for vortices 1 and 2 as polynomials in `x = x1`, `y = x2`.
    ///
    /// Both are multiplied by `2 (x1 - x2)(x1^2 - 1)(x2^2 - 1)`, so they vanish identically on
    /// no collision set but carry extraneous factors there after elimination.
    pub fn cleared_equations(&self) -> (BivariatePolynomial, BivariatePolynomial) {
        let g = &self.gamma4;
        let x = BivariatePolynomial::var(Var::X);
        let y = BivariatePolynomial::var(Var::Y);
        let one = BivariatePolynomial::constant(Rational::one());
        let factors = [&x - &y, &x + &one, &x - &one, &y + &one, &y - &one];
        let two = BivariatePolynomial::constant(int(2));
        let without = |skip: usize| {
            factors
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .fold(two.clone(), |acc, (_, f)| &acc * f)
        };
        let d = factors.iter().fold(two.clone(), |acc, f| &acc * f);
        let c = |v: Rational| BivariatePolynomial::constant(v);
        // Each R_i times the common denominator d.
        let r1 = &(&without(0) + &without(1)) + &(&c(g.clone()) * &without(2));
        let r2 = &(&without(3) - &without(0)) + &(&c(g.clone()) * &without(4));
        let r3 = -&(&(&without(1) + &without(3)) + &(&c(g / int(2)) * &d));
        let r4 = &(&d.scale(&rat(1, 2)) - &without(2)) - &without(4);
        let omega2 = &r4 - &r3;
        let e = |xi: &BivariatePolynomial, ri: &BivariatePolynomial| {
            &(&(&omega2 * &(xi - &one)).scale(&rat(1, 2)) + &r4) - ri
        };
        (e(&x, &r1), e(&y, &r2))
    }
}

/// A certified collinear equilibrium; positions are `(x1, 0), (x2, 0), (-1, 0), (1, 0)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CollinearSolution {
    /// Position of vortex 1.
    pub x1: f64,
    /// Position of vortex 2.
    pub x2: f64,
    /// Exact bracket for `x2` as doubles `[lo, hi]`.
    pub x2_bracket: [f64; 2],
    /// Angular velocity `lambda = -omega`.
    pub lambda: f64,
    /// Center of rotation on the line.
    pub c: f64,
    /// True when `x1 = -x2`.
    pub symmetric: bool,
    /// Strength of vortex 4.
    pub gamma4: f64,
    /// Largest residual of the four collinear equations divided by `1 + |lambda|`.
    pub residual: f64,
    /// Velocity-field certificate of the embedded configuration.
    pub certificate: EquilibriumCertificate,
}

impl CollinearSolution {
    /// The embedded planar configuration.
    pub fn configuration(&self) -> PlanarConfiguration {
        PlanarConfiguration::new(
            [[self.x1, 0.0], [self.x2, 0.0], [-1.0, 0.0], [1.0, 0.0]],
            [1.0, 1.0, 1.0, self.gamma4],
        )
    }
}

/// A real root of `p` for which no finite, collision-free `x1` exists.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnrecoveredRoot {
    /// Bracket for `x2`.
    pub x2_bracket: [f64; 2],
    /// Why the root was not turned into a solution.
    pub reason: String,
}

/// Output of [`solve`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CollinearReport {
    /// Strength of vortex 4.
    pub gamma4: f64,
    /// Certified solutions ordered by `x2`.
    pub solutions: Vec<CollinearSolution>,
    /// Roots of `p` that do not correspond to finite equilibria.
    pub unrecovered: Vec<UnrecoveredRoot>,
}

/// Exact root census of `p` at one strength.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollinearCensus {
    /// Strength of vortex 4.
    pub gamma4: Rational,
    /// Distinct real roots of `p` other than `x2 = +-1`.
    pub root_count: usize,
    /// Number of symmetric (`x1 = -x2`) solutions.
    pub symmetric_count: usize,
    /// Roots at `x2 = +-1` (vortex 2 on top of vortex 3 or 4), which are excluded.
    pub degenerate_roots: Vec<Rational>,
    /// True when `p` drops degree because its leading coefficient vanishes.
    pub leading_coefficient_vanishes: bool,
}

/// `p` with all factors `x2 - 1` and `x2 + 1` removed, and the removed roots.
pub fn nondegenerate_part(p: &RationalPolynomial) -> (RationalPolynomial, Vec<Rational>) {
    let mut q = p.clone();
    let mut removed = Vec::new();
    for r in [int(-1), int(1)] {
        let (rest, m) = q.remove_factor(&RationalPolynomial::linear_root(&r));
        if m > 0 {
            removed.push(r);
        }
        q = rest;
    }
    (q, removed)
}

fn checked_p(gamma4: &Rational) -> Result<RationalPolynomial> {
    let p = asymmetric_polynomial(gamma4);
    if p.is_zero() {
        return Err(Error::Degenerate(format!("p vanishes identically at G4 = {gamma4}")));
    }
    Ok(p)
}

/// Number of distinct non-degenerate real roots of `p`.
pub fn root_count(gamma4: &Rational) -> Result<usize> {
    let (q, _) = nondegenerate_part(&checked_p(gamma4)?);
    Ok(RootIsolator::new(&q)?.root_count())
}

/// Exact census of collinear roots at `gamma4`.
pub fn census(gamma4: &Rational) -> Result<CollinearCensus> {
    let p = checked_p(gamma4)?;
    let (q, degenerate_roots) = nondegenerate_part(&p);
    let root_count = RootIsolator::new(&q)?.root_count();
    let symmetric_count = symmetric_polynomial(gamma4)?
        .map(|s| RootIsolator::new(&s).map(|i| i.root_count()))
        .transpose()?
        .unwrap_or(0);
    Ok(CollinearCensus {
        gamma4: gamma4.clone(),
        root_count,
        symmetric_count,
        degenerate_roots,
        leading_coefficient_vanishes: leading_coefficient(gamma4).is_zero(),
    })
}

/// Substitutes `x1 = -t`, `x2 = t`.
fn on_antidiagonal(f: &BivariatePolynomial) -> RationalPolynomial {
    let n = f.terms().map(|(&(i, j), _)| (i + j) as usize).max().unwrap_or(0);
    let mut coeffs = vec![Rational::zero(); n + 1];
    for (&(i, j), c) in f.terms() {
        let v = if i % 2 == 0 { c.clone() } else { -c.clone() };
        coeffs[(i + j) as usize] += v;
    }
    RationalPolynomial::new(coeffs)
}

/// Polynomial in `t = x2` whose real roots are the symmetric solutions `x1 = -x2`, with the
/// collision roots `t = 0, +-1` removed; `None` when there are no symmetric solutions at all.
pub fn symmetric_polynomial(gamma4: &Rational) -> Result<Option<RationalPolynomial>> {
    let (f, g) = CollinearSystem::new(gamma4.clone()).cleared_equations();
    let a = on_antidiagonal(&f);
    let b = on_antidiagonal(&g);
    let mut h = if a.is_zero() {
        b
    } else if b.is_zero() {
        a
    } else {
        a.gcd(&b)
    };
    if h.is_zero() {
        return Err(Error::Degenerate("symmetric equations vanish identically".into()));
    }
    for r in [int(-1), int(0), int(1)] {
        h = h.remove_factor(&RationalPolynomial::linear_root(&r)).0;
    }
    Ok((h.degree().unwrap_or(0) > 0).then_some(h))
}

/// Rotation rate, center and scaled residual of the collinear equations at `(x1, x2)`.
fn collinear_fit(x1: f64, x2: f64, g4: f64) -> (f64, f64, f64) {
    let xs = [x1, x2, -1.0, 1.0];
    let gs = [1.0, 1.0, 1.0, g4];
    let r: Vec<f64> = (0..4)
        .map(|i| {
            (0..4)
                .filter(|&j| j != i)
                .map(|j| gs[j] / (xs[i] - xs[j]))
                .sum()
        })
        .collect();
    let omega = (r[3] - r[2]) / 2.0;
    let mu = -(r[2] + r[3]) / 2.0;
    let res = (0..4)
        .map(|i| (r[i] - (omega * xs[i] - mu)).abs())
        .fold(0.0, f64::max);
    let c = if omega != 0.0 { mu / omega } else { f64::NAN };
    (-omega, c, res / (1.0 + omega.abs()))
}

fn build_solution(
    x1: f64,
    x2: f64,
    bracket: [f64; 2],
    gamma4: f64,
    tol: f64,
) -> Result<Option<CollinearSolution>> {
    let (lambda, c, residual) = collinear_fit(x1, x2, gamma4);
    let cfg = PlanarConfiguration::new(
        [[x1, 0.0], [x2, 0.0], [-1.0, 0.0], [1.0, 0.0]],
        [1.0, 1.0, 1.0, gamma4],
    );
    let certificate = certify(&cfg, tol)?;
    if !certificate.pass {
        return Ok(None);
    }
    Ok(Some(CollinearSolution {
        x1,
        x2,
        x2_bracket: bracket,
        lambda,
        c,
        symmetric: (x1 + x2).abs() <= 1e-9 * (1.0 + x2.abs()),
        gamma4,
        residual,
        certificate,
    }))
}

/// Closed-form symmetric solutions `x1 = -x2`, each certified; empty unless `G4 = 1`.
pub fn symmetric_solutions(gamma4: &Rational) -> Result<Vec<CollinearSolution>> {
    let Some(h) = symmetric_polynomial(gamma4)? else {
        return Ok(Vec::new());
    };
    let iso = RootIsolator::new(&h)?;
    let eps = crate::ratpoly::decimal_eps(30);
    let g = to_f64(gamma4);
    let mut out = Vec::new();
    for iv in iso.isolate() {
        let iv = iso.refine(&iv, &eps)?;
        let t = iv.approx();
        if let Some(s) = build_solution(-t, t, bracket(&iv), g, DEFAULT_TOL)? {
            out.push(s);
        }
    }
    Ok(out)
}

fn bracket(iv: &IsolatingInterval) -> [f64; 2] {
    [to_f64(&iv.lo), to_f64(&iv.hi)]
}

/// Relative size of `|G(x1, x2)|` against the magnitude of its terms.
fn relative_value(g: &BivariatePolynomial, x1: &Rational, x2: &Rational) -> f64 {
    let v = to_f64(&g.eval(x1, x2)).abs();
    let (a, b) = (to_f64(x1).abs(), to_f64(x2).abs());
    let scale: f64 = g
        .terms()
        .map(|(&(i, j), c)| to_f64(c).abs() * a.powi(i as i32) * b.powi(j as i32))
        .sum();
    v / scale.max(f64::MIN_POSITIVE)
}

/// All collinear equilibria at `gamma4`.
///
/// Each non-degenerate root of `p` is refined below `eps`; `x1` is recovered as the real root
/// of the quartic `F(., x2)` on which `G` also vanishes, and the embedded configuration is
/// certified against the velocity field. Roots without a finite partner `x1` are reported in
/// [`CollinearReport::unrecovered`].
pub fn solve(gamma4: &Rational, eps: &Rational) -> Result<CollinearReport> {
    if !eps.is_positive() {
        return Err(Error::Domain("eps must be positive".into()));
    }
    let fine = crate::ratpoly::decimal_eps(30);
    let work_eps = if *eps < fine { eps.clone() } else { fine.clone() };
    let (q, _) = nondegenerate_part(&checked_p(gamma4)?);
    let iso = RootIsolator::new(&q)?;
    let (f, g) = CollinearSystem::new(gamma4.clone()).cleared_equations();
    let g4 = to_f64(gamma4);
    let mut solutions = Vec::new();
    let mut unrecovered = Vec::new();
    for iv in iso.isolate() {
        let iv = iso.refine(&iv, &work_eps)?;
        let x2q = iv.midpoint();
        let x2 = to_f64(&x2q);
        let fx = f.specialize(Var::Y, &x2q);
        let mut found = false;
        if fx.degree().unwrap_or(0) > 0 {
            let candidates = RootIsolator::new(&fx)?;
            for c in candidates.isolate() {
                let c = candidates.refine(&c, &fine)?;
                let x1q = c.midpoint();
                let x1 = to_f64(&x1q);
                let near = |a: f64| (x1 - a).abs() <= 1e-8 * (1.0 + a.abs());
                if near(1.0) || near(-1.0) || near(x2) {
                    continue;
                }
                if relative_value(&g, &x1q, &x2q) > 1e-12 {
                    continue;
                }
                if let Some(s) = build_solution(x1, x2, bracket(&iv), g4, DEFAULT_TOL)? {
                    solutions.push(s);
                    found = true;
                }
            }
        }
        if !found {
            unrecovered.push(UnrecoveredRoot {
                x2_bracket: bracket(&iv),
                reason: "no finite collision-free x1 satisfies both equations".into(),
            });
        }
    }
    solutions.sort_by(|a, b| a.x2.total_cmp(&b.x2).then(a.x1.total_cmp(&b.x1)));
    Ok(CollinearReport {
        gamma4: g4,
        solutions,
        unrecovered,
    })
}

/// A parameter bracket in which the collinear root count changes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BifurcationBracket {
    /// Left end.
    pub lo: Rational,
    /// Right end.
    pub hi: Rational,
    /// Root count at `lo`.
    pub count_lo: usize,
    /// Root count at `hi`.
    pub count_hi: usize,
    /// True when `lc(p) disc(p)` changes sign on the bracket or vanishes at an end.
    pub certified: bool,
}

impl BifurcationBracket {
    /// True when the closed bracket contains `x`.
    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }
}

/// `lc(p) * Res(p, p')` at `gamma4`; it vanishes exactly where roots collide or escape.
pub fn discriminant_indicator(gamma4: &Rational) -> Result<Rational> {
    let p = checked_p(gamma4)?;
    if p.degree().unwrap_or(0) == 0 {
        return Ok(Rational::zero());
    }
    Ok(leading_coefficient(gamma4) * resultant_with_derivative(&p)?)
}

/// Number of bisection steps used to shrink each bracket.
const BISECTION_STEPS: usize = 40;

/// Brackets every `G4` in the open interval `(lo, hi)` at which the collinear root count changes.
///
/// The count is sampled at the `grid` interior points `lo + i (hi - lo) / (grid + 1)`; each
/// change is narrowed by bisection and adjacent brackets are merged.
pub fn bifurcation_values(
    lo: &Rational,
    hi: &Rational,
    grid: usize,
) -> Result<Vec<BifurcationBracket>> {
    if grid < 2 {
        return Err(Error::Precondition("grid must be at least 2".into()));
    }
    if lo >= hi {
        return Err(Error::Domain("empty parameter range".into()));
    }
    let step = (hi - lo) / int(grid as i64 + 1);
    let points: Vec<Rational> = (1..=grid).map(|i| lo + &step * int(i as i64)).collect();
    let counts = points
        .iter()
        .map(root_count)
        .collect::<Result<Vec<_>>>()?;
    let mut raw: Vec<(Rational, Rational, usize, usize)> = Vec::new();
    for w in 0..points.len() - 1 {
        if counts[w] == counts[w + 1] {
            continue;
        }
        let (mut a, mut b) = (points[w].clone(), points[w + 1].clone());
        let (ca, cb) = (counts[w], counts[w + 1]);
        for _ in 0..BISECTION_STEPS {
            let m = crate::ratpoly::rational::midpoint(&a, &b);
            let cm = root_count(&m)?;
            if cm == ca {
                a = m;
            } else if cm == cb {
                b = m;
            } else {
                // A third count sits strictly inside: split into two transitions.
                raw.push((a.clone(), m.clone(), ca, cm));
                a = m;
                continue;
            }
        }
        raw.push((a, b, ca, cb));
    }
    raw.sort_by(|x, y| x.0.cmp(&y.0));
    let mut merged: Vec<(Rational, Rational, usize, usize)> = Vec::new();
    for r in raw {
        match merged.last_mut() {
            Some(last) if r.0 <= last.1 => {
                if r.1 > last.1 {
                    last.1 = r.1;
                }
                last.3 = r.3;
            }
            _ => merged.push(r),
        }
    }
    merged
        .into_iter()
        .map(|(a, b, ca, cb)| {
            let da = discriminant_indicator(&a)?;
            let db = discriminant_indicator(&b)?;
            let certified = da.is_zero() || db.is_zero() || (da.is_positive() != db.is_positive());
            Ok(BifurcationBracket {
                lo: a,
                hi: b,
                count_lo: ca,
                count_hi: cb,
                certified,
            })
        })
        .collect()
}

/// Result of eliminating `x1` at one strength.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrosscheckRow {
    /// Strength of vortex 4.
    pub gamma4: Rational,
    /// Degree of the full resultant in `x2`.
    pub resultant_degree: usize,
    /// Multiplicity of the removed factor `x2^2 - 1` (sum over both roots).
    pub degenerate_multiplicity: usize,
    /// Number of non-degenerate real roots shared by both polynomials.
    pub real_roots: usize,
    /// True when the non-degenerate parts agree up to a constant factor.
    pub proportional: bool,
}

/// Compares the stored eliminant against a fresh elimination of `x1` at each sample.
pub fn elimination_crosscheck(samples: &[Rational]) -> Result<Vec<CrosscheckRow>> {
    elimination_crosscheck_against(samples, asymmetric_polynomial)
}

/// [`elimination_crosscheck`] against an arbitrary candidate eliminant.
///
/// Fails with [`Error::Transcription`] when the non-degenerate real root sets differ (compared
/// as overlapping intervals of width `1e-10`).
pub fn elimination_crosscheck_against<P>(samples: &[Rational], candidate: P) -> Result<Vec<CrosscheckRow>>
where
    P: Fn(&Rational) -> RationalPolynomial,
{
    if samples.is_empty() {
        return Err(Error::Precondition("at least one sample is required".into()));
    }
    let width = crate::ratpoly::decimal_eps(10);
    samples
        .iter()
        .map(|g| {
            if leading_coefficient(g).is_zero() {
                return Err(Error::Precondition(format!(
                    "G4 = {g} is a root of the leading coefficient"
                )));
            }
            let (f, gg) = CollinearSystem::new(g.clone()).cleared_equations();
            let res = resultant(&f, &gg, Var::X)?;
            let (res_nd, _) = nondegenerate_part(&res);
            let degenerate_multiplicity = [int(-1), int(1)]
                .iter()
                .map(|r| res.remove_factor(&RationalPolynomial::linear_root(r)).1)
                .sum();
            let (cand_nd, _) = nondegenerate_part(&candidate(g));
            let a = crate::ratpoly::real_roots(&res_nd, &width)?;
            let b = crate::ratpoly::real_roots(&cand_nd, &width)?;
            let same = a.len() == b.len() && a.iter().zip(&b).all(|(x, y)| x.overlaps(y));
            if !same {
                return Err(Error::Transcription(format!(
                    "at G4 = {g}: elimination gives {} real roots, the stored eliminant {}",
                    a.len(),
                    b.len()
                )));
            }
            Ok(CrosscheckRow {
                gamma4: g.clone(),
                resultant_degree: res.degree().unwrap_or(0),
                degenerate_multiplicity,
                real_roots: a.len(),
                proportional: res_nd.monic() == cand_nd.monic(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::QuadraticSurd;

    #[test]
    fn printed_values_of_p() {
        assert_eq!(asymmetric_polynomial(&int(0)).eval(&int(0)), int(-1148));
        assert_eq!(asymmetric_polynomial(&int(1)).leading_coeff(), int(108));
        assert_eq!(asymmetric_polynomial(&rat(1, 3)).degree(), Some(12));
        assert_eq!(leading_coefficient(&rat(-1, 2)), int(0));
    }

    #[test]
    fn census_counts() {
        for (g, n) in [(rat(-3, 4), 6), (rat(-1, 2), 7), (rat(1, 2), 12), (int(2), 12), (int(-2), 0)] {
            assert_eq!(census(&g).unwrap().root_count, n, "G4 = {g}");
        }
    }

    #[test]
    fn symmetric_family_only_at_one() {
        assert_eq!(census(&int(1)).unwrap().symmetric_count, 4);
        assert!(symmetric_solutions(&rat(1, 2)).unwrap().is_empty());
        let sols = symmetric_solutions(&int(1)).unwrap();
        assert_eq!(sols.len(), 4);
        let s3 = 3f64.sqrt();
        let s2 = 2f64.sqrt();
        for s in &sols {
            assert!(s.symmetric && s.certificate.pass);
            let target = [s3 + s2, s3 - s2, -s3 + s2, -s3 - s2];
            assert!(target.iter().any(|t| (s.x2 - t).abs() < 1e-12), "{}", s.x2);
        }
    }

    #[test]
    fn symmetric_squares_are_exact() {
        let h = symmetric_polynomial(&int(1)).unwrap().unwrap();
        // h is even, so it is a polynomial in y = t^2.
        let y_poly = RationalPolynomial::new(
            h.coeffs().iter().step_by(2).cloned().collect(),
        );
        for sign in [1, -1] {
            let y = QuadraticSurd::new(int(5), int(2 * sign), 6);
            assert!(y.eval_poly(&y_poly).is_zero());
        }
    }

    #[test]
    fn symmetric_lambda_follows_inertia() {
        for s in symmetric_solutions(&int(1)).unwrap() {
            let y = s.x2 * s.x2;
            assert!((s.lambda + 3.0 / (y + 1.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn solve_recovers_all_roots() {
        let eps = crate::ratpoly::decimal_eps(14);
        let r = solve(&rat(1, 2), &eps).unwrap();
        assert_eq!(r.solutions.len(), 12);
        assert!(r.unrecovered.is_empty());
        for s in &r.solutions {
            assert!(s.residual < 1e-10, "{s:?}");
        }
        let r = solve(&rat(-3, 4), &eps).unwrap();
        assert_eq!(r.solutions.len(), 6);
    }

    #[test]
    fn solution_at_infinity_is_reported() {
        let r = solve(&rat(-1, 2), &crate::ratpoly::decimal_eps(12)).unwrap();
        assert_eq!(r.solutions.len(), 6);
        assert_eq!(r.unrecovered.len(), 1);
        assert!((r.unrecovered[0].x2_bracket[0] - 3.0).abs() < 1e-9);
    }

    #[test]
    fn reflected_solutions_still_certify() {
        let r = solve(&int(2), &crate::ratpoly::decimal_eps(14)).unwrap();
        for s in &r.solutions {
            let mut cfg = s.configuration();
            for p in &mut cfg.positions {
                p[0] = -p[0];
            }
            assert!(certify(&cfg, DEFAULT_TOL).unwrap().pass);
        }
    }

    #[test]
    fn crosscheck_accepts_eliminant_and_rejects_published_form() {
        let rows = elimination_crosscheck(&[int(0), rat(1, 2)]).unwrap();
        assert!(rows.iter().all(|r| r.proportional));
        assert_eq!(rows[1].real_roots, 12);
        let printed = elimination_crosscheck_against(&[rat(1, 2)], printed_asymmetric_polynomial);
        assert!(matches!(printed, Err(Error::Transcription(_))));
        assert!(matches!(
            elimination_crosscheck(&[rat(-1, 2)]),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn bifurcation_brackets() {
        let b = bifurcation_values(&int(-1), &int(0), 6).unwrap();
        assert_eq!(b.len(), 1);
        assert!(b[0].contains(&rat(-1, 2)) && b[0].certified);
        assert!(bifurcation_values(&int(-2), &int(-1), 5).unwrap().is_empty());
        assert!(bifurcation_values(&rat(1, 10), &rat(9, 10), 4).unwrap().is_empty());
    }
}
