//! Kite solutions for a given `G4` by scanning the traced curve.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::landmarks::{arc_of, landmarks, surd_line_roots, ArcId};
use super::trace::{project, trace_curve_from, CurveArc, StopReason, TraceOptions, TracedBranch};
use super::{
    barycenter_point, classify, cleared_f, cleared_f_polynomial, gamma4_of, gamma4_parts,
    gamma4_polynomials, KiteClass, KitePoint,
};
use crate::error::{Error, Result};
use crate::ratpoly::{
    decimal_eps, int, rat, resultant, to_f64, BivariatePolynomial, Rational, RootIsolator, Var,
};
use crate::vortexcore::{certify, EquilibriumCertificate};

/// The traced curve `f = 0` in the admissible chart.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Atlas {
    /// Options used for tracing.
    pub options: TraceOptions,
    /// Connected branches.
    pub branches: Vec<TracedBranch>,
}

impl Atlas {
    /// Traces every branch reachable from a fixed set of exact seeds.
    pub fn build(options: &TraceOptions) -> Result<Self> {
        let f = cleared_f_polynomial();
        let mut seeds = Vec::new();
        for (num, den) in [(-3, 1), (-1, 1), (1, 2), (1, 1), (2, 1), (3, 1)] {
            let k = rat(num, den);
            for iv in crate::ratpoly::real_roots(&f.specialize(Var::X, &k), &decimal_eps(20))? {
                seeds.push(KitePoint::new(to_f64(&k), iv.approx()));
            }
        }
        for (num, den) in [(-1, 10), (-1, 2), (-3, 2)] {
            let l = rat(num, den);
            for iv in crate::ratpoly::real_roots(&f.specialize(Var::Y, &l), &decimal_eps(20))? {
                seeds.push(KitePoint::new(iv.approx(), to_f64(&l)));
            }
        }
        let mut branches: Vec<TracedBranch> = Vec::new();
        for seed in seeds.into_iter().filter(|p| p.is_admissible()) {
            if branches.iter().any(|b| b.distance_to(&seed) < 1e-3) {
                continue;
            }
            branches.push(trace_curve_from(seed, options)?);
        }
        Ok(Self {
            options: *options,
            branches,
        })
    }

    /// All named arcs, in branch order.
    pub fn arcs(&self) -> Vec<CurveArc> {
        self.branches.iter().flat_map(|b| b.arcs()).collect()
    }
}

static ATLAS: OnceLock<Atlas> = OnceLock::new();

/// The curve traced once with the default options.
pub fn atlas() -> &'static Atlas {
    ATLAS.get_or_init(|| Atlas::build(&TraceOptions::default()).expect("default atlas traces"))
}

/// A certified kite relative equilibrium.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KiteSolution {
    /// Chart coordinates.
    pub point: KitePoint,
    /// Shape class.
    pub class: KiteClass,
    /// Arc of `f = 0` containing the point.
    pub arc: ArcId,
    /// Relative residual of `N - G4 D`.
    pub residual_gamma4: f64,
    /// Relative residual of the cleared `f`.
    pub residual_f: f64,
    /// Independent check on the embedded configuration.
    pub certificate: EquilibriumCertificate,
}

/// A root candidate that could not be located or certified.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnresolvedCandidate {
    /// Best location found.
    pub point: KitePoint,
    /// Arc the candidate belongs to.
    pub arc: ArcId,
    /// What went wrong.
    pub reason: String,
}

/// Kite solutions for one value of `G4`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KiteReport {
    /// The fourth strength.
    pub gamma4: f64,
    /// Certified solutions, sorted by `(k, l)`.
    pub solutions: Vec<KiteSolution>,
    /// Candidates left unresolved.
    pub unresolved: Vec<UnresolvedCandidate>,
}

impl KiteReport {
    /// Number of solutions of a class.
    pub fn count(&self, class: KiteClass) -> usize {
        self.solutions.iter().filter(|s| s.class == class).count()
    }

    /// Number of solutions on an arc.
    pub fn count_on(&self, arc: ArcId) -> usize {
        self.solutions.iter().filter(|s| s.arc == arc).count()
    }

    /// Number of concave solutions other than the barycenter.
    pub fn concave_non_barycentric(&self) -> usize {
        self.solutions
            .iter()
            .filter(|s| s.class.is_concave_non_barycentric())
            .count()
    }

    /// Number of convex solutions, counting the square.
    pub fn convex(&self) -> usize {
        self.count(KiteClass::Convex) + self.count(KiteClass::Square)
    }
}

fn phi(p: &KitePoint, gamma4: f64) -> (f64, [f64; 2], f64) {
    let ((n, ng), (d, dg)) = gamma4_parts(p.k, p.l);
    (
        n - gamma4 * d,
        [ng[0] - gamma4 * dg[0], ng[1] - gamma4 * dg[1]],
        n.abs() + (gamma4 * d).abs(),
    )
}

fn newton_polish(p: KitePoint, gamma4: f64) -> Option<KitePoint> {
    let mut q = p;
    for _ in 0..30 {
        let (a, ag, as_) = phi(&q, gamma4);
        let (b, bg, bs) = cleared_f(q.k, q.l);
        if a.abs() <= 1e-14 * as_.max(1e-300) && b.abs() <= 1e-14 * bs {
            return Some(q);
        }
        let det = ag[0] * bg[1] - ag[1] * bg[0];
        if det == 0.0 || !det.is_finite() {
            return Some(q);
        }
        let dk = (a * bg[1] - b * ag[1]) / det;
        let dl = (ag[0] * b - bg[0] * a) / det;
        let next = KitePoint::new(q.k - dk, q.l - dl);
        if next.distance(&q) < 1e-16 * (1.0 + q.k.abs() + q.l.abs()) {
            return Some(next);
        }
        q = next;
    }
    Some(q)
}

fn bisect(mut a: KitePoint, mut b: KitePoint, gamma4: f64) -> Result<KitePoint> {
    let mut sa = phi(&a, gamma4).0.signum();
    for _ in 0..80 {
        if a.distance(&b) < 1e-14 * (1.0 + a.k.abs() + a.l.abs()) {
            break;
        }
        let m = project(KitePoint::new((a.k + b.k) / 2.0, (a.l + b.l) / 2.0), 1e-14)?;
        let sm = phi(&m, gamma4).0.signum();
        if sm == 0.0 {
            return Ok(m);
        }
        if sm == sa {
            a = m;
            sa = sm;
        } else {
            b = m;
        }
    }
    Ok(KitePoint::new((a.k + b.k) / 2.0, (a.l + b.l) / 2.0))
}

fn make_solution(p: KitePoint, gamma4: f64, eps: f64) -> Result<KiteSolution> {
    let (a, _, sa) = phi(&p, gamma4);
    let (b, _, sb) = cleared_f(p.k, p.l);
    Ok(KiteSolution {
        point: p,
        class: classify(&p)?,
        arc: arc_of(&p),
        residual_gamma4: if sa > 0.0 { a.abs() / sa } else { 0.0 },
        residual_f: b.abs() / sb,
        certificate: certify(&p.embed(gamma4), eps)?,
    })
}

/// Solutions bounded away from the tracing rectangle may still exist past it when `G4` lies between
/// the value at the last sample and the asymptotic limit of the arc.
fn beyond_bounds(atlas: &Atlas, gamma4: f64) -> Vec<UnresolvedCandidate> {
    let mut out = Vec::new();
    for b in &atlas.branches {
        let ends = [
            (b.start, b.samples.first()),
            (b.end, b.samples.last()),
        ];
        for (reason, p) in ends {
            let Some(p) = p else { continue };
            if reason == StopReason::Closed {
                continue;
            }
            let arc = arc_of(p);
            let (Some(limit), Ok(at_end)) = (arc.asymptotic_gamma4(), gamma4_of(p.k, p.l)) else {
                continue;
            };
            let (lo, hi) = if limit < at_end { (limit, at_end) } else { (at_end, limit) };
            if gamma4 > lo && gamma4 < hi {
                out.push(UnresolvedCandidate {
                    point: *p,
                    arc,
                    reason: format!(
                        "a solution may lie beyond the tracing bound on {} (G4 {} at the last sample, limit {})",
                        arc.name(),
                        at_end,
                        limit
                    ),
                });
            }
        }
    }
    out
}

/// Solves the kite system for `G4 = gamma4` on the default atlas, certifying at tolerance `eps`.
///
/// The equilateral triangle with the fourth vortex at the barycenter solves the system for every
/// strength and is always reported.
pub fn solve_kite(gamma4: f64, eps: f64) -> Result<KiteReport> {
    solve_kite_on(atlas(), gamma4, eps)
}

/// [`solve_kite`] on a caller-supplied atlas.
pub fn solve_kite_on(atlas: &Atlas, gamma4: f64, eps: f64) -> Result<KiteReport> {
    if !gamma4.is_finite() {
        return Err(Error::Domain("G4 must be finite".into()));
    }
    if !(eps > 0.0) {
        return Err(Error::Domain("tolerance must be positive".into()));
    }
    if gamma4 == 0.0 {
        return solve_kite_gamma4_zero(eps);
    }
    let bary = barycenter_point();
    let mut points = vec![bary];
    let mut unresolved = Vec::new();
    for branch in &atlas.branches {
        for w in branch.samples.windows(2) {
            let (pa, pb) = (phi(&w[0], gamma4).0, phi(&w[1], gamma4).0);
            let root = if pa == 0.0 {
                Some(w[0])
            } else if pa.signum() != pb.signum() && pb != 0.0 {
                Some(bisect(w[0], w[1], gamma4)?)
            } else {
                None
            };
            let Some(root) = root else { continue };
            let Some(root) = newton_polish(root, gamma4) else { continue };
            if points.iter().any(|q| q.distance(&root) < 1e-8) {
                continue;
            }
            points.push(root);
        }
    }
    for cp in super::critical::cached_critical_points() {
        if (cp.gamma4 - gamma4).abs() <= 1e-12 * (1.0 + gamma4.abs())
            && !points.iter().any(|q| q.distance(&cp.point) < 1e-8)
        {
            points.push(cp.point);
        }
    }
    let mut solutions = Vec::new();
    for p in points {
        if p == bary {
            solutions.push(make_solution(p, gamma4, eps)?);
            continue;
        }
        let ok_gamma = gamma4_of(p.k, p.l)
            .map(|g| (g - gamma4).abs() <= 1e-9 * (1.0 + gamma4.abs()))
            .unwrap_or(false);
        let sol = p
            .is_admissible()
            .then(|| make_solution(p, gamma4, eps))
            .transpose()?;
        match sol {
            Some(s) if ok_gamma && s.certificate.pass => solutions.push(s),
            Some(s) => unresolved.push(UnresolvedCandidate {
                point: p,
                arc: s.arc,
                reason: format!(
                    "certification failed (motion residual {:e})",
                    s.certificate.residual_motion
                ),
            }),
            None => unresolved.push(UnresolvedCandidate {
                point: p,
                arc: arc_of(&p),
                reason: "root left the admissible chart".into(),
            }),
        }
    }
    unresolved.extend(beyond_bounds(atlas, gamma4));
    solutions.sort_by(|a, b| {
        (a.point.k, a.point.l)
            .partial_cmp(&(b.point.k, b.point.l))
            .expect("finite coordinates")
    });
    Ok(KiteReport {
        gamma4,
        solutions,
        unresolved,
    })
}

/// `G4 = 0` solved directly: the three unit vortices form an equilateral triangle (`k = +-sqrt 3`,
/// `lambda = 3/4`) and the passive fourth vortex must co-rotate, which gives
/// `(3l + k)(1 + l^2)(k + l) - 4 (3 l^2 + 2 k l + 1) = 0`.
pub fn solve_kite_gamma4_zero(eps: f64) -> Result<KiteReport> {
    let k = BivariatePolynomial::var(Var::X);
    let l = BivariatePolynomial::var(Var::Y);
    let c = |v: i64| BivariatePolynomial::constant(int(v));
    let lhs = &(&(&(&c(3) * &l) + &k) * &(&c(1) + &(&l * &l))) * &(&k + &l);
    let rhs = &c(4) * &(&(&(&c(3) * &(&l * &l)) + &(&(&c(2) * &k) * &l)) + &c(1));
    let passive = &lhs - &rhs;
    let s3 = 3f64.sqrt();
    let mut solutions = Vec::new();
    for s in [1, -1] {
        for lv in surd_line_roots(&passive, 3, s)? {
            let p = KitePoint::new(s as f64 * s3, to_f64(&lv));
            if p.is_admissible() {
                solutions.push(make_solution(p, 0.0, eps)?);
            }
        }
    }
    solutions.sort_by(|a, b| {
        (a.point.k, a.point.l)
            .partial_cmp(&(b.point.k, b.point.l))
            .expect("finite coordinates")
    });
    Ok(KiteReport {
        gamma4: 0.0,
        solutions,
        unresolved: Vec::new(),
    })
}

/// Non-barycentric admissible solutions of `F = 0`, `N - G4 D = 0` by resultant elimination of `k`.
///
/// This route shares nothing with the curve tracer and serves as its cross-check.
pub fn solve_by_elimination(gamma4: &Rational) -> Result<Vec<KitePoint>> {
    let f = cleared_f_polynomial();
    let (n, d) = gamma4_polynomials();
    let g = &n - &d.scale(gamma4);
    let res = resultant(&f, &g, Var::X)?;
    if res.is_zero() {
        return Err(Error::Degenerate("F and N - G4 D share a component".into()));
    }
    let gf = to_f64(gamma4);
    let bary = barycenter_point();
    let mut out: Vec<KitePoint> = Vec::new();
    for iv in crate::ratpoly::real_roots(&res, &decimal_eps(30))? {
        let lq = iv.midpoint();
        let fk = f.specialize(Var::Y, &lq);
        let Ok(iso) = RootIsolator::new(&fk) else {
            continue;
        };
        for kiv in iso.isolate() {
            let kv = iso.refine(&kiv, &decimal_eps(30))?.approx();
            let p = KitePoint::new(kv, iv.approx());
            let (a, _, sa) = phi(&p, gf);
            if !p.is_admissible() || a.abs() > 1e-8 * sa.max(1e-300) || p.distance(&bary) < 1e-6 {
                continue;
            }
            if !out.iter().any(|q| q.distance(&p) < 1e-8) {
                out.push(p);
            }
        }
    }
    out.sort_by(|a, b| (a.k, a.l).partial_cmp(&(b.k, b.l)).expect("finite"));
    Ok(out)
}

/// Limits of `G4` at the two ends of a named arc.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArcLimit {
    /// The arc.
    pub arc: ArcId,
    /// Name of the first endpoint.
    pub start: String,
    /// Name of the second endpoint.
    pub end: String,
    /// `G4` approached at the first endpoint (infinite at a pole).
    pub gamma4_start: f64,
    /// `G4` approached at the second endpoint.
    pub gamma4_end: f64,
}

fn limit_at(name: &str, arc: ArcId, samples: &[KitePoint]) -> f64 {
    if name.starts_with("asymptote") {
        return arc.asymptotic_gamma4().unwrap_or(f64::NAN);
    }
    let lm = landmarks()
        .into_iter()
        .find(|p| p.name == name)
        .expect("named landmark");
    if name == "P2" || name == "P7" {
        return f64::INFINITY;
    }
    if name == "P6" {
        return 1.0;
    }
    // Step a short distance from the landmark toward the arc interior and evaluate.
    let toward = samples
        .iter()
        .min_by(|a, b| {
            let da = (a.distance(&lm.point) - 1e-2).abs();
            let db = (b.distance(&lm.point) - 1e-2).abs();
            da.partial_cmp(&db).expect("finite")
        })
        .copied()
        .unwrap_or(lm.point);
    let d = toward.distance(&lm.point).max(1e-300);
    let q = KitePoint::new(
        lm.point.k + 1e-9 * (toward.k - lm.point.k) / d,
        lm.point.l + 1e-9 * (toward.l - lm.point.l) / d,
    );
    let q = project(q, 1e-14).unwrap_or(q);
    gamma4_of(q.k, q.l).unwrap_or(f64::NAN)
}

/// `G4` at the ends of every named arc of the default atlas.
///
/// At a pole the sign of the infinite limit is taken from the samples next to it.
pub fn arc_endpoint_limits() -> Vec<ArcLimit> {
    let mut out = Vec::new();
    for arc in atlas().arcs() {
        let (s, e) = arc.endpoints();
        let mut gs = limit_at(s, arc.id, &arc.samples);
        let mut ge = limit_at(e, arc.id, &arc.samples);
        let sign_near = |name: &str| {
            let lm = landmarks().into_iter().find(|p| p.name == name)?;
            let nearest = arc.samples.iter().min_by(|a, b| {
                a.distance(&lm.point)
                    .partial_cmp(&b.distance(&lm.point))
                    .expect("finite")
            })?;
            gamma4_of(nearest.k, nearest.l).ok().map(f64::signum)
        };
        if gs.is_infinite() {
            gs *= sign_near(s).unwrap_or(1.0);
        }
        if ge.is_infinite() {
            ge *= sign_near(e).unwrap_or(1.0);
        }
        out.push(ArcLimit {
            arc: arc.id,
            start: s.into(),
            end: e.into(),
            gamma4_start: gs,
            gamma4_end: ge,
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn has(r: &KiteReport, k: f64, l: f64) -> bool {
        r.solutions.iter().any(|s| s.point.distance(&KitePoint::new(k, l)) < 1e-5)
    }

    #[test]
    fn atlas_has_two_branches() {
        let a = atlas();
        assert_eq!(a.branches.len(), 2);
        for b in &a.branches {
            assert!(b.max_residual() < 1e-11);
        }
    }

    #[test]
    fn square_and_equilateral_at_one() {
        let r = solve_kite(1.0, 1e-10).unwrap();
        assert_eq!(r.solutions.len(), 3);
        assert!(has(&r, 1.0, 1.0));
        assert!(has(&r, -1.0 / 3f64.sqrt(), 3f64.sqrt()));
        assert!(r.solutions.iter().all(|s| s.certificate.pass));
    }

    #[test]
    fn one_half() {
        let r = solve_kite(0.5, 1e-10).unwrap();
        assert_eq!(r.solutions.len(), 5);
        assert!(has(&r, -1.232292, 2.348158));
        assert!(has(&r, 1.622536, -0.431669));
        assert_eq!(r.count_on(ArcId::Gamma3), 2);
        assert!(r.unresolved.is_empty());
    }

    #[test]
    fn zero_gives_four_points() {
        let r = solve_kite(0.0, 1e-10).unwrap();
        assert_eq!(r.solutions.len(), 4);
        assert!(has(&r, -3f64.sqrt(), 2.747477));
        assert!(has(&r, 3f64.sqrt(), -0.176327));
        assert!(has(&r, 3f64.sqrt(), 1.191754));
    }

    #[test]
    fn elimination_agrees_with_tracing() {
        for (num, den) in [(1, 2), (2, 1), (-1, 4), (-4, 1), (9, 10)] {
            let g = rat(num, den);
            let traced = solve_kite(to_f64(&g), 1e-10).unwrap();
            let elim = solve_by_elimination(&g).unwrap();
            assert_eq!(traced.solutions.len() - 1, elim.len(), "G4 = {num}/{den}");
        }
    }

    #[test]
    fn asymptotic_limits() {
        let s3 = 3f64.sqrt();
        let far = [
            (ArcId::UpperEast, KitePoint::new(1e4, s3)),
            (ArcId::BeyondP7, KitePoint::new(1e4, -s3)),
            (ArcId::UpperWest, KitePoint::new(-1e3, 1e3 + 2e-3)),
            (ArcId::LowerTail, KitePoint::new(1e2, -2.0 / 3e6)),
        ];
        for (arc, p) in far {
            let q = project(p, 1e-14).unwrap();
            assert_eq!(arc_of(&q), arc);
            let g = gamma4_of(q.k, q.l).unwrap();
            let limit = arc.asymptotic_gamma4().unwrap();
            assert!((g - limit).abs() < 1e-2, "{arc:?}: {g}");
        }
    }

    #[test]
    fn probe_table() {
        let table: [(f64, &[(f64, f64)]); 6] = [
            (2.0, &[(0.73656, 0.966001), (1.903927, -0.719711)]),
            (-0.25, &[(-2.060734, 2.992794), (0.050642, 1.171966), (2.058171, 1.27202), (2.370983, -0.054869)]),
            (-0.5, &[(-2.532207, 3.343698), (0.092052, 1.145052), (2.476895, 1.357155)]),
            (-2.0, &[(0.231928, 1.067781)]),
            (-4.0, &[(0.302786, 1.036979), (3.368389, -1.300606)]),
            (0.9, &[(-0.823131, 1.975016), (-0.369065, 1.525996), (1.04394, 1.009171), (1.710025, -0.554511)]),
        ];
        for (g, pts) in table {
            let r = solve_kite(g, 1e-10).unwrap();
            assert_eq!(r.solutions.len(), pts.len() + 1, "G4 = {g}");
            for &(k, l) in pts {
                assert!(has(&r, k, l), "G4 = {g}: ({k}, {l})");
            }
        }
    }

    #[test]
    fn endpoint_limits_cover_every_arc() {
        let limits = arc_endpoint_limits();
        for id in ArcId::ALL {
            assert!(limits.iter().any(|a| a.arc == id), "{id:?}");
        }
        let g3 = limits.iter().find(|a| a.arc == ArcId::Gamma3).unwrap();
        assert!(g3.gamma4_start.abs() < 1e-6 && g3.gamma4_end.abs() < 1e-6);
    }
}
