//! Predictor-corrector continuation along `f(k, l) = 0`.

use serde::{Deserialize, Serialize};

use super::landmarks::{arc_of, ArcId};
use super::{cleared_f, KitePoint};
use crate::error::{Error, Result};

/// Rectangle limiting the traced region.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    /// Smallest admissible `k`.
    pub k_min: f64,
    /// Largest admissible `k`.
    pub k_max: f64,
    /// Smallest admissible `l`.
    pub l_min: f64,
    /// Largest admissible `l`.
    pub l_max: f64,
}

impl Bounds {
    /// The square `[-b, b]^2`.
    pub fn symmetric(b: f64) -> Self {
        Self {
            k_min: -b,
            k_max: b,
            l_min: -b,
            l_max: b,
        }
    }

    /// True when the point lies inside the rectangle.
    pub fn contains(&self, p: &KitePoint) -> bool {
        (self.k_min..=self.k_max).contains(&p.k) && (self.l_min..=self.l_max).contains(&p.l)
    }
}

impl Default for Bounds {
    fn default() -> Self {
        Self::symmetric(1e3)
    }
}

/// Continuation parameters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceOptions {
    /// Initial arc-length step.
    pub step: f64,
    /// Smallest step before the arc is truncated.
    pub min_step: f64,
    /// Relative residual accepted by the corrector.
    pub tolerance: f64,
    /// Region to trace in.
    pub bounds: Bounds,
    /// Largest step as a fraction of `max(1, |k|, |l|)`.
    pub max_step_ratio: f64,
    /// Hard cap on accepted steps per direction.
    pub max_steps: usize,
}

impl Default for TraceOptions {
    fn default() -> Self {
        Self {
            step: 1e-2,
            min_step: 1e-6,
            tolerance: 1e-12,
            bounds: Bounds::default(),
            max_step_ratio: 0.02,
            max_steps: 200_000,
        }
    }
}

/// Why tracing stopped in one direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StopReason {
    /// Left the bounding rectangle.
    Bounds,
    /// Reached `k + l = 0`.
    ChartBoundary,
    /// Returned to the seed.
    Closed,
    /// The corrector failed even at the minimum step.
    StepUnderflow,
    /// Step budget exhausted.
    MaxSteps,
}

/// One connected piece of `f = 0`, ordered along the curve.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TracedBranch {
    /// Samples on the curve.
    pub samples: Vec<KitePoint>,
    /// Why tracing stopped before the first sample.
    pub start: StopReason,
    /// Why tracing stopped after the last sample.
    pub end: StopReason,
}

impl TracedBranch {
    /// Distance from `p` to the sampled polyline.
    pub fn distance_to(&self, p: &KitePoint) -> f64 {
        let mut best = f64::INFINITY;
        for w in self.samples.windows(2) {
            best = best.min(segment_distance(p, &w[0], &w[1]));
        }
        if self.samples.len() == 1 {
            best = self.samples[0].distance(p);
        }
        best
    }

    /// Largest relative residual of the cleared `f` over the samples.
    pub fn max_residual(&self) -> f64 {
        self.samples
            .iter()
            .map(relative_residual)
            .fold(0.0, f64::max)
    }

    /// Splits the branch into maximal runs lying on one named arc.
    pub fn arcs(&self) -> Vec<CurveArc> {
        let mut out: Vec<CurveArc> = Vec::new();
        for p in &self.samples {
            let id = arc_of(p);
            match out.last_mut() {
                Some(a) if a.id == id => a.samples.push(*p),
                _ => out.push(CurveArc {
                    id,
                    samples: vec![*p],
                }),
            }
        }
        out
    }
}

/// A run of samples on one named arc.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveArc {
    /// Arc identifier.
    pub id: ArcId,
    /// Ordered samples on `f = 0`.
    pub samples: Vec<KitePoint>,
}

impl CurveArc {
    /// Names of the landmarks or asymptotes bounding this arc.
    pub fn endpoints(&self) -> (&'static str, &'static str) {
        self.id.endpoints()
    }
}

fn segment_distance(p: &KitePoint, a: &KitePoint, b: &KitePoint) -> f64 {
    let (dx, dy) = (b.k - a.k, b.l - a.l);
    let len2 = dx * dx + dy * dy;
    if len2 == 0.0 {
        return p.distance(a);
    }
    let t = (((p.k - a.k) * dx + (p.l - a.l) * dy) / len2).clamp(0.0, 1.0);
    p.distance(&KitePoint::new(a.k + t * dx, a.l + t * dy))
}

/// `|F| / scale` at a point.
pub fn relative_residual(p: &KitePoint) -> f64 {
    let (v, _, s) = cleared_f(p.k, p.l);
    v.abs() / s.max(f64::MIN_POSITIVE)
}

/// Minimum-norm Newton projection onto `F = 0`.
pub fn project(p: KitePoint, tol: f64) -> Result<KitePoint> {
    let mut q = p;
    for _ in 0..50 {
        let (v, g, s) = cleared_f(q.k, q.l);
        if v.abs() <= tol * s {
            return Ok(q);
        }
        let n2 = g[0] * g[0] + g[1] * g[1];
        if n2 == 0.0 || !n2.is_finite() {
            break;
        }
        q = KitePoint::new(q.k - v * g[0] / n2, q.l - v * g[1] / n2);
    }
    Err(Error::Inconsistency(format!(
        "projection onto f = 0 from ({}, {}) did not converge",
        p.k, p.l
    )))
}

fn corrector(p: KitePoint, tol: f64) -> Option<(KitePoint, usize)> {
    let mut q = p;
    for it in 0..8 {
        let (v, g, s) = cleared_f(q.k, q.l);
        if v.abs() <= tol * s {
            return Some((q, it));
        }
        let n2 = g[0] * g[0] + g[1] * g[1];
        if n2 == 0.0 || !n2.is_finite() {
            return None;
        }
        q = KitePoint::new(q.k - v * g[0] / n2, q.l - v * g[1] / n2);
    }
    None
}

/// Unit tangent `(-F_l, F_k) / |grad F|`.
pub fn tangent(p: &KitePoint) -> Option<[f64; 2]> {
    let (_, g, _) = cleared_f(p.k, p.l);
    let n = g[0].hypot(g[1]);
    (n > 0.0 && n.is_finite()).then(|| [-g[1] / n, g[0] / n])
}

fn trace_direction(seed: KitePoint, sign: f64, o: &TraceOptions) -> (Vec<KitePoint>, StopReason) {
    let mut out = Vec::new();
    let mut p = seed;
    let Some(t0) = tangent(&p) else {
        return (out, StopReason::StepUnderflow);
    };
    let mut t = [t0[0] * sign, t0[1] * sign];
    let mut h = o.step;
    let mut travelled = 0.0;
    for _ in 0..o.max_steps {
        let hmax = o.max_step_ratio * 1f64.max(p.k.abs()).max(p.l.abs());
        let predicted = KitePoint::new(p.k + h * t[0], p.l + h * t[1]);
        let accepted = corrector(predicted, o.tolerance).and_then(|(q, it)| {
            let tq = tangent(&q)?;
            let dot = tq[0] * t[0] + tq[1] * t[1];
            let dist = q.distance(&p);
            (dot.abs() > 0.95 && dist < 2.0 * h && dist > 0.25 * h)
                .then(|| (q, if dot < 0.0 { [-tq[0], -tq[1]] } else { tq }, it))
        });
        let Some((q, tq, it)) = accepted else {
            h /= 2.0;
            if h < o.min_step {
                return (out, StopReason::StepUnderflow);
            }
            continue;
        };
        if q.k + q.l <= 0.0 {
            return (out, StopReason::ChartBoundary);
        }
        if !o.bounds.contains(&q) {
            return (out, StopReason::Bounds);
        }
        travelled += q.distance(&p);
        if travelled > 10.0 * h && q.distance(&seed) < h {
            return (out, StopReason::Closed);
        }
        out.push(q);
        p = q;
        t = tq;
        if it <= 3 {
            h = (h * 1.5).min(hmax.max(o.step));
        }
    }
    (out, StopReason::MaxSteps)
}

/// Traces the branch of `f = 0` through `seed` in both directions.
///
/// The seed must lie on the curve to relative residual `1e-6`; it is projected before tracing.
pub fn trace_curve_from(seed: KitePoint, o: &TraceOptions) -> Result<TracedBranch> {
    if !(o.step > 0.0 && o.min_step > 0.0 && o.tolerance > 0.0) {
        return Err(Error::Domain("step sizes and tolerance must be positive".into()));
    }
    if !seed.is_admissible() {
        return Err(Error::Domain("seed must satisfy k + l > 0".into()));
    }
    if relative_residual(&seed) > 1e-6 {
        return Err(Error::Precondition(format!(
            "seed ({}, {}) is not on f = 0",
            seed.k, seed.l
        )));
    }
    let seed = project(seed, o.tolerance)?;
    let (mut back, start) = trace_direction(seed, -1.0, o);
    let (fwd, end) = trace_direction(seed, 1.0, o);
    back.reverse();
    back.push(seed);
    back.extend(fwd);
    if start == StopReason::Closed || end == StopReason::Closed {
        // A closed loop was covered by the first direction alone.
        let (fwd, _) = trace_direction(seed, 1.0, o);
        let mut samples = vec![seed];
        samples.extend(fwd);
        return Ok(TracedBranch {
            samples,
            start: StopReason::Closed,
            end: StopReason::Closed,
        });
    }
    Ok(TracedBranch {
        samples: back,
        start,
        end,
    })
}

/// [`trace_curve_from`] with the default options, a custom initial step and bounds.
pub fn trace_curve(seed: KitePoint, step: f64, bounds: Bounds) -> Result<TracedBranch> {
    trace_curve_from(
        seed,
        &TraceOptions {
            step,
            bounds,
            ..TraceOptions::default()
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn upper_branch_from_the_square() {
        let b = trace_curve(KitePoint::new(1.0, 1.0), 1e-2, Bounds::symmetric(20.0)).unwrap();
        assert!(b.max_residual() < 1e-11);
        assert_eq!(b.start, StopReason::Bounds);
        assert_eq!(b.end, StopReason::Bounds);
        assert!(b.samples.iter().all(|p| p.l > 0.0));
        // Passes near P2 = (sqrt 2 - 1, 1) and P4 = (0, 1.2072).
        assert!(b.distance_to(&KitePoint::new(2f64.sqrt() - 1.0, 1.0)) < 1e-3);
        assert!(b.distance_to(&KitePoint::new(0.0, 1.20724)) < 1e-3);
    }

    #[test]
    fn lower_branch_through_p5() {
        let seed = project(KitePoint::new(3f64.sqrt(), -0.17633), 1e-13).unwrap();
        let b = trace_curve(seed, 1e-2, Bounds::symmetric(50.0)).unwrap();
        assert!(b.samples.iter().all(|p| p.k > 0.0 && p.l < 0.0));
        assert!(b.distance_to(&super::super::barycenter_point()) < 1e-3);
        assert!(b.distance_to(&KitePoint::new(1.0 + 2f64.sqrt(), -1.0)) < 1e-3);
    }

    #[test]
    fn off_curve_seed_is_rejected() {
        let r = trace_curve(KitePoint::new(1.0, 2.0), 1e-2, Bounds::default());
        assert!(matches!(r, Err(Error::Precondition(_))));
    }
}
