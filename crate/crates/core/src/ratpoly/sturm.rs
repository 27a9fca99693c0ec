//! Sturm chains, exact real-root counting and certified root isolation.

use num_traits::{One, Signed, Zero};

use super::poly::RationalPolynomial;
use super::rational::{int, midpoint, power_of_two_above, rat, to_f64, ExtRational, Rational};
use crate::error::{Error, Result};

/// Canonical Sturm chain `p, p', -rem(p0, p1), ...` down to a constant.
pub fn sturm_sequence(p: &RationalPolynomial) -> Result<Vec<RationalPolynomial>> {
    if p.is_zero() {
        return Err(Error::Domain("Sturm chain of the zero polynomial".into()));
    }
    let mut chain = vec![p.clone()];
    let d = p.derivative();
    if d.is_zero() {
        return Ok(chain);
    }
    chain.push(d);
    loop {
        let n = chain.len();
        let r = chain[n - 2].rem(&chain[n - 1])?;
        if r.is_zero() {
            break;
        }
        chain.push(-r);
    }
    Ok(chain)
}

/// Sturm chain with every member rescaled by a positive constant to keep coefficients small.
///
/// Positive rescaling preserves every sign, hence every variation count.
#[derive(Clone, Debug)]
pub struct SturmChain {
    polys: Vec<RationalPolynomial>,
}

impl SturmChain {
    /// Builds the normalized chain of a nonzero polynomial.
    pub fn new(p: &RationalPolynomial) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::Domain("Sturm chain of the zero polynomial".into()));
        }
        let mut polys = vec![p.primitive_positive()];
        let d = p.derivative().primitive_positive();
        if !d.is_zero() {
            polys.push(d);
            loop {
                let n = polys.len();
                let r = polys[n - 2].rem(&polys[n - 1])?;
                if r.is_zero() {
                    break;
                }
                polys.push((-r).primitive_positive());
            }
        }
        Ok(Self { polys })
    }

    /// Members of the chain.
    pub fn polys(&self) -> &[RationalPolynomial] {
        &self.polys
    }

    /// Number of sign changes of the chain at `x`, zeros skipped.
    pub fn variations(&self, x: &ExtRational) -> usize {
        sign_variations(&self.polys, x)
    }

    /// Distinct real roots in `(lo, hi]`.
    pub fn count(&self, lo: &ExtRational, hi: &ExtRational) -> usize {
        self.variations(lo).saturating_sub(self.variations(hi))
    }
}

/// Number of sign changes of a polynomial sequence at `x`, zeros skipped.
pub fn sign_variations(chain: &[RationalPolynomial], x: &ExtRational) -> usize {
    let mut last = 0;
    let mut v = 0;
    for p in chain {
        let s = p.sign_at(x);
        if s != 0 {
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
    }
    v
}

/// Number of distinct real roots of `p` in `(lo, hi]`; endpoints may be infinite.
pub fn count_real_roots(p: &RationalPolynomial, lo: &ExtRational, hi: &ExtRational) -> Result<usize> {
    if lo >= hi {
        return Err(Error::Domain(format!("empty interval ({lo}, {hi}]")));
    }
    Ok(SturmChain::new(p)?.count(lo, hi))
}

/// Number of distinct real roots of `p` on the whole line.
pub fn count_all_real_roots(p: &RationalPolynomial) -> Result<usize> {
    count_real_roots(p, &ExtRational::NegInf, &ExtRational::PosInf)
}

/// Interval `(lo, hi]` isolating one real root of the square-free part of a polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolatingInterval {
    /// Left endpoint (never a root).
    pub lo: Rational,
    /// Right endpoint (never a root).
    pub hi: Rational,
    /// Multiplicity of the isolated root in the original polynomial.
    pub multiplicity_hint: usize,
}

impl IsolatingInterval {
    /// Midpoint of the interval.
    pub fn midpoint(&self) -> Rational {
        midpoint(&self.lo, &self.hi)
    }

    /// Midpoint rounded to a double.
    pub fn approx(&self) -> f64 {
        to_f64(&self.midpoint())
    }

    /// Width `hi - lo`.
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    /// True when the two closed intervals intersect.
    pub fn overlaps(&self, other: &Self) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// True when the interval contains the rational `x` in its closure.
    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }
}

/// Precomputed square-free part, Sturm chain and gcd tower of a polynomial.
///
/// Build once and reuse for isolation and refinement of many roots.
#[derive(Clone, Debug)]
pub struct RootIsolator {
    square_free: RationalPolynomial,
    chain: SturmChain,
    tower: Vec<SturmChain>,
}

impl RootIsolator {
    /// Prepares isolation for a nonzero polynomial.
    pub fn new(p: &RationalPolynomial) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::Domain("root isolation of the zero polynomial".into()));
        }
        let square_free = p.square_free_part();
        let chain = SturmChain::new(&square_free)?;
        let mut tower = Vec::new();
        let mut g = p.gcd(&p.derivative());
        while g.degree().unwrap_or(0) > 0 {
            tower.push(SturmChain::new(&g)?);
            g = g.gcd(&g.derivative());
        }
        Ok(Self {
            square_free,
            chain,
            tower,
        })
    }

    /// Monic square-free part of the target polynomial.
    pub fn square_free(&self) -> &RationalPolynomial {
        &self.square_free
    }

    /// Number of distinct real roots.
    pub fn root_count(&self) -> usize {
        self.chain.count(&ExtRational::NegInf, &ExtRational::PosInf)
    }

    /// Number of distinct real roots in `(lo, hi]`.
    pub fn count_in(&self, lo: &ExtRational, hi: &ExtRational) -> usize {
        self.chain.count(lo, hi)
    }

    fn is_root(&self, x: &Rational) -> bool {
        self.square_free.eval(x).is_zero()
    }

    /// A split point strictly inside `(a, b)` that is not a root.
    fn split_point(&self, a: &Rational, b: &Rational) -> Rational {
        let m = midpoint(a, b);
        if !self.is_root(&m) {
            return m;
        }
        let w = b - a;
        let mut k = 3i64;
        loop {
            let c = a + &w * rat(k - 1, 2 * k - 1);
            if !self.is_root(&c) {
                return c;
            }
            k += 1;
        }
    }

    fn multiplicity(&self, lo: &Rational, hi: &Rational) -> usize {
        let lo = ExtRational::Finite(lo.clone());
        let hi = ExtRational::Finite(hi.clone());
        1 + self.tower.iter().filter(|c| c.count(&lo, &hi) > 0).count()
    }

    /// Disjoint isolating intervals for all distinct real roots, in increasing order.
    ///
    /// The search starts from a power of two above the Cauchy bound, and every split point is
    /// chosen off the root set, so no interval endpoint is ever a root.
    pub fn isolate(&self) -> Vec<IsolatingInterval> {
        if self.square_free.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let b0 = power_of_two_above(&self.square_free.cauchy_bound());
        let mut out = Vec::new();
        let mut stack = vec![(-b0.clone(), b0)];
        while let Some((a, b)) = stack.pop() {
            let ea = ExtRational::Finite(a.clone());
            let eb = ExtRational::Finite(b.clone());
            let n = self.chain.count(&ea, &eb);
            if n == 0 {
                continue;
            }
            if n == 1 {
                let multiplicity_hint = self.multiplicity(&a, &b);
                out.push(IsolatingInterval {
                    lo: a,
                    hi: b,
                    multiplicity_hint,
                });
                continue;
            }
            let m = self.split_point(&a, &b);
            stack.push((m.clone(), b));
            stack.push((a, m));
        }
        out.sort_by(|x, y| x.lo.cmp(&y.lo));
        out
    }

    /// Shrinks an isolating interval below width `eps` by exact bisection.
    pub fn refine(&self, iv: &IsolatingInterval, eps: &Rational) -> Result<IsolatingInterval> {
        if !eps.is_positive() {
            return Err(Error::Domain("refinement width must be positive".into()));
        }
        let f = &self.square_free;
        let mut lo = iv.lo.clone();
        let mut hi = iv.hi.clone();
        let mut slo = f.eval(&lo).signum();
        let shi = f.eval(&hi).signum();
        if slo.is_zero() || shi.is_zero() || slo == shi {
            return Err(Error::Inconsistency(format!(
                "interval [{lo}, {hi}] does not bracket a sign change"
            )));
        }
        while &hi - &lo >= *eps {
            let m = midpoint(&lo, &hi);
            let sm = f.eval(&m).signum();
            if sm.is_zero() {
                let mut d = eps / int(4);
                loop {
                    let a = &m - &d;
                    let b = &m + &d;
                    if a > lo && b < hi && !self.is_root(&a) && !self.is_root(&b) {
                        lo = a;
                        hi = b;
                        break;
                    }
                    d /= int(2);
                }
                break;
            }
            if sm == slo {
                lo = m;
                slo = sm;
            } else {
                hi = m;
            }
        }
        Ok(IsolatingInterval {
            lo,
            hi,
            multiplicity_hint: iv.multiplicity_hint,
        })
    }
}

/// Isolates every distinct real root of `p`.
pub fn isolate_roots(p: &RationalPolynomial) -> Result<Vec<IsolatingInterval>> {
    Ok(RootIsolator::new(p)?.isolate())
}

/// Refines an isolating interval of a root of `p` to width below `eps`.
pub fn refine_root(
    p: &RationalPolynomial,
    iv: &IsolatingInterval,
    eps: &Rational,
) -> Result<IsolatingInterval> {
    RootIsolator::new(p)?.refine(iv, eps)
}

/// Isolates and refines all real roots of `p`, returning the refined intervals.
pub fn real_roots(p: &RationalPolynomial, eps: &Rational) -> Result<Vec<IsolatingInterval>> {
    let iso = RootIsolator::new(p)?;
    iso.isolate().iter().map(|iv| iso.refine(iv, eps)).collect()
}

/// Descartes bound on the number of positive roots counted with multiplicity.
pub fn descartes_bound(p: &RationalPolynomial) -> usize {
    p.coefficient_sign_variations()
}

/// `10^-digits` as an exact rational.
pub fn decimal_eps(digits: u32) -> Rational {
    Rational::new(
        num_bigint::BigInt::one(),
        num_traits::pow(num_bigint::BigInt::from(10), digits as usize),
    )
}
