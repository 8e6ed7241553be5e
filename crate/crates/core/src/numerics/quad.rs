//! Adaptive Gauss-Legendre quadrature for integrands with algebraic or
//! logarithmic endpoint singularities, and exponentially decaying tails.
//!
//! Each half of `[lo, hi]` is mapped to `[0, 1]` by `x = lo + (mid - lo) t^q`
//! (mirrored at `hi`), with `q` picked from the declared endpoint behaviour so
//! that the transformed integrand is smooth or at worst mildly singular. The
//! transformed pieces are refined globally: the interval with the largest
//! error estimate (difference between one panel and its two halves) is split
//! until the summed estimate meets the tolerance.

use alloc::collections::BinaryHeap;
use core::cmp::Ordering;

use super::gauss::GaussRule;
use super::real::Real;
use super::PrecisionContext;
use crate::error::{Error, Result};

/// How the integrand behaves at an endpoint.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Endpoint {
    Smooth,
    /// `|x - end|^p` with `p > -1`.
    Power(f64),
    /// `ln|x - end|` times something smooth.
    Log,
}

impl Endpoint {
    fn exponent(&self) -> u32 {
        match *self {
            Endpoint::Smooth => 1,
            Endpoint::Log => 3,
            Endpoint::Power(p) => {
                let twice = 2.0 * p;
                if p == libm::floor(p) && p >= 0.0 {
                    1
                } else if twice == libm::floor(twice) {
                    2
                } else {
                    (libm::ceil(2.0 / (p + 1.0)) as u32).max(1)
                }
            }
        }
    }
}

/// Bound `|f(x)| <= amplitude * exp(-rate * (x - from))` for `x >= from`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Envelope {
    pub amplitude: f64,
    pub rate: f64,
    pub from: f64,
}

impl Envelope {
    fn tail(&self, t: f64) -> f64 {
        self.amplitude / self.rate * libm::exp(-self.rate * (t - self.from))
    }
}

#[derive(Clone, Debug)]
pub enum Upper<R> {
    Finite(R),
    Infinite(Envelope),
}

#[derive(Clone, Debug)]
pub struct Quadrature<R> {
    pub value: R,
    /// Estimated absolute error, including any truncated tail.
    pub error: f64,
    /// Estimate of `∫|f|`, the scale against which the tolerance is applied.
    pub abs_integral: f64,
}

/// Integrates `f` over `[lo, hi]` to relative tolerance `ctx.quad_tol`,
/// measured against `max(|∫f|, ∫|f|)`.
pub fn integrate_singular<R, F>(
    mut f: F,
    lo: &R,
    hi: Upper<R>,
    ends: (Endpoint, Endpoint),
    ctx: &PrecisionContext,
) -> Result<Quadrature<R>>
where
    R: Real,
    F: FnMut(&R) -> R,
{
    let rule = GaussRule::for_bits(ctx.bits.max(lo.bits()));
    match hi {
        Upper::Finite(hi) => finite(&mut f, lo, &hi, ends, ctx, &rule),
        Upper::Infinite(env) => {
            if !(env.rate > 0.0 && env.amplitude >= 0.0) {
                return Err(Error::Domain(alloc::format!("bad tail envelope {env:?}")));
            }
            let tol = ctx.effective_tol();
            let lo_f = lo.to_f64();
            let mut t = lo_f.max(env.from) + 1.0 / env.rate;
            let first = finite(&mut f, lo, &lo.lit(t), (ends.0, Endpoint::Smooth), ctx, &rule)?;
            let mut value = first.value;
            let mut error = first.error;
            let mut abs = first.abs_integral;
            for _ in 0..64 {
                let scale = value.to_f64().abs().max(abs);
                let target = 0.1 * tol * scale;
                if env.tail(t) <= target || scale == 0.0 && env.amplitude == 0.0 {
                    break;
                }
                let want = if scale > 0.0 {
                    env.from + libm::log(env.amplitude / (env.rate * target)) / env.rate
                } else {
                    t + 1.0 / env.rate
                };
                let next = want.max(t + 1.0 / env.rate);
                let piece =
                    finite(&mut f, &lo.lit(t), &lo.lit(next), (Endpoint::Smooth, Endpoint::Smooth), ctx, &rule)?;
                value = value + piece.value;
                error += piece.error;
                abs += piece.abs_integral;
                t = next;
            }
            Ok(Quadrature { value, error: error + env.tail(t), abs_integral: abs })
        }
    }
}

struct Panel<R> {
    side: usize,
    a: R,
    b: R,
    left: R,
    right: R,
    abs: f64,
    err: f64,
    depth: u32,
}

impl<R> PartialEq for Panel<R> {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl<R> Eq for Panel<R> {}
impl<R> PartialOrd for Panel<R> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<R> Ord for Panel<R> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

const MAX_PANELS: usize = 20_000;

fn finite<R, F>(
    f: &mut F,
    lo: &R,
    hi: &R,
    ends: (Endpoint, Endpoint),
    ctx: &PrecisionContext,
    rule: &GaussRule<R>,
) -> Result<Quadrature<R>>
where
    R: Real,
    F: FnMut(&R) -> R,
{
    let mid = (lo.clone() + hi.clone()) * lo.lit(0.5);
    let qs = [ends.0.exponent(), ends.1.exponent()];
    let lens = [mid.clone() - lo.clone(), hi.clone() - mid.clone()];
    let mut g = |side: usize, t: &R| -> R {
        let q = qs[side];
        let (x, jac) = if q == 1 {
            (t.clone() * lens[side].clone(), lens[side].clone())
        } else {
            let tq1 = t.powi(q as i64 - 1);
            (tq1.clone() * t.clone() * lens[side].clone(), tq1 * lens[side].clone() * t.int(q as i64))
        };
        let x = if side == 0 { lo.clone() + x } else { hi.clone() - x };
        f(&x) * jac
    };
    let zero = lo.zero_like();
    let one = lo.one_like();
    let half = lo.lit(0.5);
    let mut make = |side: usize, a: R, b: R, whole: Option<R>, depth: u32| -> Panel<R> {
        let m = (a.clone() + b.clone()) * half.clone();
        let mut gs = |t: &R| g(side, t);
        let whole = match whole {
            Some(w) => w,
            None => rule.apply(&mut gs, &a, &b).0,
        };
        let (l, la) = rule.apply(&mut gs, &a, &m);
        let (r, ra) = rule.apply(&mut gs, &m, &b);
        let err = (whole - l.clone() - r.clone()).abs().to_f64();
        Panel { side, a, b, left: l, right: r, abs: la.to_f64() + ra.to_f64(), err, depth }
    };

    let mut heap = BinaryHeap::new();
    let (mut approx, mut abs, mut err) = (0.0, 0.0, 0.0);
    for side in 0..2 {
        let p = make(side, zero.clone(), one.clone(), None, 0);
        approx += (p.left.clone() + p.right.clone()).to_f64();
        abs += p.abs;
        err += p.err;
        heap.push(p);
    }
    let tol = ctx.effective_tol();
    let mut previous = f64::NAN;
    loop {
        // Running sums drift; re-anchor them before trusting a convergence test.
        if err <= tol * approx.abs().max(abs) {
            let (mut value, mut a2, mut e2) = (zero.clone(), 0.0, 0.0);
            for p in heap.iter() {
                value = value + p.left.clone() + p.right.clone();
                a2 += p.abs;
                e2 += p.err;
            }
            approx = value.to_f64();
            abs = a2;
            err = e2;
            if err <= tol * approx.abs().max(abs) {
                return Ok(Quadrature { value, error: err, abs_integral: abs });
            }
        }
        let worst = heap.pop().expect("heap holds at least two panels");
        if worst.depth >= ctx.max_refine || heap.len() >= MAX_PANELS || !err.is_finite() {
            return Err(Error::Refinement { stage: "quadrature", last: approx, previous });
        }
        previous = approx;
        let m = (worst.a.clone() + worst.b.clone()) * half.clone();
        let d = worst.depth + 1;
        let before = (worst.left.clone() + worst.right.clone()).to_f64();
        let (pa, pe) = (worst.abs, worst.err);
        let l = make(worst.side, worst.a, m.clone(), Some(worst.left), d);
        let r = make(worst.side, m, worst.b, Some(worst.right), d);
        approx += (l.left.clone() + l.right.clone() + r.left.clone() + r.right.clone()).to_f64() - before;
        abs += l.abs + r.abs - pa;
        err += l.err + r.err - pe;
        heap.push(l);
        heap.push(r);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::BigReal;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    #[test]
    fn inverse_square_root() {
        let q = integrate_singular(
            |x: &f64| 1.0 / x.sqrt(),
            &0.0,
            Upper::Finite(1.0),
            (Endpoint::Power(-0.5), Endpoint::Smooth),
            &ctx(),
        )
        .unwrap();
        assert!((q.value - 2.0).abs() < 1e-12);
    }

    #[test]
    fn arcsine_type_weight() {
        let q = integrate_singular(
            |x: &f64| (x / (1.0 - x)).sqrt(),
            &0.0,
            Upper::Finite(1.0),
            (Endpoint::Power(0.5), Endpoint::Power(-0.5)),
            &ctx(),
        )
        .unwrap();
        assert!((q.value - core::f64::consts::FRAC_PI_2).abs() < 1e-10);
    }

    #[test]
    fn logarithmic_end() {
        let q =
            integrate_singular(|x: &f64| x.ln(), &0.0, Upper::Finite(1.0), (Endpoint::Log, Endpoint::Smooth), &ctx())
                .unwrap();
        assert!((q.value + 1.0).abs() < 1e-10);
    }

    #[test]
    fn exponential_tail_is_truncated() {
        let env = Envelope { amplitude: 1.0, rate: 1.0, from: 0.0 };
        let q = integrate_singular(
            |x: &f64| (-x).exp(),
            &0.0,
            Upper::Infinite(env),
            (Endpoint::Smooth, Endpoint::Smooth),
            &ctx(),
        )
        .unwrap();
        assert!((q.value - 1.0).abs() < 1e-10, "{}", q.value);
    }

    #[test]
    fn big_precision_meets_tight_tolerance() {
        let c = PrecisionContext::new(192, 1e-40, 60).unwrap();
        let one = BigReal::from_f64(1.0, 192);
        let q = integrate_singular(
            |x: &BigReal| (x.clone() / (x.one_like() - x.clone())).sqrt(),
            &one.zero_like(),
            Upper::Finite(one.clone()),
            (Endpoint::Power(0.5), Endpoint::Power(-0.5)),
            &c,
        )
        .unwrap();
        let exact = one.pi_like() * one.lit(0.5);
        assert!((q.value - exact).abs().to_f64() < 1e-38);
    }

    #[test]
    fn refinement_cap_reports_estimates() {
        let c = PrecisionContext::new(53, 1e-12, 2).unwrap();
        let r = integrate_singular(
            |x: &f64| (1.0 / x).sin(),
            &1e-3,
            Upper::Finite(1.0),
            (Endpoint::Smooth, Endpoint::Smooth),
            &c,
        );
        assert!(matches!(r, Err(Error::Refinement { .. })));
    }
}
