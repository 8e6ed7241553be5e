//! Bracketed root finding: secant steps, falling back to bisection whenever
//! the secant leaves the bracket or fails to shrink it fast enough.

use super::real::Real;
use super::PrecisionContext;
use crate::error::{Error, Result};

/// Root of `g` in `[lo, hi]` with `|g(x)| <= ctx.quad_tol * max(1, |g(lo)|, |g(hi)|)`.
pub fn find_root<R, G>(g: G, lo: &R, hi: &R, ctx: &PrecisionContext) -> Result<R>
where
    R: Real,
    G: FnMut(&R) -> Result<R>,
{
    find_root_tol(g, lo, hi, ctx.quad_tol, ctx)
}

/// As [`find_root`] with an explicit residual tolerance (relative to the
/// bracket-end scale).
pub fn find_root_tol<R, G>(mut g: G, lo: &R, hi: &R, tol: f64, ctx: &PrecisionContext) -> Result<R>
where
    R: Real,
    G: FnMut(&R) -> Result<R>,
{
    let (mut a, mut b) = (lo.clone(), hi.clone());
    let (mut ga, mut gb) = (g(&a)?, g(&b)?);
    let zero = a.zero_like();
    if ga == zero {
        return Ok(a);
    }
    if gb == zero {
        return Ok(b);
    }
    if (ga > zero) == (gb > zero) {
        return Err(Error::Bracket { lo: a.to_f64(), hi: b.to_f64(), g_lo: ga.to_f64(), g_hi: gb.to_f64() });
    }
    let scale = 1f64.max(ga.abs().to_f64()).max(gb.abs().to_f64());
    let target = tol * scale;
    let half = a.lit(0.5);
    let mut width = (b.clone() - a.clone()).abs().to_f64();
    let max_iter = 200 + 4 * ctx.bits as usize;
    let mut best = if ga.abs() < gb.abs() { (a.clone(), ga.clone()) } else { (b.clone(), gb.clone()) };
    for _ in 0..max_iter {
        let secant = b.clone() - gb.clone() * (b.clone() - a.clone()) / (gb.clone() - ga.clone());
        let mid = (a.clone() + b.clone()) * half.clone();
        let inside = secant > a.clone().min_of(b.clone()) && secant < a.clone().max_of(b.clone());
        let x = if inside { secant } else { mid.clone() };
        let gx = g(&x)?;
        if gx.abs() < best.1.abs() {
            best = (x.clone(), gx.clone());
        }
        if gx.abs().to_f64() <= target {
            return Ok(x);
        }
        if (gx > zero) == (ga > zero) {
            a = x;
            ga = gx;
        } else {
            b = x;
            gb = gx;
        }
        let new_width = (b.clone() - a.clone()).abs().to_f64();
        if new_width > 0.5 * width {
            // Secant stalled on one side; force a bisection step.
            let gm = g(&mid)?;
            if gm.abs() < best.1.abs() {
                best = (mid.clone(), gm.clone());
            }
            if gm.abs().to_f64() <= target {
                return Ok(mid);
            }
            if (gm > zero) == (ga > zero) {
                a = mid;
                ga = gm;
            } else {
                b = mid;
                gb = gm;
            }
        }
        width = (b.clone() - a.clone()).abs().to_f64();
        if width <= a.epsilon() * 4.0 * a.abs().to_f64().max(b.abs().to_f64()) {
            return Ok(best.0);
        }
    }
    Err(Error::Refinement { stage: "root finding", last: a.to_f64(), previous: b.to_f64() })
}
