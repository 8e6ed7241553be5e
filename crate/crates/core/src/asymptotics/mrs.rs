//! The MRS number `β_k = 4k b_k` and the scalar quantities derived from it.

use crate::error::{Error, Result};
use crate::numerics::roots::find_root_tol;
use crate::numerics::{integrate_singular, Endpoint, PrecisionContext, Quadrature, Real, Upper};

/// `1/(e^x - 1)` for `x > 0`, written so that large `x` underflows instead of overflowing.
pub(crate) fn bose<R: Real>(x: &R) -> R {
    let m = -x.clone();
    m.exp() / -m.expm1()
}

/// `∫_0^1 √(y/(1-y)) / (e^{gk·y} - 1) dy`.
///
/// Both `f(b, ε)` and `a_k` reduce to this integral; for large `gk` its mass
/// sits in `y = O(1/gk)` and the adaptive panels find it there.
pub(crate) fn bose_integral<R: Real>(gk: &R, ctx: &PrecisionContext) -> Result<Quadrature<R>> {
    let one = gk.one_like();
    integrate_singular(
        |y: &R| {
            let w = (y.clone() / (one.clone() - y.clone())).sqrt();
            w * bose(&(gk.clone() * y.clone()))
        },
        &gk.zero_like(),
        Upper::Finite(one.clone()),
        (Endpoint::Power(-0.5), Endpoint::Power(-0.5)),
        ctx,
    )
}

/// The reduced MRS function; `b_k` is its root in `b` at `ε = k^{-1/2}`.
///
/// The `x`-integral over `[0, 1/ε²]` is evaluated after `x = y/ε²`.
pub fn f_b_eps<R: Real>(b: &R, eps: &R, r: &R, ctx: &PrecisionContext) -> Result<R> {
    let one = b.one_like();
    if !(*b >= b.lit(0.5) && *b <= b.lit(2.0)) {
        return Err(Error::Domain(alloc::format!("b = {b} outside [1/2, 2]")));
    }
    if !(*eps >= eps.zero_like() && *eps <= one) {
        return Err(Error::Domain(alloc::format!("eps = {eps} outside [0, 1]")));
    }
    if !(*r > one) {
        return Err(Error::Domain(alloc::format!("r = {r} must exceed 1")));
    }
    if eps.to_f64() == 0.0 {
        return Ok(b.clone() - one);
    }
    let e2 = eps.sqr();
    let k = e2.recip();
    let rm1b = (r.clone() - one.clone()) * b.clone();
    let gk = rm1b.clone() * b.lit(4.0) * k;
    let j = bose_integral(&gk, ctx)?.value;
    let two = b.lit(2.0);
    Ok(b.clone() + e2 / two.clone() - two * rm1b * j / b.pi_like() - one)
}

/// `b_k` and `β_k = 4k b_k`.
///
/// The residual target is `min(k^{-4}, quad_tol/10)`: solver noise then sits
/// below the `k^{-5/2}` term of the expansion and below quadrature noise.
pub fn solve_bk<R: Real>(k: usize, r: &R, ctx: &PrecisionContext) -> Result<(R, R)> {
    if k == 0 {
        return Err(Error::Domain("k must be at least 1".into()));
    }
    let kf = r.int(k as i64);
    let eps = kf.recip().sqrt();
    let tol = libm::pow(k as f64, -4.0).min(0.1 * ctx.quad_tol);
    let inner = ctx.with_tol((0.01 * tol).max(ctx.effective_tol()));
    let b = find_root_tol(|b: &R| f_b_eps(b, &eps, r, &inner), &r.lit(0.5), &r.lit(2.0), tol, ctx)?;
    let beta = b.clone() * kf * r.lit(4.0);
    Ok((b, beta))
}

/// `γ_k = 4(r-1)b_k`.
pub fn gamma_k<R: Real>(r: &R, b: &R) -> R {
    (r.clone() - r.one_like()) * b.clone() * r.lit(4.0)
}

/// The `1/z` coefficient of `q_k` at infinity, `(γ_k/π)∫_0^1 √(y/(1-y)) dy/(e^{γ_k k y} - 1)`.
///
/// The integrand is positive, so `a_k > 0`; at the root of `f` this equals
/// `2b_k - 2 + 1/k` identically.
pub fn ak_eval<R: Real>(k: usize, r: &R, b: &R, ctx: &PrecisionContext) -> Result<R> {
    let g = gamma_k(r, b);
    let j = bose_integral(&(g.clone() * r.int(k as i64)), ctx)?.value;
    Ok(g * j / r.pi_like())
}

/// `V_k(z) = 4b z + (1/k) ln(4bkz / (1 - e^{-γkz}))` for `z > 0`.
pub fn v_k<R: Real>(z: &R, k: usize, r: &R, b: &R) -> R {
    let kf = z.int(k as i64);
    let g = gamma_k(r, b);
    let four_b = b.clone() * b.lit(4.0);
    let denom = -(-(g * kf.clone() * z.clone())).expm1();
    four_b.clone() * z.clone() + (four_b * kf.clone() * z.clone() / denom).ln() / kf
}

/// `V_k'(z) = 4b + 1/(kz) - γ/(e^{γkz} - 1)`.
pub fn v_k_prime<R: Real>(z: &R, k: usize, r: &R, b: &R) -> R {
    let kf = z.int(k as i64);
    let g = gamma_k(r, b);
    b.clone() * b.lit(4.0) + (kf.clone() * z.clone()).recip() - g.clone() * bose(&(g * kf * z.clone()))
}

/// `b_k` predicted by the large-k expansion, `1 - 1/(2k) + ζ(3/2)/(8√(π(r-1)) k^{3/2})`.
pub fn bk_expansion(k: f64, r: f64, zeta: f64) -> f64 {
    1.0 - 0.5 / k + zeta / (8.0 * libm::sqrt(core::f64::consts::PI * (r - 1.0)) * libm::pow(k, 1.5))
}

#[cfg(test)]
mod tests {
    use super::*;

    const ZETA: f64 = 2.612_375_348_685_488_3;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default().with_tol(1e-12)
    }

    #[test]
    fn fixed_point_at_origin() {
        for r in [1.5, 2.0, 5.0] {
            assert_eq!(f_b_eps(&1.0, &0.0, &r, &ctx()).unwrap(), 0.0);
        }
        let h = 1e-6;
        let d = (f_b_eps(&(1.0 + h), &0.0, &2.0, &ctx()).unwrap() - f_b_eps(&(1.0 - h), &0.0, &2.0, &ctx()).unwrap())
            / (2.0 * h);
        assert!((d - 1.0).abs() < 1e-9);
    }

    #[test]
    fn small_eps_expansion() {
        let r: f64 = 2.0;
        let b: f64 = 1.1;
        let mut prev = f64::INFINITY;
        for eps in [0.2, 0.1, 0.05] {
            let f = f_b_eps(&b, &eps, &r, &ctx()).unwrap();
            let e = (b - 1.0) + eps * eps / 2.0
                - eps * eps * eps * ZETA / (8.0 * libm::sqrt(core::f64::consts::PI * b * (r - 1.0)));
            let d = (f - e).abs();
            assert!(d < 0.5 * libm::pow(eps, 5.0), "eps {eps}: {d:e}");
            assert!(d < prev);
            prev = d;
        }
    }

    #[test]
    fn bk_at_k100() {
        let (b, beta) = solve_bk(100, &2.0, &ctx()).unwrap();
        assert!((b - 0.995_184_86).abs() < 2e-8, "{b}");
        assert!((beta - 398.074).abs() < 1e-3);
        assert!((b - bk_expansion(100.0, 2.0, ZETA)).abs() < 1e-4);
        let f = f_b_eps(&b, &0.1, &2.0, &ctx()).unwrap();
        assert!(f.abs() <= 1e-8);
    }

    #[test]
    fn ak_identity() {
        for k in [50, 100] {
            let (b, _) = solve_bk(k, &2.0, &ctx()).unwrap();
            let a = ak_eval(k, &2.0, &b, &ctx()).unwrap();
            assert!(a > 0.0);
            assert!((a - (2.0 * b - 2.0 + 1.0 / k as f64)).abs() <= 1e-11, "k {k}");
        }
    }

    #[test]
    fn potential_derivative() {
        let (b, r, k) = (0.99, 2.0, 30);
        for z in [0.3, 1.0, 2.5] {
            let h = 1e-5;
            let fd = (v_k(&(z + h), k, &r, &b) - v_k(&(z - h), k, &r, &b)) / (2.0 * h);
            assert!((fd - v_k_prime(&z, k, &r, &b)).abs() < 1e-8);
        }
    }
}
