//! The equilibrium density `ψ_k` on `[0, 1]` and the Lagrange multiplier `l_k`.

use crate::error::{Error, Result};
use crate::numerics::{integrate_singular, Endpoint, Envelope, PrecisionContext, Quadrature, Real, Upper};

use super::mrs::{ak_eval, bose, v_k};
use super::qk::{QRoute, QkEvaluator};

/// Quadrature context for integrals whose integrand itself comes from a
/// quadrature: ten times tighter, but never below what the precision allows.
fn inner(ctx: &PrecisionContext) -> PrecisionContext {
    ctx.with_tol((0.1 * ctx.quad_tol).max(ctx.effective_tol()))
}

/// `ψ_k(x) = (1/2π)√((1-x)/x) q_k(x)`.
#[derive(Clone, Debug)]
pub struct EquilibriumDensity<R> {
    pub k: usize,
    pub r: R,
    pub q: QkEvaluator<R>,
}

impl<R: Real> EquilibriumDensity<R> {
    pub fn new(q: QkEvaluator<R>) -> Self {
        Self { k: q.k, r: q.r.clone(), q }
    }

    pub fn psi(&self, x: &R) -> Result<R> {
        let one = x.one_like();
        if !(x.is_positive() && *x < one) {
            return Err(Error::Domain(alloc::format!("density lives on (0, 1), got {x}")));
        }
        let qx = self.q.q_real(x, QRoute::Contour)?;
        Ok(((one - x.clone()) / x.clone()).sqrt() * qx / (x.pi_like() * x.lit(2.0)))
    }

    /// Runs `integrate_singular` on an integrand that may fail, surfacing the first failure.
    fn integrate<F>(
        &self,
        mut f: F,
        lo: &R,
        hi: &R,
        ends: (Endpoint, Endpoint),
        ctx: &PrecisionContext,
    ) -> Result<Quadrature<R>>
    where
        F: FnMut(&R) -> Result<R>,
    {
        let mut failure = None;
        let q = integrate_singular(
            |y: &R| match f(y) {
                Ok(v) => v,
                Err(e) => {
                    failure.get_or_insert(e);
                    y.zero_like()
                }
            },
            lo,
            Upper::Finite(hi.clone()),
            ends,
            ctx,
        )?;
        match failure {
            Some(e) => Err(e),
            None => Ok(q),
        }
    }

    /// `∫_0^1 ψ_k`, which is 1 for a probability measure.
    pub fn mass(&self, ctx: &PrecisionContext) -> Result<Quadrature<R>> {
        let zero = self.r.zero_like();
        self.integrate(|y| self.psi(y), &zero, &zero.one_like(), (Endpoint::Power(-0.5), Endpoint::Power(0.5)), ctx)
    }

    /// `2∫_0^1 ln|x - y| ψ_k(y) dy`, split at the logarithmic singularity.
    pub fn log_potential(&self, x: &R, ctx: &PrecisionContext) -> Result<R> {
        let zero = x.zero_like();
        let one = x.one_like();
        if !(*x > zero && *x < one) {
            return Err(Error::Domain(alloc::format!("log potential evaluated on (0, 1), got {x}")));
        }
        let f = |y: &R| Ok((x.clone() - y.clone()).abs().ln() * self.psi(y)?);
        let left = self.integrate(f, &zero, x, (Endpoint::Power(-0.5), Endpoint::Log), ctx)?;
        let right = self.integrate(f, x, &one, (Endpoint::Log, Endpoint::Power(0.5)), ctx)?;
        Ok((left.value + right.value) * x.lit(2.0))
    }

    /// `2∫ln|x - y|ψ_k(y)dy - V_k(x) - l_k`, zero on the support.
    pub fn euler_lagrange(&self, x: &R, l_k: &R, ctx: &PrecisionContext) -> Result<R> {
        Ok(self.log_potential(x, ctx)? - v_k(x, self.k, &self.r, &self.q.b) - l_k.clone())
    }
}

/// `ln(1 - e^{-x})` for `x > 0`, keeping full relative accuracy when `e^{-x}` is tiny.
fn ln_one_minus_exp_neg<R: Real>(x: &R) -> R {
    let e = (-x.clone()).exp();
    if e > x.lit(0.5) {
        return (-(-x.clone()).expm1()).ln();
    }
    // -Σ e^j/j
    let mut sum = x.zero_like();
    let mut pow = e.clone();
    for j in 1.. {
        let term = pow.clone() / x.int(j);
        sum = sum - term.clone();
        if term.abs().to_f64() <= x.epsilon() * sum.abs().to_f64() {
            break;
        }
        pow = pow * e.clone();
    }
    sum
}

/// The pieces of `l_k = I_2 - I_1 - V_k(1)`.
#[derive(Clone, Debug)]
pub struct LagrangeMultiplier<R> {
    /// `-∫_1^∞ γ/(e^{γkz} - 1) dz`, by quadrature.
    pub i1: R,
    /// The same integral in closed form, `(1/k) ln(1 - e^{-γk})`.
    pub i1_closed: R,
    pub i2: R,
    pub v1: R,
    pub l: R,
}

/// Assembles `l_k` from `b_k`, `a_k` and the remainder `r_k` on `(1, ∞)`.
///
/// With `q_k = 4b_k + a_k/z + r_k(z)`, the two algebraic pieces integrate in
/// closed form and only `∫_1^∞ √((z-1)/z) r_k(z) dz` is left, taken after
/// `z = 1/u`. The `1/z` terms cancel exactly because `a_k = 2b_k - 2 + 1/k`.
pub fn lagrange_multiplier<R: Real>(
    q: &QkEvaluator<R>,
    a: &R,
    ctx: &PrecisionContext,
) -> Result<LagrangeMultiplier<R>> {
    let b = &q.b;
    let one = b.one_like();
    let kf = b.int(q.k as i64);
    let g = q.gamma.clone();
    let gk = g.clone() * kf.clone();
    let amplitude = (g.clone() * bose(&gk)).to_f64();
    let i1 = integrate_singular(
        |z: &R| g.clone() * bose(&(gk.clone() * z.clone())),
        &one,
        Upper::Infinite(Envelope { amplitude, rate: gk.to_f64(), from: 1.0 }),
        (Endpoint::Smooth, Endpoint::Smooth),
        ctx,
    )?;
    let i1 = -i1.value;
    let i1_closed = ln_one_minus_exp_neg(&gk) / kf.clone();

    let mut failure = None;
    let tail = integrate_singular(
        |u: &R| {
            let z = u.recip();
            match q.r_k(&z) {
                Ok(r) => (one.clone() - u.clone()).sqrt() * r * z.sqr(),
                Err(e) => {
                    failure.get_or_insert(e);
                    u.zero_like()
                }
            }
        },
        &b.zero_like(),
        Upper::Finite(one.clone()),
        (Endpoint::Smooth, Endpoint::Power(0.5)),
        &inner(ctx),
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    let ln2 = b.lit(2.0).ln();
    let two = b.lit(2.0);
    let i2 = b.clone() * (two.clone() - ln2.clone() * b.lit(4.0)) + a.clone() * (ln2 * two.clone() - two) + tail.value;
    let v1 = v_k(&one, q.k, &q.r, b);
    let l = i2.clone() - i1.clone() - v1.clone();
    Ok(LagrangeMultiplier { i1, i1_closed, i2, v1, l })
}

/// `l_k` at `(k, r)`, solving for `b_k` and `a_k` along the way.
pub fn lk_eval<R: Real>(k: usize, r: &R, ctx: &PrecisionContext) -> Result<R> {
    let q = QkEvaluator::solve(k, r, ctx)?;
    let a = ak_eval(k, r, &q.b, ctx)?;
    Ok(lagrange_multiplier(&q, &a, ctx)?.l)
}

/// `l_k` predicted by the large-k expansion.
pub fn lk_expansion(k: f64, r: f64, zeta: f64) -> f64 {
    let ln2 = core::f64::consts::LN_2;
    -2.0 - 4.0 * ln2 - libm::log(k) / k + 1.0 / k
        - 3.0 * zeta / (4.0 * libm::sqrt(core::f64::consts::PI * (r - 1.0)) * libm::pow(k, 1.5))
        + 0.5 / (k * k)
}

/// Quadrature self-tests on the two algebraic integrals behind `I_2`:
/// `∫_1^∞ (√((z-1)/z) - 1 + 1/(2z)) dz = 1/2 - ln 2` and
/// `∫_1^∞ (√((z-1)/z) - 1) dz/z = 2 ln 2 - 2`. Returns `(numeric, closed form)` pairs.
pub fn closed_form_checks<R: Real>(like: &R, ctx: &PrecisionContext) -> Result<[(R, R); 2]> {
    let zero = like.zero_like();
    let one = like.one_like();
    let ln2 = like.lit(2.0).ln();
    let ends = (Endpoint::Smooth, Endpoint::Power(0.5));
    // After z = 1/u the integrands are (√(1-u) - 1 + u/2)/u² and (√(1-u) - 1)/u;
    // both numerators are rewritten without the cancellation at u = 0.
    let first = integrate_singular(
        |u: &R| {
            let s = one.clone() + (one.clone() - u.clone()).sqrt();
            -(s.sqr() * u.lit(2.0)).recip()
        },
        &zero,
        Upper::Finite(one.clone()),
        ends,
        ctx,
    )?;
    let second = integrate_singular(
        |u: &R| -(one.clone() + (one.clone() - u.clone()).sqrt()).recip(),
        &zero,
        Upper::Finite(one.clone()),
        ends,
        ctx,
    )?;
    Ok([(first.value, like.lit(0.5) - ln2.clone()), (second.value, ln2 * like.lit(2.0) - like.lit(2.0))])
}

#[cfg(test)]
mod tests {
    use super::*;

    const ZETA: f64 = 2.612_375_348_685_488_3;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default().with_tol(1e-12)
    }

    #[test]
    fn closed_forms() {
        for (num, exact) in closed_form_checks(&1.0, &ctx()).unwrap() {
            assert!((num - exact).abs() < 1e-12);
        }
    }

    #[test]
    fn multiplier_at_k100() {
        let q = QkEvaluator::solve(100, &2.0, &ctx()).unwrap();
        let a = ak_eval(100, &2.0, &q.b, &ctx()).unwrap();
        let lm = lagrange_multiplier(&q, &a, &ctx()).unwrap();
        assert!((lm.l + 4.809_700_8).abs() < 1e-6, "{}", lm.l);
        assert!((lm.l - lk_expansion(100.0, 2.0, ZETA)).abs() < 1e-4);
        assert!(lm.i1 < 0.0 && lm.i1.abs() < 1e-100, "{} {}", lm.i1, lm.i1_closed);
        assert!(((lm.i1 - lm.i1_closed) / lm.i1_closed).abs() < 1e-10);
    }

    #[test]
    fn density_is_normalized_and_positive() {
        let q = QkEvaluator::solve(10, &2.0, &ctx()).unwrap();
        let d = EquilibriumDensity::new(q);
        let m = d.mass(&ctx()).unwrap();
        assert!((m.value - 1.0).abs() < 1e-11, "{}", m.value);
        for x in [1e-4, 0.1, 0.5, 0.99] {
            assert!(d.psi(&x).unwrap() > 0.0);
        }
    }
}
