//! Per-k solution of the MRS problem and the resulting norm estimate
//! `h_k ≈ (π/8) β_k^{2k+2} e^{k l_k} [1 + c_k/k]`, with
//! `c_k = 3/(4q_k(0)) + 47/(12q_k(1)) - q_k'(1)/(4q_k(1)²)`.

use crate::error::{Error, Result};
use crate::numerics::{Complex, PrecisionContext, Real};

use super::equilibrium::{lagrange_multiplier, LagrangeMultiplier};
use super::mrs::{ak_eval, solve_bk};
use super::qk::{QRoute, QkEvaluator};

#[derive(Clone, Debug)]
pub struct MrsSolution<R> {
    pub k: usize,
    pub r: R,
    pub b_k: R,
    pub beta_k: R,
    pub gamma_k: R,
    pub a_k: R,
    pub l_k: R,
    pub q0: R,
    pub q1: R,
    /// `q_k'(1)` from the squared Cauchy kernel.
    pub q1prime: R,
    /// `q_k'(1)` by the complex step, kept as a cross-check.
    pub q1prime_step: R,
    pub lagrange: LagrangeMultiplier<R>,
    pub evaluator: QkEvaluator<R>,
}

impl<R: Real> MrsSolution<R> {
    pub fn compute(k: usize, r: &R, ctx: &PrecisionContext) -> Result<Self> {
        let (b, beta) = solve_bk(k, r, ctx)?;
        let q = QkEvaluator::new(k, r, &b, None, ctx)?;
        let a = ak_eval(k, r, &b, ctx)?;
        let lagrange = lagrange_multiplier(&q, &a, ctx)?;
        let zero = r.zero_like();
        let one = r.one_like();
        let q0 = q.q_real(&zero, QRoute::Contour)?;
        let q1 = q.q_real(&one, QRoute::Contour)?;
        let q1prime = q.q_prime_kernel(&Complex::real(one.clone()))?.re;
        let q1prime_step = q.q_prime_complex_step(&one)?;
        Ok(Self {
            k,
            r: r.clone(),
            b_k: b,
            beta_k: beta,
            gamma_k: q.gamma.clone(),
            a_k: a,
            l_k: lagrange.l.clone(),
            q0,
            q1,
            q1prime,
            q1prime_step,
            lagrange,
            evaluator: q,
        })
    }

    /// `|a_k - (2b_k - 2 + 1/k)|`.
    pub fn moment_defect(&self) -> R {
        let k = self.r.int(self.k as i64);
        (self.a_k.clone() - (self.b_k.clone() * self.r.lit(2.0) - self.r.lit(2.0) + k.recip())).abs()
    }
}

#[derive(Clone, Debug)]
pub struct VanlessenEstimate<R> {
    pub k: usize,
    /// `1 + c_k/k` with the computed `q`-values.
    pub bracket: R,
    /// `1 + 7/(6k)`, the bracket with `q_k(0) = q_k(1) = 4`, `q_k'(1) = 0`.
    pub bracket_simplified: R,
    pub ln_h: R,
    pub ln_h_simplified: R,
}

/// Evaluates the norm estimate from a solved `MrsSolution`.
pub fn vanlessen_from<R: Real>(s: &MrsSolution<R>) -> VanlessenEstimate<R> {
    let x = &s.b_k;
    let k = x.int(s.k as i64);
    let one = x.one_like();
    let c = x.lit(3.0) / (x.lit(4.0) * s.q0.clone()) + x.lit(47.0) / (x.lit(12.0) * s.q1.clone())
        - s.q1prime.clone() / (x.lit(4.0) * s.q1.sqr());
    let bracket = one.clone() + c / k.clone();
    let bracket_simplified = one + x.lit(7.0) / (x.lit(6.0) * k.clone());
    let base = (x.pi_like() / x.lit(8.0)).ln() + x.int(2 * s.k as i64 + 2) * s.beta_k.ln() + k * s.l_k.clone();
    VanlessenEstimate {
        k: s.k,
        ln_h: base.clone() + bracket.ln(),
        ln_h_simplified: base + bracket_simplified.ln(),
        bracket,
        bracket_simplified,
    }
}

/// The estimate at `α > 1`, with `r = (α+1)/(α-1)`.
pub fn h_vanlessen<R: Real>(
    k: usize,
    alpha: &R,
    ctx: &PrecisionContext,
) -> Result<(MrsSolution<R>, VanlessenEstimate<R>)> {
    let one = alpha.one_like();
    if !(*alpha > one) {
        return Err(Error::Domain(alloc::format!("alpha must exceed 1, got {alpha}")));
    }
    let r = (alpha.clone() + one.clone()) / (alpha.clone() - one);
    let s = MrsSolution::compute(k, &r, ctx)?;
    let v = vanlessen_from(&s);
    Ok((s, v))
}

/// `ln(h_k/(k!)²)` as predicted by the expansion, `-ζ(3/2)/(2√(π(r-1)k)) + 1/(4k)`.
pub fn ln_norm_expansion(k: f64, r: f64, zeta: f64) -> f64 {
    -zeta / (2.0 * libm::sqrt(core::f64::consts::PI * (r - 1.0) * k)) + 0.25 / k
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bracket_is_close_to_simplified() {
        let ctx = PrecisionContext::default().with_tol(1e-12);
        let (s, v) = h_vanlessen(50, &3.0, &ctx).unwrap();
        assert!((v.bracket - v.bracket_simplified).abs() < 50f64.powf(-1.5));
        assert!((s.q1prime - s.q1prime_step).abs() < 1e-8);
        assert!(s.moment_defect() < 1e-11);
    }
}
