//! `q_k(z) = 4b_k + s_k(z)`, the analytic factor of the equilibrium density.
//!
//! `s_k` is a Cauchy integral of `√(y/(y-1))/(e^{γky} - 1)` over a contour
//! around `[0, 1]`. Crossing the cut, the two banks differ by a sign, which
//! for `z > 1` collapses the contour to the real integral
//!
//! ```text
//! s_k(z) = -γ√(z/(z-1))/(e^{γkz} - 1) + (γ/π)∫_0^1 √(y/(1-y)) dy / ((e^{γky} - 1)(z - y)),
//! ```
//!
//! the first term being the residue at `y = z`. Both routes are implemented.

use crate::error::{Error, Result};
use crate::numerics::{contour_integral, integrate_singular, Complex, Endpoint, PrecisionContext, Real, Upper};

use super::mrs::{bose, gamma_k, solve_bk};
use super::stadium::Stadium;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QRoute {
    Contour,
    /// The real-line representation, valid for `z > 1`.
    Real,
}

/// `1/(e^w - 1)` for complex `w`, overflow-free on either half-plane.
fn bose_c<R: Real>(w: &Complex<R>) -> Complex<R> {
    if w.re.is_positive() {
        let m = -w.clone();
        m.exp() / -m.expm1()
    } else {
        w.expm1().recip()
    }
}

/// Evaluates `q_k` and its derivative for one `(k, r, b_k)`.
#[derive(Clone, Debug)]
pub struct QkEvaluator<R> {
    pub k: usize,
    pub r: R,
    pub b: R,
    pub gamma: R,
    pub stadium: Stadium<R>,
    ctx: PrecisionContext,
}

impl<R: Real> QkEvaluator<R> {
    /// `delta` defaults to [`Stadium::default_delta`]; it must stay below the
    /// pole-clearance bound `π/(2(r-1))`.
    pub fn new(k: usize, r: &R, b: &R, delta: Option<R>, ctx: &PrecisionContext) -> Result<Self> {
        let delta = delta.unwrap_or_else(|| Stadium::default_delta(r));
        let bound = r.pi_like() / ((r.clone() - r.one_like()) * r.lit(2.0));
        if !(delta < bound) {
            return Err(Error::InvalidContour(alloc::format!("delta {delta} not below pi/(2(r-1)) = {bound}")));
        }
        let stadium = Stadium::new(r.int(k as i64), delta)?;
        let gamma = gamma_k(r, b);
        stadium.check_clearance(&gamma, &Complex::real(r.lit(0.5)), 0.0)?;
        Ok(Self { k, r: r.clone(), b: b.clone(), gamma, stadium, ctx: *ctx })
    }

    /// Solves for `b_k` first.
    pub fn solve(k: usize, r: &R, ctx: &PrecisionContext) -> Result<Self> {
        let (b, _) = solve_bk(k, r, ctx)?;
        Self::new(k, r, &b, None, ctx)
    }

    fn kf(&self) -> R {
        self.r.int(self.k as i64)
    }

    fn sqrt_ratio(y: &Complex<R>) -> Complex<R> {
        let one = Complex::real(y.re.one_like());
        (y.clone() / (y.clone() - one)).sqrt()
    }

    /// Residue contribution `-γ√(z/(z-1))/(e^{γkz} - 1)` of the pole at `y = z`.
    fn residue(&self, z: &Complex<R>) -> Complex<R> {
        let w = z.scale(&(self.gamma.clone() * self.kf()));
        -(Self::sqrt_ratio(z) * bose_c(&w)).scale(&self.gamma)
    }

    /// `-γ/(2πi) ∮ √(y/(y-1)) dy / ((e^{γky} - 1)(y - z)^p)` over the stadium.
    fn cauchy(&self, z: &Complex<R>, p: i64) -> Result<Complex<R>> {
        let margin = 1e-3 * self.stadium.delta.to_f64() / self.kf().to_f64();
        self.stadium.check_clearance(&self.gamma, z, margin)?;
        let gk = self.gamma.clone() * self.kf();
        let w = contour_integral(
            |y: &Complex<R>| {
                let mut d = y.clone() - z.clone();
                if p == 2 {
                    d = d.clone() * d;
                }
                Self::sqrt_ratio(y) * bose_c(&y.scale(&gk)) / d
            },
            &self.stadium,
            &self.ctx,
        )?;
        // -γ/(2πi)·w = (iγ/2π)·w
        let c = self.gamma.clone() / (self.gamma.pi_like() * self.gamma.lit(2.0));
        Ok(Complex::new(-(w.im.clone() * c.clone()), w.re * c))
    }

    /// `s_k(z)` by the contour route. For `z` outside the stadium the pole at
    /// `y = z` is added back as a residue, so the result is the same analytic function.
    pub fn s_contour(&self, z: &Complex<R>) -> Result<Complex<R>> {
        let v = self.cauchy(z, 1)?;
        Ok(if self.stadium.contains(z) { v } else { v + self.residue(z) })
    }

    /// `s_k(z)` for real `z > 1` by the real-line representation.
    pub fn s_real(&self, z: &R) -> Result<R> {
        let one = z.one_like();
        if !(*z > one) {
            return Err(Error::Domain(alloc::format!("real route needs z > 1, got {z}")));
        }
        let gk = self.gamma.clone() * self.kf();
        let q = integrate_singular(
            |y: &R| {
                (y.clone() / (one.clone() - y.clone())).sqrt() * bose(&(gk.clone() * y.clone()))
                    / (z.clone() - y.clone())
            },
            &z.zero_like(),
            Upper::Finite(one.clone()),
            (Endpoint::Power(-0.5), Endpoint::Power(-0.5)),
            &self.ctx,
        )?;
        Ok(self.residue(&Complex::real(z.clone())).re + self.gamma.clone() * q.value / z.pi_like())
    }

    pub fn q(&self, z: &Complex<R>) -> Result<Complex<R>> {
        Ok(Complex::real(self.four_b()) + self.s_contour(z)?)
    }

    fn four_b(&self) -> R {
        self.b.clone() * self.b.lit(4.0)
    }

    /// `q_k` at a real point. On `[0, 1]` the contour value is real up to
    /// quadrature noise; the imaginary part is dropped after a sanity check.
    pub fn q_real(&self, x: &R, route: QRoute) -> Result<R> {
        match route {
            QRoute::Real => Ok(self.four_b() + self.s_real(x)?),
            QRoute::Contour => {
                let v = self.q(&Complex::real(x.clone()))?;
                let scale = v.re.abs().to_f64().max(1.0);
                if v.im.abs().to_f64() > 1e3 * self.ctx.effective_tol() * scale {
                    return Err(Error::PrecisionExhausted {
                        stage: "q_k on the real axis",
                        bits: self.ctx.bits,
                        last: v.re.to_f64(),
                        previous: v.im.to_f64(),
                    });
                }
                Ok(v.re)
            }
        }
    }

    /// `q_k'(z)` from the squared Cauchy kernel.
    pub fn q_prime_kernel(&self, z: &Complex<R>) -> Result<Complex<R>> {
        if !self.stadium.contains(z) {
            return Err(Error::InvalidContour(alloc::format!("{z:?} is outside the contour")));
        }
        self.cauchy(z, 2)
    }

    /// `q_k'(x)` by the complex step `Im q(x + ih)/h` with `h = 2^{-bits/4}`.
    ///
    /// The contour sum is conjugate-symmetric only up to rounding, so the
    /// imaginary part carries noise of order `eps·∫|f|`; the step balances
    /// that against the `O(h²)` truncation error.
    pub fn q_prime_complex_step(&self, x: &R) -> Result<R> {
        let h = x.lit(2.0).powf(&x.lit(-(self.ctx.bits.max(x.bits()) as f64) / 4.0));
        let v = self.q(&Complex::new(x.clone(), h.clone()))?;
        Ok(v.im / h)
    }

    /// `r_k(z) = s_k(z) - a_k/z` for `z > 1`, with the `1/z` part cancelled
    /// inside the integrand rather than by subtraction.
    pub fn r_k(&self, z: &R) -> Result<R> {
        let one = z.one_like();
        if !(*z > one) {
            return Err(Error::Domain(alloc::format!("r_k needs z > 1, got {z}")));
        }
        let gk = self.gamma.clone() * self.kf();
        let q = integrate_singular(
            |y: &R| {
                (y.clone() / (one.clone() - y.clone())).sqrt() * y.clone() * bose(&(gk.clone() * y.clone()))
                    / ((z.clone() - y.clone()) * z.clone())
            },
            &z.zero_like(),
            Upper::Finite(one.clone()),
            (Endpoint::Power(0.5), Endpoint::Power(-0.5)),
            &self.ctx,
        )?;
        Ok(self.residue(&Complex::real(z.clone())).re + self.gamma.clone() * q.value / z.pi_like())
    }
}

/// `q_k(z)` from scratch: solves `b_k`, then evaluates by the chosen route.
pub fn qk_eval<R: Real>(z: &Complex<R>, k: usize, r: &R, route: QRoute, ctx: &PrecisionContext) -> Result<Complex<R>> {
    let q = QkEvaluator::solve(k, r, ctx)?;
    match route {
        QRoute::Contour => q.q(z),
        QRoute::Real => {
            if z.im.to_f64() != 0.0 {
                return Err(Error::Domain("real route needs a real argument".into()));
            }
            Ok(Complex::real(q.q_real(&z.re, QRoute::Real)?))
        }
    }
}
