//! Known large-n asymptotics away from the critical line, used as reference values.

use crate::error::{Error, Result};
use crate::numerics::Real;

/// `Z_n ≈ C G^n F^{n²}` in the ferroelectric phase.
#[derive(Clone, Debug, PartialEq)]
pub struct FerroAsymptotics<R> {
    /// `1 - e^{-4γ}`.
    pub c: R,
    /// `e^{γ - t}`.
    pub g: R,
    /// `sinh(t + γ)/sinh 2γ`.
    pub f: R,
    /// `ln(C G^n F^{n²})`; the value itself overflows quickly.
    pub ln_z: R,
}

pub fn ref_asymptotics_ferro<R: Real>(n: usize, t: &R, gamma: &R) -> Result<FerroAsymptotics<R>> {
    if !(gamma.is_positive() && *gamma < *t) {
        return Err(Error::Domain(alloc::format!("need 0 < gamma < t, got t = {t}, gamma = {gamma}")));
    }
    let c = -(-(gamma.clone() * gamma.lit(4.0))).expm1();
    let ln_g = gamma.clone() - t.clone();
    let f = (t.clone() + gamma.clone()).sinh() / (gamma.clone() * gamma.lit(2.0)).sinh();
    let nf = t.int(n as i64);
    let ln_z = c.ln() + nf.clone() * ln_g.clone() + nf.sqr() * f.ln();
    Ok(FerroAsymptotics { c, g: ln_g.exp(), f, ln_z })
}

/// Free energy `F` and exponent `κ` of the disordered phase:
/// `F = π sin(γ-t) sin(γ+t) / (2γ sin 2γ cos(πt/2γ))`, `κ = 1/12 - 2γ²/(3π(π-γ))`.
///
/// `cos(πt/2γ) = sin(π(γ-|t|)/2γ)` vanishes together with `sin(γ-|t|)`; their
/// ratio is taken directly, with the limit `2γ/π` at `|t| = γ`.
pub fn ref_free_energy_disordered<R: Real>(t: &R, gamma: &R) -> Result<(R, R)> {
    let pi = t.pi_like();
    let at = t.abs();
    if !(gamma.is_positive() && *gamma < pi.clone() * pi.lit(0.5) && at <= *gamma) {
        return Err(Error::Domain(alloc::format!("need |t| <= gamma < pi/2, got t = {t}, gamma = {gamma}")));
    }
    let two_g = gamma.clone() * gamma.lit(2.0);
    let d = gamma.clone() - at.clone();
    let ratio = if d.abs().to_f64() <= 1e-4 * gamma.to_f64() {
        // sin(d)/sin(πd/2γ) = (2γ/π)(1 - d²/6)/(1 - (πd/2γ)²/6) + O(d⁴)
        let u = pi.clone() * d.clone() / two_g.clone();
        let six = t.lit(6.0);
        two_g.clone() / pi.clone() * (t.one_like() - d.sqr() / six.clone()) / (t.one_like() - u.sqr() / six)
    } else {
        d.sin() / (pi.clone() * d / two_g.clone()).sin()
    };
    let f = pi.clone() * (gamma.clone() + at).sin() * ratio / (two_g.clone() * two_g.sin());
    let kappa =
        t.one_like() / t.lit(12.0) - gamma.sqr() * t.lit(2.0) / (t.lit(3.0) * pi.clone() * (pi - gamma.clone()));
    Ok((f, kappa))
}
