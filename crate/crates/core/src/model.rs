//! Vertex weights, the anisotropy parameter and the phase diagram.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::numerics::{zeta_three_halves, PrecisionContext, Real};

/// Weights `a` (types 1, 2), `b` (types 3, 4) and `c` (types 5, 6).
#[derive(Clone, Debug, PartialEq)]
pub struct VertexWeights<T> {
    pub a: T,
    pub b: T,
    pub c: T,
}

impl<R: Real> VertexWeights<R> {
    pub fn new(a: R, b: R, c: R) -> Result<Self> {
        if !(a.is_positive() && b.is_positive() && c.is_positive()) {
            return Err(Error::Domain(alloc::format!("weights must be positive, got ({a}, {b}, {c})")));
        }
        Ok(Self { a, b, c })
    }

    /// Weights divided by `c`.
    pub fn reduced(&self) -> Self {
        let one = self.c.one_like();
        Self { a: self.a.clone() / self.c.clone(), b: self.b.clone() / self.c.clone(), c: one }
    }

    pub fn scaled(&self, s: &R) -> Self {
        Self { a: self.a.clone() * s.clone(), b: self.b.clone() * s.clone(), c: self.c.clone() * s.clone() }
    }
}

impl VertexWeights<BigRational> {
    pub fn exact(a: BigRational, b: BigRational, c: BigRational) -> Result<Self> {
        if !(a.is_positive() && b.is_positive() && c.is_positive()) {
            return Err(Error::Domain(alloc::format!("weights must be positive, got ({a}, {b}, {c})")));
        }
        Ok(Self { a, b, c })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Phase {
    Ferroelectric,
    AntiFerroelectric,
    Disordered,
    /// Δ = 1, the boundary between the ferroelectric and disordered phases.
    CriticalFD,
    /// Δ = -1.
    CriticalAFD,
    /// Δ = 0, inside the disordered phase.
    FreeFermion,
}

impl Phase {
    pub fn label(&self) -> &'static str {
        match self {
            Phase::Ferroelectric => "ferroelectric",
            Phase::AntiFerroelectric => "anti-ferroelectric",
            Phase::Disordered => "disordered",
            Phase::CriticalFD => "critical-FD",
            Phase::CriticalAFD => "critical-AFD",
            Phase::FreeFermion => "free-fermion",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PhasePoint<R> {
    pub x: R,
    pub y: R,
    pub delta: R,
    pub phase: Phase,
}

pub fn delta_of<R: Real>(w: &VertexWeights<R>) -> R {
    let (a, b, c) = (&w.a, &w.b, &w.c);
    (a.sqr() + b.sqr() - c.sqr()) / (a.clone() * b.clone() * a.lit(2.0))
}

pub fn delta_exact(w: &VertexWeights<BigRational>) -> BigRational {
    let (a, b, c) = (&w.a, &w.b, &w.c);
    (a * a + b * b - c * c) / (a * b * BigRational::from_integer(BigInt::from(2)))
}

fn phase_of(delta: f64, tol: f64) -> Phase {
    if (delta - 1.0).abs() <= tol {
        Phase::CriticalFD
    } else if (delta + 1.0).abs() <= tol {
        Phase::CriticalAFD
    } else if delta.abs() <= tol {
        Phase::FreeFermion
    } else if delta > 1.0 {
        Phase::Ferroelectric
    } else if delta < -1.0 {
        Phase::AntiFerroelectric
    } else {
        Phase::Disordered
    }
}

/// Phase of `w`. Boundary labels are assigned when Δ is within a few units of
/// roundoff of ±1 or 0.
pub fn classify<R: Real>(w: &VertexWeights<R>) -> PhasePoint<R> {
    let delta = delta_of(w);
    let tol = 16.0 * w.a.epsilon();
    let phase = phase_of(delta.to_f64(), tol);
    PhasePoint { x: w.a.clone() / w.c.clone(), y: w.b.clone() / w.c.clone(), delta, phase }
}

pub fn classify_exact(w: &VertexWeights<BigRational>) -> PhasePoint<BigRational> {
    let delta = delta_exact(w);
    let one = BigRational::one();
    let phase = if delta == one {
        Phase::CriticalFD
    } else if delta == -one.clone() {
        Phase::CriticalAFD
    } else if delta == BigRational::from_integer(BigInt::from(0)) {
        Phase::FreeFermion
    } else if delta > one {
        Phase::Ferroelectric
    } else if delta < -one {
        Phase::AntiFerroelectric
    } else {
        Phase::Disordered
    };
    PhasePoint { x: &w.a / &w.c, y: &w.b / &w.c, delta, phase }
}

/// The `γ > 0` component of the ferroelectric phase:
/// `a = sinh(t - γ)`, `b = sinh(t + γ)`, `c = sinh(2γ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FerroParam<R> {
    pub t: R,
    pub gamma: R,
}

impl<R: Real> FerroParam<R> {
    pub fn new(t: R, gamma: R) -> Result<Self> {
        if !(gamma.is_positive() && gamma < t) {
            return Err(Error::Domain(alloc::format!("need 0 < gamma < t, got t = {t}, gamma = {gamma}")));
        }
        Ok(Self { t, gamma })
    }

    pub fn weights(&self) -> VertexWeights<R> {
        let (t, g) = (&self.t, &self.gamma);
        VertexWeights {
            a: (t.clone() - g.clone()).sinh(),
            b: (t.clone() + g.clone()).sinh(),
            c: (g.clone() * g.lit(2.0)).sinh(),
        }
    }

    /// Lattice spacing `2t - 2γ` of the rescaled variable `x = (2t - 2γ) l`.
    pub fn spacing(&self) -> LatticeSpacing<R> {
        LatticeSpacing { spacing: (self.t.clone() - self.gamma.clone()) * self.t.lit(2.0) }
    }
}

/// Reduced coordinates of a ferroelectric parameter point.
pub fn ferro_reduced<R: Real>(p: &FerroParam<R>) -> Result<PhasePoint<R>> {
    let p = FerroParam::new(p.t.clone(), p.gamma.clone())?;
    let w = p.weights();
    let mut pt = classify(&w.reduced());
    // Δ = cosh 2γ > 1 analytically; keep the label stable at tiny γ.
    if pt.phase == Phase::CriticalFD {
        pt.phase = Phase::Ferroelectric;
    }
    Ok(pt)
}

/// Disordered-phase weights `a = sin(γ - t)`, `b = sin(γ + t)`, `c = sin 2γ`.
pub fn disordered_weights<R: Real>(t: &R, gamma: &R) -> Result<VertexWeights<R>> {
    VertexWeights::new(
        (gamma.clone() - t.clone()).sin(),
        (gamma.clone() + t.clone()).sin(),
        (gamma.clone() * gamma.lit(2.0)).sin(),
    )
}

#[derive(Clone, Debug, PartialEq)]
pub struct LatticeSpacing<R> {
    pub spacing: R,
}

/// A point `a/c = (α-1)/2`, `b/c = (α+1)/2` on the Δ = 1 line.
#[derive(Clone, Debug)]
pub struct CriticalPoint<R> {
    pub alpha: R,
    /// Present when α was given as a rational.
    pub alpha_exact: Option<BigRational>,
    pub r: R,
    pub f: R,
    pub ln_g: R,
}

impl<R: Real> CriticalPoint<R> {
    pub fn weights(&self) -> VertexWeights<R> {
        let half = self.alpha.lit(0.5);
        let one = self.alpha.one_like();
        VertexWeights {
            a: (self.alpha.clone() - one.clone()) * half.clone(),
            b: (self.alpha.clone() + one.clone()) * half,
            c: one,
        }
    }

    pub fn r_exact(&self) -> Option<BigRational> {
        self.alpha_exact.as_ref().map(r_from_alpha)
    }

    pub fn weights_exact(&self) -> Option<VertexWeights<BigRational>> {
        self.alpha_exact.as_ref().map(|a| {
            let half = BigRational::new(1.into(), 2.into());
            let one = BigRational::one();
            VertexWeights { a: (a - &one) * &half, b: (a + &one) * &half, c: one }
        })
    }
}

pub fn r_from_alpha(alpha: &BigRational) -> BigRational {
    let one = BigRational::one();
    (alpha + &one) / (alpha - &one)
}

/// Critical point at real α.
pub fn critical_from_alpha<R: Real>(alpha: &R, ctx: &PrecisionContext) -> Result<CriticalPoint<R>> {
    let one = alpha.one_like();
    if !(*alpha > one) {
        return Err(Error::Domain(alloc::format!("alpha must exceed 1, got {alpha}")));
    }
    let zeta = zeta_three_halves(ctx).as_real(alpha);
    let am1 = alpha.clone() - one.clone();
    let two = alpha.lit(2.0);
    let ln_g = -(zeta * (am1.clone() / (two.clone() * alpha.pi_like())).sqrt());
    Ok(CriticalPoint {
        alpha: alpha.clone(),
        alpha_exact: None,
        r: (alpha.clone() + one.clone()) / am1,
        f: (alpha.clone() + one) / two,
        ln_g,
    })
}

/// Critical point at rational α; `r` is then exact as well.
pub fn critical_from_rational<R: Real>(
    alpha: &BigRational,
    like: &R,
    ctx: &PrecisionContext,
) -> Result<CriticalPoint<R>> {
    if *alpha <= BigRational::one() {
        return Err(Error::Domain(alloc::format!("alpha must exceed 1, got {alpha}")));
    }
    let a = R::from_rational(alpha, like.bits());
    let mut cp = critical_from_alpha(&a, ctx)?;
    cp.r = R::from_rational(&r_from_alpha(alpha), like.bits());
    cp.alpha_exact = Some(alpha.clone());
    Ok(cp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_examples() {
        let w = VertexWeights::new(1.0, 1.0, 1.0).unwrap();
        assert_eq!(delta_of(&w), 0.5);
        let h = core::f64::consts::FRAC_1_SQRT_2;
        let ff = VertexWeights::new(h, h, 1.0).unwrap();
        assert!(delta_of(&ff).abs() < 1e-15);
        assert_eq!(classify(&ff).phase, Phase::FreeFermion);
        assert_eq!(classify(&VertexWeights::new(1.0, 2.0, 1.0).unwrap()).phase, Phase::CriticalFD);
    }

    #[test]
    fn parameterized_phases() {
        let p = FerroParam::new(1.5, 0.5).unwrap();
        let pt = ferro_reduced(&p).unwrap();
        assert_eq!(pt.phase, Phase::Ferroelectric);
        assert!((pt.x - 1.0).abs() < 1e-15);
        assert!((pt.y - 2f64.sinh() / 1f64.sinh()).abs() < 1e-14);
        assert!((pt.delta - 1f64.cosh()).abs() < 1e-14);
        let d = disordered_weights(&0.2, &0.8).unwrap();
        assert_eq!(classify(&d).phase, Phase::Disordered);
        assert!(FerroParam::new(0.5, 0.5).is_err());
    }

    #[test]
    fn critical_point_alpha_three() {
        let ctx = PrecisionContext::default();
        let cp = critical_from_alpha(&3.0, &ctx).unwrap();
        assert_eq!(cp.r, 2.0);
        assert_eq!(cp.f, 2.0);
        assert!((cp.ln_g + 1.473_874_960_045).abs() < 1e-12);
        let w = cp.weights();
        assert_eq!(classify(&w).phase, Phase::CriticalFD);
        assert!(critical_from_alpha(&1.0, &ctx).is_err());
        let ex = critical_from_rational(&BigRational::from_integer(3.into()), &0.0, &ctx).unwrap();
        assert_eq!(ex.r_exact().unwrap(), BigRational::from_integer(2.into()));
        assert_eq!(classify_exact(&ex.weights_exact().unwrap()).phase, Phase::CriticalFD);
    }
}
