//! Numeric substrate shared by the exact and asymptotic modules.

pub mod bigreal;
pub mod complex;
pub mod contour;
pub mod fit;
pub mod gauss;
pub mod linalg;
pub mod quad;
pub mod real;
pub mod roots;
pub mod zeta;

pub use bigreal::BigReal;
pub use complex::Complex;
pub use contour::{contour_integral, Circle, ClosedContour, Piece};
pub use quad::{integrate_singular, Endpoint, Envelope, Quadrature, Upper};
pub use real::Real;
pub use roots::find_root;
pub use zeta::{zeta_three_halves, ZetaValue};

use crate::error::{Error, Result};

/// Working precision and error targets, passed explicitly to every numeric routine.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PrecisionContext {
    pub bits: u32,
    pub quad_tol: f64,
    pub max_refine: u32,
}

impl PrecisionContext {
    pub fn new(bits: u32, quad_tol: f64, max_refine: u32) -> Result<Self> {
        if bits < 53 {
            return Err(Error::Domain(alloc::format!("precision {bits} bits is below 53")));
        }
        if !(quad_tol > 0.0 && quad_tol < 1.0) {
            return Err(Error::Domain(alloc::format!("quad_tol {quad_tol} outside (0, 1)")));
        }
        Ok(Self { bits, quad_tol, max_refine })
    }

    /// Same tolerances at twice the precision, used for stability checks.
    pub fn doubled(&self) -> Self {
        Self { bits: 2 * self.bits, ..*self }
    }

    pub fn with_tol(&self, quad_tol: f64) -> Self {
        Self { quad_tol, ..*self }
    }

    /// `quad_tol` clamped to what the working precision can deliver.
    pub fn effective_tol(&self) -> f64 {
        self.quad_tol.max(libm::ldexp(64.0, 1 - self.bits as i32))
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        Self { bits: 53, quad_tol: 1e-10, max_refine: 40 }
    }
}
