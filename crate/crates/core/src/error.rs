use alloc::string::String;
use core::fmt;

/// Failure modes shared by every numeric stage.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// A parameter lies outside the domain of the operation.
    Domain(String),
    /// Lattice size outside the supported range.
    Size { n: usize, max: usize },
    /// Adaptive refinement hit its cap before meeting the tolerance.
    Refinement { stage: &'static str, last: f64, previous: f64 },
    /// Root finder was handed an interval without a sign change.
    Bracket { lo: f64, hi: f64, g_lo: f64, g_hi: f64 },
    /// The integration contour is too close to a pole or to the evaluation point.
    InvalidContour(String),
    /// A Hankel minor came out non-positive, or two precision levels disagree.
    PrecisionExhausted { stage: &'static str, bits: u32, last: f64, previous: f64 },
    /// A configuration violates the ice rule or the boundary conditions.
    Consistency(String),
    /// Not enough data points for a regression.
    Fit { needed: usize, got: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Domain(msg) => write!(f, "domain error: {msg}"),
            Self::Size { n, max } => write!(f, "lattice size {n} out of range 1..={max}"),
            Self::Refinement { stage, last, previous } => {
                write!(f, "{stage}: refinement failed to converge (last estimates {last:e}, {previous:e})")
            }
            Self::Bracket { lo, hi, g_lo, g_hi } => {
                write!(f, "no sign change on [{lo}, {hi}] (g(lo) = {g_lo:e}, g(hi) = {g_hi:e})")
            }
            Self::InvalidContour(msg) => write!(f, "invalid contour: {msg}"),
            Self::PrecisionExhausted { stage, bits, last, previous } => {
                write!(f, "{stage}: precision exhausted at {bits} bits (last estimates {last:e}, {previous:e})")
            }
            Self::Consistency(msg) => write!(f, "inconsistent configuration: {msg}"),
            Self::Fit { needed, got } => {
                write!(f, "regression needs at least {needed} points, got {got}")
            }
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
