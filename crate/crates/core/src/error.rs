//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("point is not inside the open unit ball (|z| = {norm})")]
    NotInterior { norm: f64 },

    #[error("direction is not a unit vector (|z| = {norm})")]
    NotUnit { norm: f64 },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParam { name: &'static str, reason: String },

    #[error("exact mode requires polynomial inputs")]
    NotPolynomial,

    #[error("evaluation hit a singular point of the symbol")]
    SingularEvaluation,

    #[error("non-finite value produced by integrand at sample point")]
    NonFinite,

    #[error("criterion integral requires p > q (got p = {p}, q = {q})")]
    RequiresPGreaterQ { p: f64, q: f64 },

    #[error("kernel exponent m = {m} must be an integer > n+1+alpha = {bound}")]
    InadmissibleKernelExponent { m: u32, bound: f64 },

    #[error("atom exponent b = {b} must exceed n*max(1,1/p) + (1+alpha)/p = {bound}")]
    InadmissibleAtomExponent { b: f64, bound: f64 },

    #[error("coefficient count {got} does not match lattice node count {expected}")]
    LengthMismatch { got: usize, expected: usize },

    #[error("candidate grid too sparse to certify covering: {0}")]
    CandidatesTooSparse(String),

    #[error("need at least {need} schedule points, got {got}")]
    ScheduleTooShort { need: usize, got: usize },

    #[error("empty metric-ball quadrature")]
    EmptyMetricBall,

    #[error("w-grid contains no usable points (all skipped)")]
    EmptyGrid,
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParam {
            name,
            reason: reason.into(),
        }
    }
}
