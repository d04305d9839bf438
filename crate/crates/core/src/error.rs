use thiserror::Error;

/// Errors raised by the numerical routines and the serialization layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument for {operation}: {reason}")]
    InvalidArgument {
        operation: &'static str,
        reason: String,
    },

    #[error("f does not change sign on [{left:e}, {right:e}] for m = {m} (f(left) = {f_left:e}, f(right) = {f_right:e})")]
    BracketFailure {
        m: u32,
        left: f64,
        right: f64,
        f_left: f64,
        f_right: f64,
    },

    #[error("bisection for m = {m} did not reach width {tolerance:e} after {iterations} steps")]
    NonConvergence {
        m: u32,
        iterations: usize,
        tolerance: f64,
    },

    #[error("critical-point minimum {critical} disagrees with grid minimum {grid} for m = {m} (relative gap {relative_gap:e})")]
    CrossValidation {
        m: u32,
        critical: f64,
        grid: f64,
        relative_gap: f64,
    },

    #[error("{quantity} = {value} lies outside [0, 1] for m = {m}")]
    OutOfUnitInterval {
        m: u32,
        quantity: &'static str,
        value: f64,
    },

    #[error("rounding of {value} is ambiguous: guarded re-evaluation gave {refined}")]
    RoundingAmbiguous { value: f64, refined: f64 },

    #[error("parse error at line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

impl Error {
    pub(crate) fn invalid(operation: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidArgument {
            operation,
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
