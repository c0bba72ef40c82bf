//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by state validation, spectral routines and scenario
/// configuration.
#[derive(Debug, Error)]
pub enum Error {
    /// Matrix fails the per-entry hermiticity check `|a_ij - conj(a_ji)| <= 1e-12`.
    #[error("matrix is not Hermitian (max entry violation {max_violation:.3e})")]
    NotHermitian { max_violation: f64 },

    /// Jacobi sweep cap reached before the off-diagonal norm fell below threshold.
    #[error("eigensolver did not converge (off-diagonal residual {residual:.3e})")]
    NoConvergence { residual: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// Trace far from 1 or an eigenvalue below the clipping tolerance.
    #[error("invalid density matrix: {reason}")]
    InvalidDensity { reason: String },

    #[error("domain error: {0}")]
    Domain(String),

    /// Classical gases at unequal particle densities N/V.
    #[error("pressure mismatch: {0}")]
    PressureMismatch(String),

    /// Mixture or majorization weights not positive / not normalized.
    #[error("weight error: {0}")]
    Weight(String),

    /// A stated precondition (majorization order, weight ordering) fails.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Factorial-cost oracle refused above its dimension guard.
    #[error("dimension {dim} exceeds enumeration guard {max}")]
    DimensionTooLarge { dim: usize, max: usize },

    /// Scenario configuration rejected; `field` names the offending entry.
    #[error("config error in `{field}`: {message}")]
    Config { field: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn config(field: &str, message: impl Into<String>) -> Self {
        Error::Config {
            field: field.to_string(),
            message: message.into(),
        }
    }

    /// Exit status classification for the CLI: 2 for configuration problems,
    /// 3 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config { .. } => 2,
            _ => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
