use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("argument {z} lies on the branch cut [1, inf); pass a side to disambiguate")]
    BranchCut { z: Complex64 },

    #[error("insufficient data: need at least {needed} samples, got {got}")]
    InsufficientData { needed: usize, got: usize },

    #[error("pole at q = {q}")]
    Pole { q: Complex64 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("Newton iteration did not converge ({reason}); last iterates: {iterates:?}")]
    NoConvergence {
        reason: String,
        iterates: Vec<Complex64>,
    },

    #[error("invalid knot: {0}")]
    InvalidKnot(String),

    #[error("invalid input: {0}")]
    Validation(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Errors caused by bad user input rather than by numerics.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::InvalidKnot(_) | Error::Validation(_) | Error::InsufficientData { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
