//! Error taxonomy shared by every module.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Shape disagreement between operands.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// Input outside the mathematical domain of the operation
    /// (zero matrix where nonzero is required, K < 1, and so on).
    #[error("domain error: {0}")]
    Domain(String),

    /// A stated precondition was violated; the message names the
    /// violated tolerance or property.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Structural validation of an externally supplied object failed.
    #[error("validation error: {0}")]
    Validation(String),

    /// File or JSON ingestion failure.
    #[error("parse error: {0}")]
    Parse(String),

    /// An allocation or size limit was exceeded.
    #[error("resource error: {0}")]
    Resource(String),

    /// Perfect mixer: the channel has no spectral defect to witness.
    #[error("degenerate instance: {0}")]
    Degenerate(String),

    /// A runtime-checked guarantee of the extraction pipeline failed.
    /// Carries the best candidate's achieved value and the required
    /// threshold for diagnosis.
    #[error("contract violation in {context}: achieved {achieved}, required {required}")]
    ContractViolation {
        context: String,
        achieved: f64,
        required: f64,
    },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn dimension(msg: impl Into<String>) -> Self {
        Error::Dimension(msg.into())
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub fn degenerate(msg: impl Into<String>) -> Self {
        Error::Degenerate(msg.into())
    }

    pub fn contract(context: impl Into<String>, achieved: f64, required: f64) -> Self {
        Error::ContractViolation {
            context: context.into(),
            achieved,
            required,
        }
    }
}
