use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum QhaError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("grid alignment: {0}")]
    GridAlignment(String),

    #[error("domain error: {0}")]
    Domain(String),

    /// The premise of a bound does not hold for the given input.
    #[error("hypothesis violation: {0}")]
    HypothesisViolation(String),

    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },

    #[error("malformed file at byte offset {offset}: {message}")]
    Format { offset: u64, message: String },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, QhaError>;

pub(crate) fn invalid(msg: impl Into<String>) -> QhaError {
    QhaError::InvalidParameter(msg.into())
}
