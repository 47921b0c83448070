//! Error types shared across the crate.

/// Errors produced by model construction, evaluation, and I/O.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An argument is outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A dataset violates a structural requirement (e.g. `y > m`).
    #[error("data error: {0}")]
    Data(String),

    /// Mismatched dimensions between related quantities.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// An iterative numerical routine failed to converge.
    #[error("numeric failure: {0}")]
    Numeric(String),

    /// Malformed input file or flag value.
    #[error("parse error: {0}")]
    Parse(String),

    /// Underlying I/O failure.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code for the CLI: 2 for validation problems, 3 for
    /// numerical failures.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::Numeric(_) => 3,
            _ => 2,
        }
    }
}
