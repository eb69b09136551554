use thiserror::Error;

/// Errors surfaced by constructors, checkers and the CLI.
#[derive(Debug, Error)]
pub enum Error {
    /// A group specification outside the supported table (family, rank).
    #[error("invalid group spec: {0}")]
    InvalidSpec(String),

    /// A requested case the catalogue does not cover.
    #[error("unsupported case: {0}")]
    Unsupported(String),

    /// A spectral value at which the requested object is singular.
    /// Names the factor that vanishes.
    #[error("singular spectral value: {0} vanishes")]
    Singular(String),

    /// Expression could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    /// Evaluation hit a pole (zero denominator).
    #[error("evaluation pole: {0}")]
    Pole(String),

    /// An identity check failed; carries a witness describing where.
    #[error("check failed: {0}")]
    CheckFailed(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
