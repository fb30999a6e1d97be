use thiserror::Error;

/// Errors raised while evaluating or validating sequences.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SeqError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid sequence: {0}")]
    Invalid(String),
}

/// Library-wide error type.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Seq(#[from] SeqError),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("z = {z} lies within the exclusion zone of the pole at {pole}")]
    Pole { z: String, pole: f64 },
    #[error("integrity error: {0}")]
    Integrity(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
