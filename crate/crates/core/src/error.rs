use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GroverError {
    /// An argument lies outside the operation's domain (index out of range,
    /// dimension mismatch, unnormalized input, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// The request would need more memory than the dense simulator allows.
    #[error("resource error: {0}")]
    Resource(String),
    /// A structural check that must hold mathematically did not.
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
}

pub type Result<T> = std::result::Result<T, GroverError>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(GroverError::Domain(msg.into()))
}
