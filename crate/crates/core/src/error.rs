use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// An internal consistency check failed (e.g. a derived identity did not hold).
    #[error("inconsistency: {0}")]
    Inconsistent(String),
    /// The space does not satisfy the genericity hypotheses needed for a diagonal metric.
    #[error("non-generic space: {0}")]
    NonGeneric(String),
    /// The brute-force oracle refused a request above its size cap.
    #[error("size cap exceeded: {0}")]
    CapExceeded(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
