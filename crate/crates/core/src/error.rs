use thiserror::Error;

/// Errors raised by the geometric and numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A mathematical precondition failed (zero weight, degenerate
    /// velocity, curve touching a rotation axis, infeasible constraint...).
    #[error("domain error: {0}")]
    Domain(String),
    /// The caller passed arguments that are inconsistent with the operation.
    #[error("usage error: {0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}
