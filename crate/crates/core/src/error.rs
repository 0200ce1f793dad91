use thiserror::Error;

/// Failure classes raised by the library.
///
/// The classes are kept distinct so that callers (the CLI in particular) can
/// map them onto separate exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A precondition on the arguments was violated.
    #[error("usage error: {0}")]
    Usage(String),
    /// A computation produced a value that cannot be correct for a valid
    /// input, e.g. a non-integral Betti number.
    #[error("integrity error: {0}")]
    Integrity(String),
    /// An enumeration would exceed its configured budget.
    #[error("resource error: {0}")]
    Resource(String),
    /// User-supplied input could not be read.
    #[error("input error: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Usage(msg.into()))
}

pub(crate) fn integrity<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Integrity(msg.into()))
}
