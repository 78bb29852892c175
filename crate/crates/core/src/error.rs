use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The operation is not defined for this size or kind.
    #[error("domain error: {0}")]
    Domain(String),
    /// An input violates the documented precondition of an operation.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// The requested enumeration exceeds the configured budget.
    #[error("resource budget exceeded: {0}")]
    Resource(String),
    /// Malformed text input.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! precondition {
    ($($arg:tt)*) => {
        $crate::error::Error::Precondition(format!($($arg)*))
    };
}

macro_rules! parse_err {
    ($($arg:tt)*) => {
        $crate::error::Error::Parse(format!($($arg)*))
    };
}

pub(crate) use parse_err;
pub(crate) use precondition;
