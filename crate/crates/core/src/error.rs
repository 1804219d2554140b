use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Error)]
pub enum Error {
    /// Bad arguments: mixed algebras, out-of-range parameters, unknown names.
    #[error("usage error: {0}")]
    Usage(String),
    /// Input data failed a structural invariant.
    #[error("validation error: {0}")]
    Validation(String),
    /// Input is well formed but outside what the engine supports.
    #[error("unsupported input: {0}")]
    Unsupported(String),
    /// An internal invariant was violated; indicates a bug.
    #[error("internal consistency error: {0}")]
    Consistency(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

macro_rules! usage {
    ($($arg:tt)*) => { $crate::error::Error::Usage(format!($($arg)*)) };
}
macro_rules! validation {
    ($($arg:tt)*) => { $crate::error::Error::Validation(format!($($arg)*)) };
}
macro_rules! consistency {
    ($($arg:tt)*) => { $crate::error::Error::Consistency(format!($($arg)*)) };
}
pub(crate) use {consistency, usage, validation};
