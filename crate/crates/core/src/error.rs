use thiserror::Error;

/// Errors raised by the engine.
///
/// Each variant maps onto one CLI exit code, see [`Error::exit_code`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Values live in different rings or free modules, or weights disagree.
    #[error("structural mismatch: {0}")]
    Structural(String),
    /// Malformed user input: bad partitions, unknown edges, dangling ids.
    #[error("validation error: {0}")]
    Validation(String),
    /// An enumeration or expansion would exceed its configured cap.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    /// A certificate failed verification.
    #[error("certificate rejected at {path}: {reason}")]
    Rejected { path: String, reason: String },
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Rejected { .. } => 1,
            Error::Structural(_) | Error::Validation(_) => 2,
            Error::Resource(_) => 3,
        }
    }

    /// Prefixes the message with `what`, keeping the kind.
    pub fn context(self, what: impl std::fmt::Display) -> Error {
        match self {
            Error::Structural(m) => Error::Structural(format!("{what}: {m}")),
            Error::Validation(m) => Error::Validation(format!("{what}: {m}")),
            Error::Resource(m) => Error::Resource(format!("{what}: {m}")),
            Error::Rejected { path, reason } => Error::Rejected { path, reason: format!("{what}: {reason}") },
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

macro_rules! structural {
    ($($arg:tt)*) => { $crate::error::Error::Structural(format!($($arg)*)) };
}
macro_rules! invalid {
    ($($arg:tt)*) => { $crate::error::Error::Validation(format!($($arg)*)) };
}
pub(crate) use {invalid, structural};
