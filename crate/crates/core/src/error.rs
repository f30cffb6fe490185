use std::io;

use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// Each variant maps onto one of the CLI exit codes (see [`Error::exit_code`]).
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain where the quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),
    /// The request would exceed the supported memory or time envelope.
    #[error("resource error: {0}")]
    Resource(String),
    /// A structural parameter (grid, contour, config) is inconsistent.
    #[error("spec error: {0}")]
    Spec(String),
    /// Malformed user input (flags, config files, CSV).
    #[error("usage error: {0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) | Error::Spec(_) => 2,
            Error::Resource(_) | Error::Io(_) => 3,
            Error::Domain(_) => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
