//! Crate-wide error type.

use thiserror::Error;

#[derive(Error, Debug)]
pub enum Error {
    /// An argument fell outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Shapes, sizes, or structural preconditions were violated.
    #[error("structural error: {0}")]
    Structural(String),

    /// A data file could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    /// A run configuration failed validation.
    #[error("config error: {0}")]
    Config(String),

    /// Training or evaluation produced non-finite values.
    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code for the CLI: 1 verification failure, 2 configuration
    /// error, 3 numerical failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::Parse(_) | Error::Structural(_) => 2,
            Error::Numerical(_) => 3,
            _ => 2,
        }
    }
}
