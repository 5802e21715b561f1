use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by the interpolation library.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the domain where the operation is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// A value is not finite where a finite value is required.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A result cannot be represented in binary64.
    #[error("range error: {0}")]
    Range(String),

    /// A precondition on the inputs of an evaluator does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The configuration cannot deliver the required precision.
    #[error("configuration error: {0}")]
    Config(String),

    /// A numerical invariant that the algorithms rely on was observed to fail.
    #[error("numeric invariant violated: {0}")]
    Invariant(String),

    /// The denominator of a barycentric quotient evaluated to zero.
    #[error("evaluation error: {0}")]
    Evaluation(String),

    #[error("malformed file {path}: line {line}: {message}")]
    Format {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
