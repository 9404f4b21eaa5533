use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Input outside an operation's domain (bad vertex, bad n, bad k, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Partition has the wrong number of Z edges for a theorem-mode operation.
    #[error(
        "mode error: expected |Z| = {expected} (theorem mode for n = {n}), got |Z| = {actual}"
    )]
    Mode {
        n: usize,
        expected: usize,
        actual: usize,
    },

    /// Text input could not be parsed. Line and column are 1-based.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// Request is structurally valid but outside the supported range.
    #[error("refused: {0}")]
    Refused(String),

    #[error("checkpoint error: {0}")]
    Checkpoint(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
