use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by corpus parsing, graph construction, and the metric
/// routines. [`Error::is_usage`] separates bad-input conditions from
/// internal failures so callers can map them to exit codes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot read {path}: {source}")]
    InputFile {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },

    #[error("line {line}: duplicate publication id {id:?}")]
    DuplicatePubId { id: String, line: usize },

    #[error("graph is disconnected; pass a single component")]
    Disconnected,

    #[error("{what} requires at least {min} nodes, got {got}")]
    TooSmall {
        what: &'static str,
        min: usize,
        got: usize,
    },

    #[error("edge count {m} out of range for {n} nodes (expected {min}..={max})")]
    EdgeCountOutOfRange {
        n: usize,
        m: usize,
        min: usize,
        max: usize,
    },

    #[error("unknown component id {0}")]
    UnknownComponent(usize),

    #[error("vector dimensions differ: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("rankings share fewer than two scored authors")]
    InsufficientOverlap,

    #[error("roster is empty")]
    EmptyRoster,

    #[error("{0}")]
    InvalidInput(String),
}

impl Error {
    /// True when the error reflects bad user input or data rather than an
    /// internal failure.
    pub fn is_usage(&self) -> bool {
        !matches!(
            self,
            Error::Io(_) | Error::DimensionMismatch(..) | Error::UnknownComponent(_)
        )
    }
}
