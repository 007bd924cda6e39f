use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error(
        "Poisson tail mass {tail:.3e} above n_max = {n_max} exceeds tolerance {tolerance:.3e}"
    )]
    TruncationTooTight {
        n_max: usize,
        tail: f64,
        tolerance: f64,
    },

    #[error("symmetric eigendecomposition failed to converge for sector n = {n}")]
    EigensolverFailure { n: usize },

    #[error("series covers [{covered_start}, {covered_end}] but the revival window needs [{needed_start}, {needed_end}]")]
    InsufficientSpan {
        covered_start: f64,
        covered_end: f64,
        needed_start: f64,
        needed_end: f64,
    },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
