use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by optimizers, benchmarks and the experiment harness.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("invalid bounds: {0}")]
    InvalidBounds(String),

    #[error("non-finite component at index {index}: {value}")]
    NonFinite { index: usize, value: f64 },

    #[error("objective returned {value} at point {point:?}")]
    ObjectiveNotFinite { point: Vec<f64>, value: f64 },

    #[error("evaluation budget of {limit} exhausted")]
    BudgetExhausted { limit: u64 },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("unknown benchmark `{0}`")]
    UnknownBenchmark(String),

    #[error("unknown algorithm `{0}`")]
    UnknownAlgorithm(String),

    #[error("invalid config: {0}")]
    Config(String),

    #[error("benchmark `{name}` failed its self-consistency check: {reason}")]
    InconsistentBenchmark { name: String, reason: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
