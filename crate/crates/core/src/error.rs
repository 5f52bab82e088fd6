use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HiseaError {
    #[error("invalid search space: {0}")]
    InvalidSpace(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("value {value} is outside the bounds of dimension {dim} [{lower}, {upper}]")]
    OutOfBounds {
        dim: usize,
        value: f64,
        lower: f64,
        upper: f64,
    },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("non-finite fitness {fitness} at x = {x:?}")]
    NonFiniteFitness { fitness: f64, x: Vec<f64> },

    #[error("quantile matrices differ in shape: {left:?} vs {right:?}")]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("unknown benchmark function id {0} (valid ids are 1-30)")]
    UnknownFunction(usize),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
}

pub type Result<T, E = HiseaError> = std::result::Result<T, E>;
