use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid bounds: {0}")]
    InvalidBounds(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("non-finite coordinate {value} at index {index}")]
    NonFinitePosition { index: usize, value: f64 },

    #[error("unknown benchmark `{0}`")]
    UnknownBenchmark(String),

    #[error("statistics error: {0}")]
    Statistics(String),

    #[error("weight vector has length {actual}, expected {expected}")]
    Encoding { expected: usize, actual: usize },

    #[error("{path}: line {line}: {message}")]
    Ingestion {
        path: PathBuf,
        line: u64,
        message: String,
    },

    #[error("{path}: line {line}: expected {expected} columns, found {found}")]
    Schema {
        path: PathBuf,
        line: u64,
        expected: usize,
        found: usize,
    },

    #[error(transparent)]
    Budget(#[from] BudgetExhausted),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// Raised when an evaluation is requested after the budget is spent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("evaluation budget of {max_eval} exhausted")]
pub struct BudgetExhausted {
    pub max_eval: u64,
}
