//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("probability out of range [0,1]: {0}")]
    ProbabilityRange(f64),

    #[error("value must lie strictly inside (0,1): {0}")]
    OpenUnitInterval(f64),

    #[error("odds product of {a} and {b} is an undefined 0/0 form")]
    UndefinedOdds { a: f64, b: f64 },

    #[error("clip bounds inverted: lo {lo} > hi {hi}")]
    ClipBounds { lo: f64, hi: f64 },

    #[error("row {row}: {message}")]
    CsvRow { row: usize, message: String },

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("dataset is empty")]
    EmptyDataset,

    #[error("degenerate prevalence: dataset must contain both labels with positive weight")]
    SingleClass,

    #[error("prevalence interval requires 0 < a < b < 1, got {a}:{b}")]
    BadInterval { a: f64, b: f64 },

    #[error("quadrature node count must be odd and at least 3, got {0}")]
    BadNodeCount(usize),

    #[error("group {0:?} not found in dataset")]
    UnknownGroup(String),

    #[error("group prevalences are equal; mechanism/label-shift split is not applicable")]
    EqualPrevalences,

    #[error("invalid configuration: {0}")]
    InvalidSpec(String),
}

pub type Result<T> = std::result::Result<T, Error>;
