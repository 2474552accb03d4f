//! Error type shared across the crate.

use std::path::PathBuf;

/// Errors returned by index construction, queries, scoring, and data loading.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dataset is empty")]
    EmptyDataset,

    #[error("points must have at least one coordinate")]
    ZeroDimension,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("non-finite value in row {row}")]
    NonFiniteInput { row: usize },

    #[error("non-finite value in query point")]
    NonFiniteQuery,

    #[error("k must be at least 1")]
    InvalidK,

    #[error("k = {k} too large: at most {max} neighbours available")]
    KTooLarge { k: usize, max: usize },

    #[error("row index {row} out of bounds for {len} rows")]
    RowOutOfBounds { row: usize, len: usize },

    #[error("dataset too small: {n} rows, need at least {min}")]
    DatasetTooSmall { n: usize, min: usize },

    #[error("inputs and outputs differ in length: {inputs} vs {outputs}")]
    LengthMismatch { inputs: usize, outputs: usize },

    #[error("feature column {column} is constant; cannot standardize")]
    ConstantFeature { column: usize },

    #[error("sweep contains no results")]
    EmptySweep,

    #[error("failed to read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("parse error in row {row}: {message}")]
    Parse { row: usize, message: String },

    #[error("column {name:?} not found in header")]
    MissingColumn { name: String },

    #[error("non-numeric cell in row {row}, column {column:?}")]
    NonNumericCell { row: usize, column: String },
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
