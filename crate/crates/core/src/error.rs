use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the library. Every variant describes a problem with the
/// caller's inputs except [`Error::Io`] on writes and the serialization
/// wrappers, which the CLI treats as internal failures.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty estimation support")]
    EmptySupport,

    #[error("dimension mismatch: {left_rows}x{left_cols} vs {right_rows}x{right_cols}")]
    DimensionMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    #[error("non-finite value {value} at pixel (row {row}, col {col})")]
    NonFinite { row: usize, col: usize, value: f64 },

    #[error("symbol {value} out of range for alphabet of size {alphabet_size}")]
    SymbolOutOfRange { value: u32, alphabet_size: usize },

    #[error("invalid information decomposition: I(C;X) = {i_cx} exceeds H(C) = {h_c}")]
    InvalidDecomposition { h_c: f64, i_cx: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cube size mismatch for {path}: expected {expected} bytes, found {actual}")]
    SizeMismatch { path: PathBuf, expected: u64, actual: u64 },

    #[error("invalid cube header: {0}")]
    Header(String),

    #[error("invalid ground truth: {0}")]
    GroundTruth(String),

    #[error("invalid synthetic spec: {0}")]
    Spec(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn dims(left: (usize, usize), right: (usize, usize)) -> Self {
        Error::DimensionMismatch {
            left_rows: left.0,
            left_cols: left.1,
            right_rows: right.0,
            right_cols: right.1,
        }
    }
}
