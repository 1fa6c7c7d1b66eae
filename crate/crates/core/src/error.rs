//! Crate-wide error type.

use std::path::PathBuf;

/// All errors produced by this crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Filesystem-level failure.
    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// Malformed feature CSV. Rows and columns are 1-based; row 1 is the header.
    #[error("{path}: row {row}, column {col}: {message}")]
    Csv {
        path: PathBuf,
        row: usize,
        col: usize,
        message: String,
    },

    /// Malformed PPM image file.
    #[error("{path}: {message}")]
    Ppm { path: PathBuf, message: String },

    /// Directory layout problems while ingesting an image dataset.
    #[error("{path}: {message}")]
    ImageDir { path: PathBuf, message: String },

    /// An argument violated an operation's precondition.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Feature dimensionality did not match.
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// A fit operation was handed data it cannot learn from.
    #[error("training failed: {0}")]
    Training(String),

    /// An internal invariant was violated; indicates a bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
