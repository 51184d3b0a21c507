//! Error type shared by every module.

use thiserror::Error;

/// Errors raised by map evaluation, assembly, spectral analysis and the front end.
#[derive(Debug, Error)]
pub enum Error {
    /// A numeric input was NaN, infinite or outside its admissible set.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A point lies outside the domain where the quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// Inconsistent or out-of-range configuration.
    #[error("configuration error: {0}")]
    Config(String),

    /// A configuration or data file could not be parsed.
    #[error("parse error at line {line}: {message}")]
    Parse {
        /// One-based line number of the offending input.
        line: usize,
        /// What went wrong.
        message: String,
    },

    /// A sampled supremum could not be formed.
    #[error("estimation failure: {0}")]
    Estimation(String),

    /// A calibrated constant violated its defining inequality on a sample.
    #[error("calibration failure at z = {re:+.17e}{im:+.17e}i: {message}")]
    Calibration {
        /// Real part of the witness point.
        re: f64,
        /// Imaginary part of the witness point.
        im: f64,
        /// Which inequality failed and by how much.
        message: String,
    },

    /// Two computations that must agree did not.
    #[error("inconsistency: {0}")]
    Inconsistency(String),

    /// An index was outside the available range.
    #[error("index {index} out of range (length {len})")]
    Index {
        /// Requested one-based index.
        index: usize,
        /// Available length.
        len: usize,
    },

    /// A requested range of indices is empty.
    #[error("empty range: {0}")]
    Range(String),

    /// Too few data points survived filtering.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// A numerical routine failed to converge.
    #[error("computation failed: {0}")]
    Computation(String),

    /// Filesystem failure.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    /// JSON serialization failure.
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

/// Result alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit status: 2 for configuration and parse problems, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::Parse { .. } | Error::InvalidInput(_) => 2,
            _ => 1,
        }
    }
}
