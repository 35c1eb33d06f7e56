use std::io;
use std::path::PathBuf;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Shingle length must be at least one character.
    #[error("shingle length k must be >= 1")]
    InvalidK,

    /// The similarity threshold must lie in (0, 1].
    #[error("threshold must be in (0, 1], got {0}")]
    InvalidThreshold(f64),

    /// Two profiles built with different k were compared; the corpus was
    /// built inconsistently.
    #[error("profiles were built with different shingle lengths: {doc_a} has k={k_a}, {doc_b} has k={k_b}")]
    ShingleLengthMismatch {
        doc_a: String,
        doc_b: String,
        k_a: usize,
        k_b: usize,
    },

    /// The corpus root could not be opened at all.
    #[error("cannot read corpus root {path}: {source}")]
    CorpusRoot {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    /// I/O failure on an output or cache path.
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    /// A profile cache file is malformed.
    #[error("invalid profile cache (line {line}): {reason}")]
    CacheFormat { line: usize, reason: String },

    /// A profile cache was produced with a different configuration than the
    /// one this run uses.
    #[error("profile cache mismatch: cache has {field}={cached}, run config has {field}={requested}")]
    CacheMismatch {
        field: &'static str,
        cached: String,
        requested: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
