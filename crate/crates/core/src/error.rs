use std::path::PathBuf;

use thiserror::Error;

use crate::real::Precision;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("courant number {given:?} exceeds the stability bound {bound:?} for this dimensionality")]
    UnstableCourant { given: f64, bound: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("shape mismatch: expected {expected} samples, found {found}")]
    ShapeMismatch { expected: usize, found: usize },

    #[error("invalid material at cell {cell}: {what}")]
    InvalidMaterial { cell: usize, what: &'static str },

    #[error("configuration requests {requested} precision but the engine was instantiated at {engine}")]
    PrecisionMismatch {
        requested: Precision,
        engine: Precision,
    },

    #[error("failed to allocate {bytes} bytes")]
    AllocationFailure { bytes: usize },

    #[error("worker pool initialization failed: {0}")]
    WorkerPool(String),

    #[error("need at least {need} timing samples, got {got}")]
    InsufficientSamples { got: usize, need: usize },

    #[error("{0} must be positive")]
    NonPositiveInput(&'static str),

    #[error("matrix is singular: pivot column {column} is zero on and below the diagonal")]
    SingularMatrix { column: usize },

    #[error("mismatched speedup pair: {0}")]
    MismatchedPair(String),

    #[error("I/O error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed {format} input: {message}")]
    Parse {
        format: &'static str,
        message: String,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

/// Zero-filled buffer whose allocation failure is reported instead of aborting.
pub(crate) fn try_zeroed<T: Clone + Default>(len: usize) -> Result<Vec<T>> {
    let mut v = Vec::new();
    v.try_reserve_exact(len).map_err(|_| Error::AllocationFailure {
        bytes: len.saturating_mul(std::mem::size_of::<T>()),
    })?;
    v.resize(len, T::default());
    Ok(v)
}
