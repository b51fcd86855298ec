//! Error type shared across the toolkit.

use std::path::PathBuf;

use crate::embed::Role;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },

    #[error("duplicate id `{id}` on line {line}")]
    DuplicateId { id: String, line: usize },

    #[error("{0}")]
    InvalidInput(String),

    #[error("cannot normalize a zero-norm vector")]
    ZeroNorm,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimMismatch { expected: usize, got: usize },

    #[error("no embedding for id `{id}` with role {role}")]
    MissingEmbedding { id: String, role: Role },

    #[error("candidate `{id}` ({role}) not present in pool")]
    MissingCandidate { id: String, role: Role },

    #[error("embedding endpoint: {0}")]
    Endpoint(String),

    #[error("endpoint returned {got} vectors for {expected} inputs")]
    CountMismatch { expected: usize, got: usize },

    #[error("embedding cache corrupt: {0}")]
    CorruptCache(String),

    #[error("sample size {n} outside supported range {min}..={max}")]
    SampleSize { n: usize, min: usize, max: usize },

    #[error("sample has zero variance")]
    ZeroVariance,

    #[error("all paired differences are zero")]
    AllZeroDifferences,

    #[error("paired inputs differ in length: {a} vs {b}")]
    LengthMismatch { a: usize, b: usize },

    #[error("training diverged at step {step} (loss {loss})")]
    Diverged { step: u64, loss: f64 },

    #[error("non-finite value in {0}")]
    NonFinite(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
