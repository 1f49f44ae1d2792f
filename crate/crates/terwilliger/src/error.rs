use std::path::PathBuf;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("ground set mismatch: |{0}| vs |{1}|")]
    GroundSetMismatch(usize, usize),
    #[error("{what}: index {index} out of range (must be < {bound})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        bound: usize,
    },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("cannot close an empty generator list")]
    EmptyGenerators,
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("infeasible sweep: {0}")]
    InfeasibleSweep(String),
    #[error("verification error: {0}")]
    Verification(String),
    #[error("malformed matrix file: {0}")]
    Format(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
