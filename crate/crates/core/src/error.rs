use thiserror::Error;

/// Every failure the engine can report.
///
/// `NonDivisible`, `ResidualAbsFactor` and `NonIntegral` indicate a bug in the
/// engine itself rather than bad input; the CLI maps them to exit code 1.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("exact division left a nonzero remainder")]
    NonDivisible,
    #[error("character is not decomposable: {0}")]
    NotDecomposable(String),
    #[error("torus embedding mismatch: {0}")]
    EmbeddingMismatch(String),
    #[error("rank {n} exceeds the configured bound {max}")]
    UnsupportedRank { n: usize, max: usize },
    #[error("unsupported group: {0}")]
    UnsupportedGroup(String),
    #[error("invalid irreducible label: {0}")]
    InvalidLabel(String),
    #[error("inconsistent class data: {0}")]
    BadClassData(String),
    #[error("eigenvalues cannot be placed in this block: {0}")]
    BadAssignment(String),
    #[error("absolute-value factors did not cancel: {0}")]
    ResidualAbsFactor(String),
    #[error("multiplicity {0} is not a nonnegative integer")]
    NonIntegral(String),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
}

impl Error {
    /// True for the variants that can only arise from an internal bookkeeping bug.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::NonDivisible | Error::ResidualAbsFactor(_) | Error::NonIntegral(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
