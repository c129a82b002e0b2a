use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("non-square matrix in {0}")]
    NonSquare(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("naturality square fails at arrow {0}")]
    Naturality(String),
    #[error("relation {relation} fails on representation {rep}")]
    RelationViolated { rep: String, relation: usize },
    #[error("not an idempotent")]
    NotIdempotent,
    #[error("truncation undefined here (degree {0})")]
    TruncationUndefined(i32),
    #[error("enough projectives fails here: {0}")]
    EnoughProjectivesFails(String),
    #[error("empty probe set")]
    EmptyProbeSet,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("search budget exhausted: {0}")]
    BudgetExhausted(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
