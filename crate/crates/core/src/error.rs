use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MalError {
    #[error("shape error: {0}")]
    Shape(String),

    #[error("singular matrix")]
    Singular,

    /// The matrix does not have full row rank.
    #[error("matrix has rank {rank}, expected {expected}")]
    Rank { rank: usize, expected: usize },

    #[error("column {0} is zero")]
    ZeroColumn(usize),

    #[error("column index {index} out of range for {m} columns")]
    ColumnIndex { index: usize, m: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("rejection sampling gave up after {attempts} attempts: {what}")]
    SamplingExhausted { attempts: usize, what: String },

    #[error("ideal sampling did not stabilize after {rounds} rounds")]
    NotStabilized { rounds: usize },

    /// Two routes that must agree did not. Always a bug.
    #[error("oracle mismatch: {0}")]
    OracleMismatch(String),

    /// A proven inequality failed on computed data. Always a bug.
    #[error("theorem check failed: {0}")]
    TheoremViolation(String),
}

pub type Result<T> = std::result::Result<T, MalError>;
