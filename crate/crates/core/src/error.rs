use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),

    #[error("rank {0} outside supported range 2..={max}", max = crate::laurent::MAX_RANK)]
    UnsupportedRank(usize),

    #[error("generator index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("zero polynomial has no leading form")]
    ZeroInput,

    #[error("element is not in the derived subgroup")]
    NotDerived,

    #[error("element has depth {actual}, need at least {required}")]
    DepthTooSmall { required: u32, actual: String },

    #[error("endomorphism does not act trivially on the abelianization")]
    NotIa,

    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),

    #[error("matrix is singular")]
    Singular,

    #[error("matrix is not invertible over the integers")]
    NotUnimodular,

    #[error("expected {expected} generator images, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("linear system has no integral solution: {0}")]
    Inconsistent(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
