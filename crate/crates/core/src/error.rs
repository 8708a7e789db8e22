use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid index {0:?}: expected a non-negative decimal integer")]
    InvalidIndex(String),

    #[error("digit bound {0} out of range 1..=64")]
    InvalidDigitBound(u32),

    #[error("unknown sequence {0:?}")]
    UnknownSequence(String),

    #[error("oracle table bound {requested} exceeds cap {cap}")]
    OracleBoundExceeded { requested: u64, cap: u64 },

    #[error("{0}")]
    InvalidArgument(String),

    #[error("b-file line {line}: cannot parse {content:?}")]
    BFileParse { line: usize, content: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
