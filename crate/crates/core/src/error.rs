use thiserror::Error;

/// Errors produced by constructions, oracles and file parsers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("symbol {symbol} at position {position} exceeds alphabet bound {bound}")]
    SymbolOutOfRange { position: usize, symbol: u64, bound: u64 },

    #[error("index {index} is out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("index set is not strictly increasing")]
    UnsortedIndexSet,

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("input too large: {0}")]
    TooLarge(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("code search failed: {0}")]
    CodeSearch(String),

    #[error("malformed branching program: {0}")]
    Malformed(String),

    #[error("self-check failed: {0}")]
    SelfCheck(String),

    #[error("streaming algorithm state error: {0}")]
    State(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}
