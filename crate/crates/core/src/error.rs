use thiserror::Error;

/// Errors raised anywhere in the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("character {found:?} at position {pos} is not a binary digit")]
    Alphabet { found: char, pos: usize },

    #[error("word of length {len} exceeds the maximum of {max}")]
    WordTooLong { len: usize, max: usize },

    #[error("overlapping blocks: {first} and {second}")]
    Overlap { first: String, second: String },

    #[error("blocks do not cover the space: total measure is {measure}")]
    Gap { measure: String },

    #[error("index {index} out of range for size {size}")]
    Index { index: usize, size: usize },

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("not a group: {0}")]
    NotAGroup(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("brick {sub} is not contained in {outer}")]
    Containment { sub: String, outer: String },

    #[error("action mismatch: {0}")]
    ActionMismatch(String),

    #[error("bisection is not full: {0}")]
    NotFull(String),

    #[error("target clopen set is empty")]
    EmptyTarget,

    #[error("part {0} is a unit piece; it has no non-trivial isotropy")]
    ShiftZeroIdentity(String),

    #[error("centrality of {0} is undecided for this group")]
    UnknownCentrality(String),

    #[error("unknown suite {0:?}")]
    UnknownSuite(String),

    #[error("{0}")]
    Io(String),
}

impl Error {
    pub fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
