use thiserror::Error;

use crate::state::StateSpace;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("full Streett automata need n >= 1 and k >= 1 (got n={n}, k={k})")]
    EmptyFamily { n: usize, k: usize },

    #[error("cannot pad index size {current} down to {requested}")]
    PadBelowIndex { current: usize, requested: usize },

    #[error("state space mismatch: {left} vs {right}")]
    SpaceMismatch { left: StateSpace, right: StateSpace },

    #[error("state `{state}` does not exist in {space}")]
    StateOutOfRange { state: String, space: StateSpace },

    #[error("level {level} out of range for a word of length {len}")]
    LevelOutOfRange { level: usize, len: usize },

    #[error("lasso period must be nonempty")]
    EmptyPeriod,

    #[error("property 3 is undefined on the empty word")]
    EmptyWord,

    #[error("full-path enumeration exceeded the cap of {cap} paths")]
    PathCapExceeded { cap: usize },

    #[error("invalid ranking: {0}")]
    InvalidRanking(String),

    #[error("lower bound needs n >= 4 to allocate n0 >= 1 and k0 >= 1 (got n={n})")]
    BoundTooSmall { n: usize },

    #[error("{count} rankings exceed the enumeration budget of {budget}")]
    BudgetExceeded { count: String, budget: u64 },

    #[error("invalid campaign config: {0}")]
    InvalidConfig(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("report error: {0}")]
    Report(String),

    #[error("I/O error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
