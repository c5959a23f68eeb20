use thiserror::Error;

use crate::word::Operator;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("empty content under {0} is only allowed in unital mode")]
    EmptyContent(Operator),
    #[error("the unit `1` is only allowed in unital mode")]
    UnitInNonunital,
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("invalid alphabet: {0}")]
    Alphabet(String),
    #[error("inconsistent system: contains the nonzero constant {0}")]
    Inconsistent(String),
    #[error("rewriting exceeded the step budget of {0}")]
    BudgetExceeded(usize),
    #[error("rewrite step did not decrease the word {0}")]
    NonDescending(String),
    #[error("unknown system `{0}`")]
    UnknownSystem(String),
    #[error("system `{0}` needs a nonzero weight lambda")]
    ZeroWeight(String),
    #[error("`{name}` takes {expected} arguments, got {got}")]
    Arity { name: String, expected: usize, got: usize },
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn syntax(pos: usize, msg: impl Into<String>) -> Error {
        Error::Syntax { pos, msg: msg.into() }
    }
}
