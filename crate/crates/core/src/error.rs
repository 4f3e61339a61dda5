use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("symbol {symbol} is outside the alphabet 0..{alphabet}")]
    UnknownSymbol { symbol: i64, alphabet: usize },

    #[error("automata have different alphabets ({0} vs {1} symbols)")]
    AlphabetMismatch(usize, usize),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("missing section `{0}`")]
    MissingSection(String),

    #[error("search space of {size} exceeds the oracle cap of {cap}")]
    OracleCap { size: u128, cap: u128 },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }
}
