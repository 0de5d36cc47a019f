use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("ambient dimension mismatch: {left} vs {right}")]
    Ambient { left: usize, right: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("numeric domain error: {0}")]
    Domain(String),

    #[error("invalid sign case {0:?}, expected three of '+'/'-' such as \"+-+\"")]
    SignCase(String),

    #[error("unknown generator {0:?}")]
    Generator(String),

    #[error("parse error in {input:?}: {msg}")]
    Parse { input: String, msg: String },

    #[error("basis mismatch: expected {expected}, found {found}")]
    Basis { expected: String, found: String },

    #[error("overlapping generator pairs in exchange")]
    OverlappingExchange,

    #[error("word of degree {degree} exceeds truncation {max}")]
    Degree { degree: usize, max: usize },

    #[error("truncation degree {0} exceeds the supported ceiling of 5")]
    TruncationTooLarge(usize),

    #[error("missing derivation for case {0}")]
    MissingCase(String),

    #[error("fixture {name}: {msg}")]
    Fixture { name: String, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(input: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::Parse {
            input: input.into(),
            msg: msg.into(),
        }
    }
}
