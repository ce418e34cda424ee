use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("family mismatch: expected {expected}, found {found}")]
    FamilyMismatch { expected: String, found: String },

    #[error("window has {size} elements, above the cap of {cap}")]
    WindowTooLarge { size: u128, cap: usize },

    #[error("{0} is not a word")]
    NotAWord(String),

    #[error("duplicate element {0} in sequence")]
    DuplicateElement(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("{set} is not thick on {window}")]
    NotThick { set: String, window: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("config error at line {line}: {msg}")]
    Config { line: usize, msg: String },

    #[error("config error at key `{key}`: {msg}")]
    ConfigKey { key: String, msg: String },

    #[error("unknown {kind} `{name}`; available: {available}")]
    Unknown {
        kind: &'static str,
        name: String,
        available: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn mismatch(expected: impl ToString, found: impl ToString) -> Self {
        Error::FamilyMismatch {
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }
}
