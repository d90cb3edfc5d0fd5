use thiserror::Error;

/// Everything that can go wrong across the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("base k must be at least 2, got {0}")]
    InvalidBase(u64),
    #[error("invalid letter {ch:?} at position {pos}")]
    InvalidLetter { pos: usize, ch: char },
    #[error("malformed normal form at position {pos}: {reason}")]
    MalformedNf { pos: usize, reason: String },
    #[error("malformed fractional form at position {pos}: {reason}")]
    MalformedFrac { pos: usize, reason: String },
    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },
    #[error("invalid control expression at position {pos}: {reason}")]
    Control { pos: usize, reason: String },
    #[error("invalid system: {0}")]
    InvalidSystem(String),
    #[error("recurrence fitting failed: {0}")]
    FittingFailure(String),
    #[error("inadmissible case: {0}")]
    InadmissibleCase(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("json: {0}")]
    Json(String),
    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
