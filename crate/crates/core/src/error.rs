use std::fmt;

/// Who made a move: the robber or a cop (by index).
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mover {
    Robber,
    Cop(usize),
}

impl fmt::Display for Mover {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mover::Robber => write!(f, "robber"),
            Mover::Cop(i) => write!(f, "cop {i}"),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("illegal move by {mover}: {reason}")]
    IllegalMove { mover: Mover, reason: String },
    #[error("strategy misuse: {0}")]
    StrategyMisuse(String),
    #[error("ambiguous lift: coordinate {coord} is antipodal to the reference")]
    AmbiguousLift { coord: usize },
    #[error("ray through the star center is undefined")]
    UndefinedRay,
    #[error("search failure: {0}")]
    SearchFailure(String),
    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),
    #[error("config error: {0}")]
    Config(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}

pub(crate) fn misuse<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::StrategyMisuse(msg.into()))
}
