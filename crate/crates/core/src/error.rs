use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid universe: {0}")]
    InvalidUniverse(String),

    #[error("set {set:#b} does not fit a universe of {n} variables")]
    UniverseMismatch { set: u32, n: usize },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("MVD is not saturated: {0}")]
    NonSaturatedMvd(String),

    #[error("invalid set function: {0}")]
    InvalidSetFunction(String),

    #[error("step function at the full universe is excluded")]
    FullStepFunction,

    #[error("invalid relation: {0}")]
    InvalidRelation(String),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("invalid baskets: {0}")]
    InvalidBaskets(String),

    #[error("unsupported constraint: {0}")]
    UnsupportedConstraint(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("internal error: {0}")]
    Internal(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::InvalidRelation(e.to_string())
    }
}
