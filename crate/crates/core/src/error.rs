use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("inadmissible parameters: {0}")]
    InvalidParams(String),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("unsupported order: {0}")]
    UnsupportedOrder(String),

    #[error("design is not equireplicate: {0}")]
    NotEquireplicate(String),

    #[error("design is not proper: {0}")]
    NotProper(String),

    #[error("not a rectangular design: {0}")]
    NotAnRd(String),

    #[error("nonexistent design: {0}")]
    Nonexistent(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("ineligible input design: {0}")]
    Ineligible(String),

    #[error("construction conflict: {0}")]
    ConstructionConflict(String),

    #[error("construction produced an unverified design: {0}")]
    Verification(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("invalid recipe: {0}")]
    Recipe(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
