use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("sequence must have at least one term")]
    EmptySequence,

    #[error("index {index} is below valid_from {valid_from}")]
    BelowValidFrom { index: usize, valid_from: usize },

    #[error("index {index} is out of range for a sequence of length {len}")]
    OutOfRange { index: usize, len: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    /// `λ + n = 0` at the named index, so the weights are undefined from `n` on.
    #[error("lambda = {lambda} is a forbidden shift at n = {n}")]
    ForbiddenShift { lambda: String, n: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid rational literal {0:?}")]
    InvalidLiteral(String),

    #[error("unknown identity {0:?}")]
    UnknownIdentity(String),

    #[error("identity {0:?} is already registered")]
    DuplicateIdentity(String),

    #[error("parameter error: {0}")]
    Parameter(String),
}
