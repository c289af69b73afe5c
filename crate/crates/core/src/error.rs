use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("space mismatch: operator has 2j = {operator}, state has 2j = {state}")]
    SpaceMismatch { operator: u32, state: u32 },

    #[error("operator is not flagged hermitian")]
    NotHermitian,

    /// Mean spin has (numerically) no component orthogonal to the measurement axis.
    #[error("undefined squeezing direction: denominator {denominator:e} below cutoff")]
    UndefinedDirection { denominator: f64 },

    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("unknown identifier `{name}` at offset {offset}")]
    UnknownIdentifier { name: String, offset: usize },

    #[error("non-finite value F({n}) = {value}")]
    Evaluation { n: u32, value: f64 },

    #[error("config error: {0}")]
    Config(String),
}
