use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at q = 1: {context}")]
    Pole { context: String },
    #[error("cannot orient relation '{relation}': {reason}")]
    Orientation { relation: String, reason: String },
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("inconclusive at degree bound: {0}")]
    Inconclusive(String),
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("2-cocycle identity fails on ({x}, {y}, {z})")]
    Cocycle { x: String, y: String, z: String },
    #[error("parse error in {location}: {message}")]
    Parse { location: String, message: String },
    #[error("validation error: {0}")]
    Validation(String),
    #[error("unknown generator '{0}'")]
    UnknownGenerator(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
