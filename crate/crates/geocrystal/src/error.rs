use thiserror::Error;

/// Errors raised by the library.
///
/// `Validation` covers bad user input (shapes, indices, malformed points);
/// `Fault` signals an internal inconsistency that should never happen on valid
/// input and carries a witness description.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid shape: {0}")]
    Shape(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("fault: {0}")]
    Fault(String),
}

pub type Result<T> = std::result::Result<T, Error>;
