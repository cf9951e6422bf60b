use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("incompatible fields: {0}")]
    IncompatibleFields(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("zero element where a unit is required")]
    ZeroElement,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("enumeration budget exceeded: {0}")]
    Budget(String),
    #[error("division is not exact: {0}")]
    NotExact(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
