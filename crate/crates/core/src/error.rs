use thiserror::Error;

/// Errors raised by the computations in this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{what}: enumeration needs {required} items but the guard is {guard}")]
    GuardExceeded {
        what: String,
        required: u128,
        guard: u128,
    },

    #[error("insufficient precision: need {required} coefficients, have {available}")]
    InsufficientPrecision { required: usize, available: usize },

    #[error("matrix is not nilpotent")]
    NotNilpotent,

    #[error("incompatible data: {0}")]
    Incompatible(String),

    #[error("series is not a cusp form (constant term {0})")]
    NotCuspForm(String),

    #[error("tolerance exceeded: {0}")]
    ToleranceExceeded(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
