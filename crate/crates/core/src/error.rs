use thiserror::Error;

/// Domain errors shared by every module of the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("not a one-unit: {0}")]
    NotOneUnit(String),
    #[error("character horizon exceeded: {0}")]
    HorizonExceeded(String),
    #[error("not locally analytic: {0}")]
    NotAnalytic(String),
    #[error("no admissible pivot for weight {0}")]
    PivotFailure(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    /// Stable machine-readable code used in the JSON error envelope.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InsufficientPrecision(_) => "InsufficientPrecision",
            Error::DivisionByZero => "DivisionByZero",
            Error::NotOneUnit(_) => "NotOneUnit",
            Error::HorizonExceeded(_) => "HorizonExceeded",
            Error::NotAnalytic(_) => "NotAnalytic",
            Error::PivotFailure(_) => "PivotFailure",
            Error::InvalidField(_) => "InvalidField",
            Error::FieldMismatch(_) => "FieldMismatch",
            Error::InvalidInput(_) => "InvalidInput",
            Error::Unsupported(_) => "Unsupported",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
