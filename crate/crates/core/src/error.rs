use alloc::string::String;

use crate::field::FieldError;
use crate::poly::JetVariable;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Domain errors. Variant names double as the error names reported by the CLI.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("SyntaxError at position {pos}: {msg}")]
    SyntaxError { pos: usize, msg: String },
    #[error("UnknownVariable: {name:?} at position {pos}")]
    UnknownVariable { pos: usize, name: String },
    #[error("BadExponent at position {pos}")]
    BadExponent { pos: usize },
    #[error("MissingCoordinate: no value for {0}")]
    MissingCoordinate(JetVariable),
    #[error("NotBasePolynomial: {0} involves a jet variable of positive order")]
    NotBasePolynomial(String),
    #[error("EmptyInput: at least one polynomial is required")]
    EmptyInput,
    #[error("TooManyMinors: {count} minors exceed the cap of {cap}")]
    TooManyMinors { count: u128, cap: u128 },
    #[error("InvalidMinorSize: k = {k} exceeds min(rows, cols) = {max}")]
    InvalidMinorSize { k: usize, max: usize },
    #[error("DimensionMismatch: {0}")]
    DimensionMismatch(String),
    #[error("ConstantPolynomial: a jet scheme needs a nonconstant equation")]
    ConstantPolynomial,
    #[error("PointNotOnScheme: {0}")]
    PointNotOnScheme(String),
    #[error("NoSmoothPointFound after {attempts} attempts")]
    NoSmoothPointFound { attempts: usize },
    #[error("NotSingularBase: the partial derivative in x{var} is nonzero at the base point")]
    NotSingularBase { var: u32 },
    #[error("InvalidArgument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Short name of the variant, e.g. `"NotSingularBase"`.
    pub fn name(&self) -> &'static str {
        match self {
            Error::Field(FieldError::MixedFields(..)) => "MixedFields",
            Error::Field(FieldError::DivisionByZero) => "DivisionByZero",
            Error::Field(FieldError::NotPrime(_)) => "NotPrime",
            Error::Field(FieldError::BadFieldString(_)) => "BadFieldString",
            Error::SyntaxError { .. } => "SyntaxError",
            Error::UnknownVariable { .. } => "UnknownVariable",
            Error::BadExponent { .. } => "BadExponent",
            Error::MissingCoordinate(_) => "MissingCoordinate",
            Error::NotBasePolynomial(_) => "NotBasePolynomial",
            Error::EmptyInput => "EmptyInput",
            Error::TooManyMinors { .. } => "TooManyMinors",
            Error::InvalidMinorSize { .. } => "InvalidMinorSize",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::ConstantPolynomial => "ConstantPolynomial",
            Error::PointNotOnScheme(_) => "PointNotOnScheme",
            Error::NoSmoothPointFound { .. } => "NoSmoothPointFound",
            Error::NotSingularBase { .. } => "NotSingularBase",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }
}
