use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("subspace is not contained in the enclosing space")]
    NotContained,
    #[error("representations belong to different algebras")]
    AlgebraMismatch,
    #[error("field mismatch: expected {expected}, found {found}")]
    FieldMismatch { expected: String, found: String },
    #[error("subspace is not invariant under the algebra action")]
    NotSubmodule,
    #[error("matrix does not intertwine the two representations")]
    NotHomomorphism,
    #[error("isomorphism search exhausted without a witness or a proof of non-isomorphism")]
    Undecided,
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
    #[error("no lift of the second certificate's map through the first quotient exists")]
    NoLift,
    #[error("a simple subquotient is not one-dimensional")]
    SimpleNotOneDimensional,
    #[error("composition vectors differ: {0}")]
    VectorMismatch(String),
    #[error("field has at most {0} elements and exhaustive search is disabled")]
    FieldTooSmall(usize),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("no adapted basis vector available at index {index}")]
    NoAdaptedBasis { index: usize },
    #[error("parameter t = {0} lies outside the good set")]
    BadParameter(String),
    #[error("deformed representation is not upper triangular")]
    TriangularityViolated,
    #[error("enumeration too large: {0}")]
    TooLarge(String),
    #[error("representation is not block diagonal at the requested split")]
    NotBlockDiagonal,
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Stable machine-readable tag, used for structured CLI errors and FFI codes.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::NotContained => "NotContained",
            Error::AlgebraMismatch => "AlgebraMismatch",
            Error::FieldMismatch { .. } => "FieldMismatch",
            Error::NotSubmodule => "NotSubmodule",
            Error::NotHomomorphism => "NotHomomorphism",
            Error::Undecided => "Undecided",
            Error::InternalInvariantViolation(_) => "InternalInvariantViolation",
            Error::NoLift => "NoLift",
            Error::SimpleNotOneDimensional => "SimpleNotOneDimensional",
            Error::VectorMismatch(_) => "VectorMismatch",
            Error::FieldTooSmall(_) => "FieldTooSmall",
            Error::VerificationFailed(_) => "VerificationFailed",
            Error::NoAdaptedBasis { .. } => "NoAdaptedBasis",
            Error::BadParameter(_) => "BadParameter",
            Error::TriangularityViolated => "TriangularityViolated",
            Error::TooLarge(_) => "TooLarge",
            Error::NotBlockDiagonal => "NotBlockDiagonal",
            Error::Parse { .. } => "ParseError",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }
}
