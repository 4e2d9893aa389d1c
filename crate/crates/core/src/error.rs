use thiserror::Error;

use crate::complexes::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("coefficient domain mismatch: {left} vs {right}")]
    DomainMismatch { left: String, right: String },

    #[error("{0} is not an element of the coefficient domain")]
    NotInDomain(String),

    #[error("modulus must be prime, got {0}")]
    NonPrimeModulus(u64),

    #[error("{0} is undefined for the zero polynomial")]
    ZeroPolynomial(&'static str),

    #[error("division is not exact")]
    InexactDivision,

    #[error("exponent overflow")]
    ExponentOverflow,

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("shape error: {0}")]
    Shape(String),

    #[error("invalid chain complex: {0}")]
    InvalidComplex(Violation),

    #[error("{0}")]
    Validation(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
}

impl Error {
    pub(crate) fn rank(expected: usize, found: usize) -> Self {
        Error::RankMismatch { expected, found }
    }
}
