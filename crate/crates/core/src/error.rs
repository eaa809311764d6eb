use thiserror::Error;

use crate::ring::AlgInt;

/// Errors raised by the exact arithmetic and reduction routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("d = {0} is not a squarefree positive integer")]
    InvalidDiscriminant(i64),
    #[error("the ideal generated by (0, 0) has no norm")]
    ZeroIdeal,
    #[error("{0} and {1} do not generate the unit ideal")]
    NotCoprime(AlgInt, AlgInt),
    #[error("bounded Bezout requires nonzero arguments")]
    ZeroBezoutArgument,
    #[error("matrix has determinant {0}, expected 1")]
    BadDeterminant(String),
    #[error("form is not positive definite")]
    NotPositiveDefinite,
    #[error("point has nonpositive height coordinate")]
    NonPositiveHeight,
    #[error("projective point (0 : 0)")]
    ZeroProjectivePoint,
    #[error("ideal <{0}, {1}> is not principal")]
    NotPrincipal(AlgInt, AlgInt),
    #[error("sharpness family is defined for n >= 2, got {0}")]
    SharpnessIndex(i64),
    #[error("height bound T^2 = {0} is below 1")]
    HeightBoundTooSmall(i64),
    #[error("need at least 4 rows with increasing T to fit growth, got {0}")]
    TooFewRows(usize),
    #[error("exact inequality violated: {0}")]
    InequalityViolated(String),
    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
