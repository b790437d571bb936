use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("subspace is not contained in the ambient subspace")]
    NotContained,

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("operation requires a tensor of degree at least 1")]
    DegreeZero,

    #[error("operation requires a nonzero vector")]
    ZeroVector,

    #[error("family does not have constant rank off t = 0: generic rank {rank}, expected {expected}")]
    GenericRankDeficient { rank: usize, expected: usize },

    #[error("flat limit did not terminate within {0} reduction steps")]
    NonTermination(usize),

    #[error("curve is identically singular (determinant is zero)")]
    SingularCurve,

    #[error("determinant of the curve is not a monomial c*t^k")]
    NotMonomialDeterminant,

    #[error("Jacobian at the base point has rank {rank}, expected {expected}")]
    JacobianRankDeficient { rank: usize, expected: usize },

    #[error("invalid model parameters: {0}")]
    InvalidModel(String),

    #[error("exact elimination aborted: component of {cells} cells exceeds the guard of {limit}")]
    ResourceGuard { cells: usize, limit: usize },

    #[error("modular ranks disagree across primes: {0:?}")]
    ModularDisagreement(Vec<usize>),

    #[error("prime {0} divides a denominator of the input")]
    BadPrime(u64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),
}
