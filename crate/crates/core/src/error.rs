use thiserror::Error;

/// Errors raised by the arithmetic, geometry and evaluation layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("prime {0} is above the supported bound {max}", max = crate::arith::MAX_PRIME)]
    PrimeTooLarge(u64),
    #[error("values over different cyclotomic orders: {0} and {1}")]
    OrderMismatch(u32, u32),
    #[error("residue {k} is out of range for p = {p}")]
    ResidueOutOfRange { p: u32, k: u64 },
    #[error("{j} is not a unit modulo {p}")]
    NotUnit { p: u32, j: u64 },
    #[error("side mismatch: expected {expected}, found {found}")]
    SideMismatch {
        expected: &'static str,
        found: &'static str,
    },
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: u8, found: u8 },
    #[error("the zero function has no support profile")]
    ZeroFunction,
    #[error("function takes non-rational values")]
    NonRational,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    InvalidParameter(String),
    #[error("search space has {candidates} candidates, above the exhaustive ceiling {ceiling}")]
    CeilingExceeded { candidates: u128, ceiling: u128 },
}

pub type Result<T> = std::result::Result<T, Error>;
