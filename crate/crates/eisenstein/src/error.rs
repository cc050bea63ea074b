use num_bigint::BigUint;
use thiserror::Error;

use crate::int::EisensteinInt;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by ring operations, factorization, and the scan harness.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("{0} is undefined at zero")]
    ZeroInput(&'static str),

    #[error("{divisor} does not divide {value}")]
    NotDivisible {
        value: EisensteinInt,
        divisor: EisensteinInt,
    },

    #[error("gcd(0, 0) is undefined")]
    GcdOfZeros,

    #[error("{0} is not a rational prime")]
    CompositeInput(BigUint),

    #[error("input too large to factor: effort bound of {effort} rho iterations exceeded")]
    FactorEffortExceeded { effort: u64 },

    #[error("the odd-perfect structure check requires an odd input; {0} is even")]
    EvenInput(EisensteinInt),

    #[error("k = {k}: residue class k mod 12 is {found}, the construction requires 11")]
    EuclidResidue { k: u64, found: u64 },

    #[error("k = {k}: M_{k} is not an Eisenstein Mersenne prime")]
    EuclidNotMersennePrime { k: u64 },

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("checkpoint: {0}")]
    Checkpoint(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Parse failure for the Eisenstein text format, carrying the byte offset of
/// the offending character.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(position: usize, message: impl Into<String>) -> Self {
        ParseError {
            position,
            message: message.into(),
        }
    }
}
