use num_bigint::BigUint;
use thiserror::Error;

use crate::ring::MAX_EXPONENT;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring exponent n={0} is outside the supported range 1..={MAX_EXPONENT}")]
    ExponentOutOfRange(u32),

    #[error("operands belong to different rings (Z/2^{left} and Z/2^{right})")]
    MismatchedRings { left: u32, right: u32 },

    #[error("{value} is not a unit modulo 2^{n}")]
    NotAUnit { value: u32, n: u32 },

    #[error("invalid form configuration: {0}")]
    InvalidForm(String),

    #[error("tuple has {got} coordinates, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("tuple has no unit coordinate, so it is not a projective point")]
    NoUnitCoordinate,

    #[error("predicted vertex count {predicted} exceeds the configured cap of {cap}")]
    CapExceeded { predicted: BigUint, cap: usize },

    #[error("formula `{formula}` produced a non-integral term 2^({exponent})")]
    NonIntegralFormula {
        formula: &'static str,
        exponent: String,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
