use thiserror::Error;

/// Errors raised by the arithmetic, algebra and oracle layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SrgError {
    #[error("mixed discriminants: sqrt({left}) and sqrt({right}) cannot be combined")]
    MixedDiscriminant { left: u64, right: u64 },

    #[error("division by zero in Q(sqrt({d}))")]
    DivisionByZero { d: u64 },

    #[error("parameter range violated: {0}")]
    RangeViolation(String),

    #[error("counting identity violated: p(p-a-1) = {lhs} but (n-p-1)c = {rhs}")]
    CountingIdentityViolation { lhs: i128, rhs: i128 },

    #[error("index {index} out of range (expected {expected})")]
    IndexOutOfRange { index: usize, expected: &'static str },

    #[error("exponent must be positive")]
    ZeroExponent,

    #[error("unknown graph `{0}`")]
    UnknownGraph(String),

    #[error("bad Paley modulus {0}: need a prime q = 1 (mod 4) with q <= 101")]
    BadPaleyModulus(u64),

    #[error("matrix order {order} exceeds the size cap {cap}")]
    SizeCapExceeded { order: usize, cap: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = SrgError> = std::result::Result<T, E>;
