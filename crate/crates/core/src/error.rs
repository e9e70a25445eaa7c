use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field exponent must be at least 1, got {0}")]
    BadExponent(u32),
    #[error("field order {0} exceeds the supported maximum of 2^16")]
    FieldTooLarge(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("division by zero in GF({0})")]
    DivisionByZero(u32),
    #[error("operands belong to different fields GF({0}) and GF({1})")]
    FieldMismatch(u32, u32),
    #[error("{value} is not a canonical element of GF({q})")]
    NotAnElement { value: u64, q: u32 },
    #[error("expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("linear form has no nonzero coefficient")]
    ZeroLinearForm,
    #[error("points are equal as projective points")]
    SamePoint,
    #[error("order {order} outside the valid range {min}..={max}")]
    OrderOutOfRange { order: i64, min: i64, max: i64 },
    #[error("point index {index} out of range (0..{len})")]
    PointIndex { index: usize, len: usize },
    #[error("guard exceeded: {what} needs {needed}, limit is {limit}")]
    GuardExceeded {
        what: &'static str,
        needed: u128,
        limit: u128,
    },
    #[error("linear forms are linearly dependent")]
    DependentForms,
    #[error("witness needs {expected} linear forms, got {got}")]
    WrongFormCount { expected: usize, got: usize },
    #[error("expected {expected} distinct omegas, got {got}")]
    WrongOmegaCount { expected: usize, got: usize },
    #[error("omegas are not pairwise distinct")]
    DuplicateOmega,
    #[error("omega_0 must be nonzero")]
    ZeroOmega0,
    #[error("witness kind does not match the requested code family")]
    WitnessKind,
    #[error("code has dimension zero, minimum distance undefined")]
    ZeroCode,
    #[error("operation requires s {expected}, but d = {d} gives s = {s}")]
    WrongCase {
        expected: &'static str,
        d: i64,
        s: i64,
    },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0} is not an integer")]
    NonIntegral(String),
}

pub type Result<T> = std::result::Result<T, Error>;
