use thiserror::Error;

/// Errors raised by the exact and numeric pipelines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("pole: evaluation at q = 0 of a term with negative exponent")]
    PoleAtZero,
    #[error("evaluation point is a pole of the rational function")]
    PoleAtPoint,
    #[error("odd half-power of q cannot be evaluated at negative q0")]
    OddHalfPower,
    #[error("division by zero")]
    DivisionByZero,
    #[error("divisor is not a product of cyclotomic factors and a monomial")]
    NonCyclotomicDivisor,
    #[error("pole-order mismatch: series division by a zero constant term")]
    PoleOrderMismatch,
    #[error("series diverges: terms stopped decreasing after the cutoff")]
    Divergence,
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("inconsistent linear system: {0}")]
    InconsistentSystem(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
