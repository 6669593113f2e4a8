use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a supported prime (need a prime with 2 <= p <= 61)")]
    InvalidPrime(u64),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("cannot lower tower level from {from} to {to}")]
    LevelDecrease { from: u32, to: u32 },
    #[error("tower level {level} exceeds the configured maximum {max}")]
    LevelCap { level: u32, max: u32 },
    #[error("towers are only defined over F_p(t); got base variables {0:?}")]
    MultivariateTower(Vec<String>),
    #[error("element of level {level} does not live in an extension of level {r}")]
    LevelTooHigh { level: u32, r: u32 },
    #[error("expected {expected} coordinates, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("presentation has no usable variable to solve for")]
    NoLinearVariable,
    #[error("random point sampling gave up after {0} attempts")]
    RetryCapExceeded(usize),
    #[error("unsupported presentation: {0}")]
    UnsupportedPresentation(String),
    #[error("unsupported level r = {0}")]
    UnsupportedLevel(u32),
    #[error("zero has no multiplicative class")]
    ZeroElement,
    #[error("unsupported prime p = {0} for this construction")]
    UnsupportedPrime(u64),
    #[error("the curve construction requires an odd prime, got p = {0}")]
    EvenPrime(u64),
    #[error("unsupported system: {0}")]
    UnsupportedSystem(String),
    #[error("search space of {0} points exceeds the enumeration cap")]
    SpaceTooLarge(u128),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
