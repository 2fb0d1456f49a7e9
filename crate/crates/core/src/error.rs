use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u64),
    #[error("unsupported field size {p}^{m}")]
    UnsupportedSize { p: u32, m: u32 },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("bad index: {0}")]
    BadIndex(String),
    #[error("budget exceeded: {what} needs {needed} steps, cap is {budget}")]
    BudgetExceeded { what: &'static str, needed: String, budget: u128 },
    #[error("matrix has rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("vectors are linearly dependent")]
    LinearlyDependent,
    #[error("inexact division: {0}")]
    ExactnessViolation(String),
    #[error("gamma is not divisible by (q-1)^(n-1): {0}")]
    DivisibilityViolation(String),
    #[error("out of range: {0}")]
    OutOfRange(String),
}

pub type Result<T> = std::result::Result<T, Error>;
