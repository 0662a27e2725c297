use thiserror::Error;

use crate::exactalg::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("variable count mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("polynomial division is not exact")]
    NotDivisible,
    #[error("zero polynomial has no {0}")]
    ZeroInput(&'static str),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("enumeration needs {needed} candidates but budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("operation requires a prime field, got {0}")]
    NotPrimeField(Field),
}

pub type Result<T> = std::result::Result<T, Error>;
