//! Shared error type for the engine.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("constant term must be {expected}, found {found}")]
    BadConstantTerm { expected: String, found: String },
    #[error("not a Lie element")]
    NotLie,
    #[error("splitting requires degree >= 2, got {0}")]
    DegreeTooLow(usize),
    #[error("zero total weight on multigrade {0}")]
    ZeroWeight(String),
    #[error("generator {0} must occur exactly once; polarize first")]
    NotMultiplicityFree(String),
    #[error("empty word has no Lie projection")]
    EmptyWord,
    #[error("generator index {0} out of range for alphabet of size {1}")]
    BadGenerator(usize, usize),
    #[error("{0}")]
    Invalid(String),
}
