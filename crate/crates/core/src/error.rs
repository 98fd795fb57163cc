use alloc::string::String;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("vectors must have at least one coordinate")]
    EmptyVector,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("hyperplane coefficients are all zero")]
    ZeroHyperplane,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("resource guard: {what} needs {requested}, limit is {limit}")]
    GuardExceeded {
        what: &'static str,
        requested: u128,
        limit: u128,
    },
    #[error("not a separating hyperplane of the unit cube")]
    NotSeparatingForm,
    #[error("poset is a chain; it has no separating hyperplane")]
    PosetIsChain,
    #[error("poset is not a {0}")]
    FamilyMismatch(&'static str),
    #[error("unsupported case: {0}")]
    Unsupported(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
