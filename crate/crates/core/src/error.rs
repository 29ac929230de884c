use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("variable count mismatch: {0} vs {1}")]
    VarCountMismatch(usize, usize),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("non-homogeneous presentation: {0}")]
    NonHomogeneous(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("size cap exceeded: {0}")]
    CapExceeded(String),

    #[error("search budget exceeded: required {required} candidates, budget {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
}

pub type Result<T> = std::result::Result<T, Error>;
