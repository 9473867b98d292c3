use thiserror::Error;
use ybl_algebra::AlgebraError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum YblError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("invalid composition: {0}")]
    Composition(String),
    #[error("genericity guard: factor {0} vanishes")]
    Degenerate(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// Two computations that must agree did not; always an arithmetic bug.
    #[error("inconsistent computation: {0}")]
    Inconsistent(String),
    #[error("check failed: {0}")]
    Check(String),
}

pub type Result<T> = std::result::Result<T, YblError>;
