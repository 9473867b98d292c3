use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("operands refer to different variable registries")]
    RegistryMismatch,
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes: {0}")]
    ZeroDenominator(String),
    #[error("matrix is singular")]
    Singular,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("function grows at infinity (numerator degree {num} > denominator degree {den})")]
    GrowsAtInfinity { num: usize, den: usize },
    #[error("cannot parse `{0}`")]
    Parse(String),
}
