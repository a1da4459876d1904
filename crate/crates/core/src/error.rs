use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("inverse of multi-term scalar {0} is not a Laurent polynomial in π")]
    UnsupportedInverse(String),
    #[error("{num} is not divisible by {den} in Q[π, 1/π]")]
    NotDivisible { num: String, den: String },
    #[error("cannot parse integer {0:?}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("inverse leaves the coefficient ring (determinant {0})")]
    NotInRing(String),
    #[error("dimension mismatch: {0}")]
    Shape(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("degree {degree} exceeds the top degree {top} of a strictly truncated algebra")]
    DegreeOverflow { degree: u32, top: u32 },
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("invalid dimension {0}")]
    InvalidDimension(u32),
    #[error("invalid degree {degree} (allowed {allowed})")]
    InvalidDegree { degree: u32, allowed: String },
    #[error("generator mismatch: {0}")]
    GeneratorMismatch(String),
    #[error("linear algebra: {0}")]
    Linalg(#[from] LinalgError),
    #[error("scalar: {0}")]
    Scalar(#[from] ScalarError),
    #[error("{0}")]
    Unsupported(String),
}
