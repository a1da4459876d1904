//! Exact computation of kinematic and additive formulas for invariant
//! valuations on Euclidean space, Hermitian space and space forms.

pub mod algebra;
pub mod error;
pub mod linalg;
pub mod scalar;
pub mod euclid;
pub mod hermitian;
pub mod series;
pub mod space_forms;
pub mod table;
pub mod verify;

pub use error::{AlgebraError, LinalgError, ScalarError};
pub use scalar::{alpha, omega, Coeff, ExactDomain, LambdaScalar, Rational, Scalar};
