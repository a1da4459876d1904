//! Graded commutative algebras presented by generators and relations.

mod basis;
mod element;
mod quotient;
mod tensor;

pub use basis::{tensor_from_entries, tensor_in_bases, DegreeBasis, DisplayBasis, TableEntry};
pub use element::{GeneratorSet, GradedElement, Monomial};
pub use quotient::{pairing_matrix, IdealGenerator, LinearFunctional, QuotientAlgebra, Truncation};
pub use tensor::{coassociativity_sides, invert_pairing, inverse_transpose_pairing, Tensor, Tensor3};
