//! Serializable formula tables.

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

/// Normalization of the measure on the motion group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Normalization {
    /// Haar measure pushing forward to Lebesgue measure on the translation part.
    Standard,
    /// Standard measure rescaled so that `k(t^c) = Σ t^a ⊗ t^b`.
    Unit,
    /// Probability measure on the compact group (additive formulas).
    Probability,
}

impl Normalization {
    pub fn tag(self) -> &'static str {
        match self {
            Normalization::Standard => "standard",
            Normalization::Unit => "unit",
            Normalization::Probability => "probability",
        }
    }
}

/// One coefficient: `input ↦ … + coefficient · left ⊗ right + …`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableTerm {
    pub coefficient: Scalar,
    pub input_degree: u32,
    pub input_index: usize,
    pub input_label: String,
    pub left_degree: u32,
    pub left_index: usize,
    pub left_label: String,
    pub right_degree: u32,
    pub right_index: usize,
    pub right_label: String,
    /// Power of the curvature `λ` multiplying the coefficient.
    #[serde(default, skip_serializing_if = "is_zero")]
    pub lambda_power: u32,
}

fn is_zero(x: &u32) -> bool {
    *x == 0
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FormulaTableDocument {
    pub basis: String,
    pub dimension: u32,
    pub group: String,
    pub normalization: String,
    pub operator: String,
    pub terms: Vec<TableTerm>,
}

/// A labelled matrix of exact coefficients.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixDocument {
    pub basis: String,
    pub col_labels: Vec<String>,
    pub dimension: u32,
    pub group: String,
    pub normalization: String,
    pub row_labels: Vec<String>,
    pub rows: Vec<Vec<Scalar>>,
    pub title: String,
}
