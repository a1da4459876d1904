use intgeo_core::euclid::TemplateBody;
use intgeo_core::scalar::rational_from_f64;
use intgeo_core::{omega, Rational};
use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::McError;
use crate::minkowski;

/// Compact convex body in `R^n`, closed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ConvexBody {
    Ball { center: Vec<f64>, radius: f64 },
    Box { min: Vec<f64>, max: Vec<f64> },
    Polytope { vertices: Vec<Vec<f64>> },
}

impl ConvexBody {
    pub fn ball(center: Vec<f64>, radius: f64) -> Result<Self, McError> {
        let b = ConvexBody::Ball { center, radius };
        b.validate()?;
        Ok(b)
    }

    pub fn cuboid(min: Vec<f64>, max: Vec<f64>) -> Result<Self, McError> {
        let b = ConvexBody::Box { min, max };
        b.validate()?;
        Ok(b)
    }

    pub fn polytope(vertices: Vec<Vec<f64>>) -> Result<Self, McError> {
        let b = ConvexBody::Polytope { vertices };
        b.validate()?;
        Ok(b)
    }

    /// Unit ball at the origin.
    pub fn unit_ball(n: usize) -> Self {
        ConvexBody::Ball { center: vec![0.0; n], radius: 1.0 }
    }

    /// Box `[-a/2, a/2]^n`.
    pub fn cube(n: usize, side: f64) -> Self {
        ConvexBody::Box { min: vec![-side / 2.0; n], max: vec![side / 2.0; n] }
    }

    pub fn point(p: Vec<f64>) -> Self {
        ConvexBody::Polytope { vertices: vec![p] }
    }

    pub fn dim(&self) -> usize {
        match self {
            ConvexBody::Ball { center, .. } => center.len(),
            ConvexBody::Box { min, .. } => min.len(),
            ConvexBody::Polytope { vertices } => vertices.first().map_or(0, Vec::len),
        }
    }

    pub fn validate(&self) -> Result<(), McError> {
        let bad = |m: &str| Err(McError::InvalidBody(m.to_string()));
        let finite = |v: &[f64]| v.iter().all(|x| x.is_finite());
        match self {
            ConvexBody::Ball { center, radius } => {
                if center.is_empty() || !finite(center) {
                    return bad("ball center must be a nonempty finite vector");
                }
                if !(*radius > 0.0 && radius.is_finite()) {
                    return bad("ball radius must be positive");
                }
            }
            ConvexBody::Box { min, max } => {
                if min.is_empty() || min.len() != max.len() || !finite(min) || !finite(max) {
                    return bad("box corners must be finite vectors of equal length");
                }
                if min.iter().zip(max).any(|(a, b)| a >= b) {
                    return bad("box is degenerate");
                }
            }
            ConvexBody::Polytope { vertices } => {
                let Some(first) = vertices.first() else {
                    return bad("polytope has no vertices");
                };
                if first.is_empty() {
                    return bad("polytope vertices have dimension zero");
                }
                if vertices.iter().any(|v| v.len() != first.len() || !finite(v)) {
                    return bad("polytope vertices must be finite and of equal length");
                }
            }
        }
        Ok(())
    }

    /// A point of the body maximizing `<x, d>`.
    pub fn support(&self, d: &DVector<f64>) -> DVector<f64> {
        match self {
            ConvexBody::Ball { center, radius } => {
                let c = DVector::from_column_slice(center);
                let norm = d.norm();
                if norm == 0.0 {
                    c
                } else {
                    c + d * (*radius / norm)
                }
            }
            ConvexBody::Box { min, max } => {
                DVector::from_fn(min.len(), |i, _| if d[i] >= 0.0 { max[i] } else { min[i] })
            }
            ConvexBody::Polytope { vertices } => {
                let mut best = 0;
                let mut best_val = f64::NEG_INFINITY;
                for (i, v) in vertices.iter().enumerate() {
                    let val: f64 = v.iter().zip(d.iter()).map(|(a, b)| a * b).sum();
                    if val > best_val {
                        best_val = val;
                        best = i;
                    }
                }
                DVector::from_column_slice(&vertices[best])
            }
        }
    }

    /// A ball containing the body: the ball itself, the circumball of a box,
    /// or the vertex centroid with the largest vertex distance.
    pub fn bounding_ball(&self) -> (DVector<f64>, f64) {
        match self {
            ConvexBody::Ball { center, radius } => (DVector::from_column_slice(center), *radius),
            ConvexBody::Box { min, max } => {
                let lo = DVector::from_column_slice(min);
                let hi = DVector::from_column_slice(max);
                let c = (&lo + &hi) * 0.5;
                let r = (hi - lo).norm() * 0.5;
                (c, r)
            }
            ConvexBody::Polytope { vertices } => {
                let n = self.dim();
                let mut c = DVector::zeros(n);
                for v in vertices {
                    c += DVector::from_column_slice(v);
                }
                c /= vertices.len() as f64;
                let r = vertices
                    .iter()
                    .map(|v| (DVector::from_column_slice(v) - &c).norm())
                    .fold(0.0, f64::max);
                (c, r)
            }
        }
    }

    /// Axis-aligned bounding box.
    pub fn bounding_box(&self) -> (DVector<f64>, DVector<f64>) {
        let n = self.dim();
        let lo = DVector::from_fn(n, |i, _| self.support(&-unit(n, i))[i]);
        let hi = DVector::from_fn(n, |i, _| self.support(&unit(n, i))[i]);
        (lo, hi)
    }

    /// Vertices of a polytope or box; `None` for balls.
    pub fn vertices(&self) -> Option<Vec<DVector<f64>>> {
        match self {
            ConvexBody::Ball { .. } => None,
            ConvexBody::Box { min, max } => {
                let n = min.len();
                Some(
                    (0u32..1 << n)
                        .map(|mask| {
                            DVector::from_fn(n, |i, _| if mask & (1 << i) != 0 { max[i] } else { min[i] })
                        })
                        .collect(),
                )
            }
            ConvexBody::Polytope { vertices } => {
                Some(vertices.iter().map(|v| DVector::from_column_slice(v)).collect())
            }
        }
    }

    /// Euclidean distance from `p` to the body, zero inside.
    pub fn distance_to(&self, p: &DVector<f64>) -> f64 {
        match self {
            ConvexBody::Ball { center, radius } => {
                ((p - DVector::from_column_slice(center)).norm() - radius).max(0.0)
            }
            ConvexBody::Box { min, max } => box_distance(min, max, p),
            ConvexBody::Polytope { .. } => {
                let point = ConvexBody::point(p.iter().copied().collect());
                crate::gjk::distance(self, &point, crate::gjk::TOLERANCE)
            }
        }
    }

    /// Lebesgue volume in `R^n`.
    pub fn volume(&self) -> Result<f64, McError> {
        match self {
            ConvexBody::Ball { radius, .. } => Ok(omega(self.dim() as u32).to_f64() * radius.powi(self.dim() as i32)),
            ConvexBody::Box { min, max } => Ok(min.iter().zip(max).map(|(a, b)| b - a).product()),
            ConvexBody::Polytope { .. } => {
                let v = self.vertices().unwrap_or_default();
                minkowski::hull_volume(&v)
            }
        }
    }

    /// The exact template with the same intrinsic volumes, when one exists.
    pub fn template(&self) -> Option<TemplateBody> {
        match self {
            ConvexBody::Ball { radius, .. } => rational_from_f64(*radius).map(TemplateBody::Ball),
            ConvexBody::Box { min, max } => {
                let sides: Option<Vec<Rational>> = min
                    .iter()
                    .zip(max)
                    .map(|(a, b)| Some(rational_from_f64(*b)? - rational_from_f64(*a)?))
                    .collect();
                sides.map(TemplateBody::Box)
            }
            ConvexBody::Polytope { vertices } if vertices.iter().all(|v| v == &vertices[0]) => {
                Some(TemplateBody::Point)
            }
            ConvexBody::Polytope { .. } => None,
        }
    }

    /// Image under `p ↦ R p + t`, as a support function.
    pub fn moved<'a>(&'a self, rotation: &'a DMatrix<f64>, translation: &'a DVector<f64>) -> Moved<'a> {
        Moved { body: self, rotation, translation }
    }
}

/// A body under a rigid motion.
#[derive(Clone, Copy, Debug)]
pub struct Moved<'a> {
    pub body: &'a ConvexBody,
    pub rotation: &'a DMatrix<f64>,
    pub translation: &'a DVector<f64>,
}

impl Moved<'_> {
    pub fn apply(&self, p: &DVector<f64>) -> DVector<f64> {
        self.rotation * p + self.translation
    }

    pub fn apply_inverse(&self, p: &DVector<f64>) -> DVector<f64> {
        self.rotation.tr_mul(&(p - self.translation))
    }
}

/// Support mapping in a fixed dimension.
pub trait Support {
    fn dim(&self) -> usize;
    fn support(&self, d: &DVector<f64>) -> DVector<f64>;
}

impl Support for ConvexBody {
    fn dim(&self) -> usize {
        ConvexBody::dim(self)
    }

    fn support(&self, d: &DVector<f64>) -> DVector<f64> {
        ConvexBody::support(self, d)
    }
}

impl Support for Moved<'_> {
    fn dim(&self) -> usize {
        self.body.dim()
    }

    fn support(&self, d: &DVector<f64>) -> DVector<f64> {
        let local = self.rotation.tr_mul(d);
        self.apply(&self.body.support(&local))
    }
}

/// Orthogonal projection `x ↦ Uᵀx` onto the span of the columns of `U`.
pub struct Projected<'a> {
    pub body: &'a ConvexBody,
    pub frame: DMatrix<f64>,
}

impl Support for Projected<'_> {
    fn dim(&self) -> usize {
        self.frame.ncols()
    }

    fn support(&self, d: &DVector<f64>) -> DVector<f64> {
        let lifted = &self.frame * d;
        self.frame.tr_mul(&self.body.support(&lifted))
    }
}

pub(crate) fn unit(n: usize, i: usize) -> DVector<f64> {
    let mut e = DVector::zeros(n);
    e[i] = 1.0;
    e
}

pub(crate) fn box_distance(min: &[f64], max: &[f64], p: &DVector<f64>) -> f64 {
    min.iter()
        .zip(max)
        .zip(p.iter())
        .map(|((lo, hi), x)| {
            let d = (lo - x).max(x - hi).max(0.0);
            d * d
        })
        .sum::<f64>()
        .sqrt()
}

/// Parses one body or a JSON list of bodies.
pub fn parse_bodies(json: &str) -> Result<Vec<ConvexBody>, McError> {
    let value: serde_json::Value = serde_json::from_str(json)?;
    let bodies: Vec<ConvexBody> = match value {
        serde_json::Value::Array(_) => serde_json::from_value(value)?,
        other => vec![serde_json::from_value(other)?],
    };
    for b in &bodies {
        b.validate()?;
    }
    Ok(bodies)
}
