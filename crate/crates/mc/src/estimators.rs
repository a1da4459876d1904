use intgeo_core::euclid::{
    additive_volume_value, cauchy_constant, crofton_constant, principal_kinematic_value, steiner_polynomial,
};
use intgeo_core::scalar::rational_from_f64;
use intgeo_core::{omega, Scalar};
use nalgebra::DVector;
use serde::Serialize;

use crate::body::{ConvexBody, Projected};
use crate::error::McError;
use crate::gjk::{intersects_moved, overlaps, TOLERANCE};
use crate::minkowski::sum_volume;
use crate::motion::{random_in_ball, random_in_box, random_rotation, random_unit_vector};
use crate::sampler::{sample, Moments, SampleConfig};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct McEstimate {
    pub test: String,
    pub mean: f64,
    pub stderr: f64,
    pub samples: u64,
    pub seed: u64,
    pub prediction: Option<Scalar>,
    pub prediction_value: Option<f64>,
    /// `(mean - prediction) / stderr`; with zero spread it is 0 on agreement
    /// to 1e-9 relative and infinite otherwise.
    pub z: Option<f64>,
    /// Half-width of the translation window, for kinematic runs.
    pub window: Option<f64>,
}

impl McEstimate {
    fn new(test: &str, cfg: SampleConfig, m: Moments, prediction: Option<Scalar>) -> Self {
        let stderr = m.stderr();
        let prediction_value = prediction.as_ref().map(Scalar::to_f64);
        let z = prediction_value.map(|p| {
            let diff = m.mean - p;
            if stderr > 0.0 {
                diff / stderr
            } else if diff.abs() <= 1e-9 * p.abs().max(1.0) {
                0.0
            } else {
                diff.signum() * f64::INFINITY
            }
        });
        McEstimate {
            test: test.to_string(),
            mean: m.mean,
            stderr,
            samples: m.count,
            seed: cfg.seed,
            prediction,
            prediction_value,
            z,
            window: None,
        }
    }

    pub fn named(mut self, test: impl Into<String>) -> Self {
        self.test = test.into();
        self
    }

    pub fn csv_header() -> &'static str {
        "test,seed,samples,estimate,stderr,prediction,z"
    }

    pub fn csv_row(&self) -> String {
        let opt = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{}",
            self.test,
            self.seed,
            self.samples,
            self.mean,
            self.stderr,
            opt(self.prediction_value),
            opt(self.z)
        )
    }
}

fn same_dim(a: &ConvexBody, b: &ConvexBody) -> Result<usize, McError> {
    if a.dim() != b.dim() {
        return Err(McError::DimensionMismatch { left: a.dim(), right: b.dim() });
    }
    Ok(a.dim())
}

/// `∫ χ(A ∩ gB) dg` over rigid motions, translations by Lebesgue measure.
///
/// `B` is rotated about its bounding center, which is then placed uniformly
/// in the cube of half-width `R_A + R_B` around the bounding center of `A`.
/// A smaller `window` is rejected.
pub fn estimate_principal_kinematic(
    a: &ConvexBody,
    b: &ConvexBody,
    cfg: SampleConfig,
    window: Option<f64>,
) -> Result<McEstimate, McError> {
    let n = same_dim(a, b)?;
    a.validate()?;
    b.validate()?;
    let (ca, ra) = a.bounding_ball();
    let (cb, rb) = b.bounding_ball();
    let required = ra + rb;
    let half = match window {
        Some(w) if w < required => return Err(McError::WindowUnderflow { required, given: w }),
        Some(w) => w,
        None => required,
    };
    let lo = ca.add_scalar(-half);
    let hi = ca.add_scalar(half);
    let volume = (2.0 * half).powi(n as i32);
    let m = sample(cfg, |rng, index| {
        let rotation = random_rotation(n, rng);
        let x = random_in_box(&lo, &hi, rng);
        let translation = &x - &rotation * &cb;
        let hit = intersects_moved(a, &b.moved(&rotation, &translation))?;
        if hit && (&x - &ca).norm() > required * (1.0 + 1e-9) + TOLERANCE {
            return Err(McError::Domination { index });
        }
        Ok(if hit { volume } else { 0.0 })
    })?;
    let prediction = match (a.template(), b.template()) {
        (Some(ta), Some(tb)) => Some(principal_kinematic_value(n as u32, &ta, &tb)),
        _ => None,
    };
    let mut est = McEstimate::new("kinematic", cfg, m, prediction);
    est.window = Some(half);
    Ok(est)
}

/// `μ_k(A)` as a measure of affine `(n-k)`-flats meeting `A`.
///
/// A flat is `E + y` with `E` a uniformly rotated coordinate `(n-k)`-plane
/// and `y` uniform in the `k`-ball of the bounding radius in `E^⊥` around
/// the projected bounding center.
pub fn estimate_crofton(a: &ConvexBody, k: usize, cfg: SampleConfig) -> Result<McEstimate, McError> {
    a.validate()?;
    let n = a.dim();
    if k > n {
        return Err(McError::InvalidBody(format!("k = {k} exceeds the dimension {n}")));
    }
    let (c, r) = a.bounding_ball();
    let scale = crofton_constant(n as u32, k as u32).to_f64() * omega(k as u32).to_f64() * r.powi(k as i32);
    let m = sample(cfg, |rng, _| {
        if k == 0 {
            return Ok(scale);
        }
        let q = random_rotation(n, rng);
        let frame = q.columns(0, k).into_owned();
        let y: DVector<f64> = frame.tr_mul(&c) + random_in_ball(k, r, rng);
        let hit = match a {
            ConvexBody::Ball { radius, .. } => (&y - frame.tr_mul(&c)).norm() <= *radius,
            _ => {
                let shadow = Projected { body: a, frame };
                overlaps(&shadow, &ConvexBody::point(y.iter().copied().collect()), TOLERANCE)
            }
        };
        Ok(if hit { scale } else { 0.0 })
    })?;
    let prediction = a.template().map(|t| t.intrinsic_volumes(n as u32)[k].clone());
    Ok(McEstimate::new("crofton", cfg, m, prediction))
}

/// `μ_{n-1}` as the mean volume of hyperplane projections.
pub fn cauchy_projection_check(a: &ConvexBody, cfg: SampleConfig) -> Result<McEstimate, McError> {
    a.validate()?;
    let n = a.dim();
    if n < 2 {
        return Err(McError::InvalidBody("projections need n >= 2".into()));
    }
    let constant = cauchy_constant(n as u32).to_f64();
    let sides: Option<Vec<f64>> = match a {
        ConvexBody::Box { min, max } => Some(min.iter().zip(max).map(|(x, y)| y - x).collect()),
        ConvexBody::Ball { .. } => None,
        ConvexBody::Polytope { .. } => return Err(McError::Unsupported("projections of general polytopes".into())),
    };
    let ball_shadow = match a {
        ConvexBody::Ball { radius, .. } => omega(n as u32 - 1).to_f64() * radius.powi(n as i32 - 1),
        _ => 0.0,
    };
    let m = sample(cfg, |rng, _| {
        let shadow = match &sides {
            Some(sides) => {
                let v = random_unit_vector(n, rng);
                (0..n)
                    .map(|i| {
                        let face: f64 = (0..n).filter(|&j| j != i).map(|j| sides[j]).product();
                        face * v[i].abs()
                    })
                    .sum()
            }
            None => ball_shadow,
        };
        Ok(constant * shadow)
    })?;
    let prediction = a.template().map(|t| t.intrinsic_volumes(n as u32)[n - 1].clone());
    Ok(McEstimate::new("cauchy", cfg, m, prediction))
}

/// Volume of the parallel body `A + rB` by hit-or-miss in a bounding box.
pub fn steiner_mc(a: &ConvexBody, r: f64, cfg: SampleConfig) -> Result<McEstimate, McError> {
    a.validate()?;
    if !(r > 0.0 && r.is_finite()) {
        return Err(McError::InvalidBody("tube radius must be positive".into()));
    }
    let n = a.dim();
    let (lo, hi) = a.bounding_box();
    let lo = lo.add_scalar(-r);
    let hi = hi.add_scalar(r);
    let volume: f64 = (&hi - &lo).iter().product();
    let m = sample(cfg, |rng, _| {
        let p = random_in_box(&lo, &hi, rng);
        Ok(if a.distance_to(&p) <= r { volume } else { 0.0 })
    })?;
    let prediction = match (a.template(), rational_from_f64(r)) {
        (Some(t), Some(rq)) => {
            let coeffs = steiner_polynomial(n as u32, &t);
            let mut acc = Scalar::zero();
            let mut power = Scalar::one();
            for c in coeffs {
                acc += &(c * power.clone());
                power = power.scale(&rq);
            }
            Some(acc)
        }
        _ => None,
    };
    Ok(McEstimate::new("steiner", cfg, m, prediction))
}

/// Mean of `vol(A + gB)` over uniformly random rotations `g`.
pub fn estimate_additive(a: &ConvexBody, b: &ConvexBody, cfg: SampleConfig) -> Result<McEstimate, McError> {
    let n = same_dim(a, b)?;
    a.validate()?;
    b.validate()?;
    if !(n == 2 || n == 3) {
        return Err(McError::Unsupported(format!("Minkowski sums in dimension {n}")));
    }
    let m = sample(cfg, |rng, _| {
        let rotation = random_rotation(n, rng);
        sum_volume(a, b, &rotation)
    })?;
    let prediction = match (a.template(), b.template()) {
        (Some(ta), Some(tb)) => Some(additive_volume_value(n as u32, &ta, &tb)),
        _ => None,
    };
    Ok(McEstimate::new("additive", cfg, m, prediction))
}
