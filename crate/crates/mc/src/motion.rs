use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_distr::StandardNormal;

/// `p ↦ R p + t` with `R ∈ SO(n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RigidMotion {
    pub rotation: DMatrix<f64>,
    pub translation: DVector<f64>,
}

impl RigidMotion {
    pub fn identity(n: usize) -> Self {
        RigidMotion { rotation: DMatrix::identity(n, n), translation: DVector::zeros(n) }
    }

    pub fn apply(&self, p: &DVector<f64>) -> DVector<f64> {
        &self.rotation * p + &self.translation
    }

    /// `max |RᵀR - I|`.
    pub fn orthogonality_defect(&self) -> f64 {
        let n = self.rotation.nrows();
        (self.rotation.tr_mul(&self.rotation) - DMatrix::<f64>::identity(n, n)).amax()
    }
}

pub fn gaussian_vector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DVector<f64> {
    DVector::from_fn(n, |_, _| rng.sample(StandardNormal))
}

/// Haar-distributed rotation: QR of a Gaussian matrix, columns signed so
/// that `R` has positive diagonal, then one column flipped if `det Q < 0`.
pub fn random_rotation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<f64> {
    if n <= 1 {
        return DMatrix::identity(n, n);
    }
    let g = DMatrix::from_fn(n, n, |_, _| rng.sample(StandardNormal));
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    if q.determinant() < 0.0 {
        q.column_mut(0).neg_mut();
    }
    q
}

/// Uniform on the unit sphere `S^{n-1}`.
pub fn random_unit_vector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DVector<f64> {
    loop {
        let g = gaussian_vector(n, rng);
        let norm = g.norm();
        if norm > 1e-300 {
            return g / norm;
        }
    }
}

/// Uniform in the closed ball of radius `r` in `R^k`.
pub fn random_in_ball<R: Rng + ?Sized>(k: usize, r: f64, rng: &mut R) -> DVector<f64> {
    if k == 0 {
        return DVector::zeros(0);
    }
    let u: f64 = rng.random();
    random_unit_vector(k, rng) * (r * u.powf(1.0 / k as f64))
}

/// Uniform in the box `[lo, hi]`.
pub fn random_in_box<R: Rng + ?Sized>(lo: &DVector<f64>, hi: &DVector<f64>, rng: &mut R) -> DVector<f64> {
    DVector::from_fn(lo.len(), |i, _| {
        let u: f64 = rng.random();
        lo[i] + (hi[i] - lo[i]) * u
    })
}
