//! Distance and intersection of convex sets given by support maps.
//!
//! Gilbert–Johnson–Keerthi iteration on the difference body `A - B`, with
//! the closest point of each simplex found by trying every face.

use nalgebra::{DMatrix, DVector};

use crate::body::{box_distance, ConvexBody, Moved, Support};
use crate::error::McError;

/// Sets closer than this are treated as touching.
pub const TOLERANCE: f64 = 1e-10;

const MAX_ITERATIONS: usize = 128;

/// Distance between `a` and `b`, zero when they meet.
pub fn distance<A: Support + ?Sized, B: Support + ?Sized>(a: &A, b: &B, tol: f64) -> f64 {
    run(a, b, tol, false)
}

/// Whether the closed sets `a` and `b` meet, up to `tol`.
pub fn overlaps<A: Support + ?Sized, B: Support + ?Sized>(a: &A, b: &B, tol: f64) -> bool {
    run(a, b, tol, true) <= tol
}

fn difference_support<A: Support + ?Sized, B: Support + ?Sized>(a: &A, b: &B, d: &DVector<f64>) -> DVector<f64> {
    a.support(d) - b.support(&-d)
}

fn run<A: Support + ?Sized, B: Support + ?Sized>(a: &A, b: &B, tol: f64, early_exit: bool) -> f64 {
    let n = a.dim();
    let mut start = DVector::zeros(n);
    start[0] = 1.0;
    let mut v = difference_support(a, b, &start);
    let mut simplex: Vec<DVector<f64>> = vec![v.clone()];
    for _ in 0..MAX_ITERATIONS {
        let vv = v.norm_squared();
        if vv.sqrt() <= tol {
            return 0.0;
        }
        let w = difference_support(a, b, &-&v);
        let vw = v.dot(&w);
        // every point x of A - B has <x, v> >= <w, v>
        if early_exit && vw > tol * vv.sqrt() {
            return vw / vv.sqrt();
        }
        if vv - vw <= 1e-12 * vv.max(tol * tol) {
            return vv.sqrt();
        }
        if simplex.iter().any(|p| (p - &w).norm_squared() <= 1e-24 * vv.max(1.0)) {
            return vv.sqrt();
        }
        simplex.push(w);
        let (closest, face) = closest_on_simplex(&simplex);
        if face.len() == n + 1 {
            return 0.0;
        }
        simplex = face;
        v = closest;
    }
    v.norm()
}

/// Closest point to the origin on the convex hull of at most `n + 1` points,
/// with the smallest face containing it.
pub fn closest_on_simplex(points: &[DVector<f64>]) -> (DVector<f64>, Vec<DVector<f64>>) {
    let m = points.len();
    let mut masks: Vec<u32> = (1..1u32 << m).collect();
    masks.sort_by_key(|mask| mask.count_ones());
    let mut best: Option<(f64, DVector<f64>, u32)> = None;
    for mask in masks {
        let idx: Vec<usize> = (0..m).filter(|i| mask & (1 << i) != 0).collect();
        let Some(x) = affine_closest(points, &idx) else {
            continue;
        };
        let norm = x.norm_squared();
        let better = match &best {
            None => true,
            Some((b, _, _)) => norm < b * (1.0 - 1e-12) - 1e-300,
        };
        if better {
            best = Some((norm, x, mask));
        }
    }
    let (_, x, mask) = best.expect("singletons are always admissible");
    let face = (0..m).filter(|i| mask & (1 << i) != 0).map(|i| points[i].clone()).collect();
    (x, face)
}

/// Closest point to the origin on the affine hull of the chosen points, if it
/// lies in their relative interior and the points are affinely independent.
fn affine_closest(points: &[DVector<f64>], idx: &[usize]) -> Option<DVector<f64>> {
    let p0 = &points[idx[0]];
    if idx.len() == 1 {
        return Some(p0.clone());
    }
    let edges: Vec<DVector<f64>> = idx[1..].iter().map(|&i| &points[i] - p0).collect();
    let k = edges.len();
    let gram = DMatrix::from_fn(k, k, |i, j| edges[i].dot(&edges[j]));
    let rhs = DVector::from_fn(k, |i, _| -edges[i].dot(p0));
    let scale = (0..k).map(|i| gram[(i, i)]).fold(0.0, f64::max);
    let chol = gram.cholesky()?;
    let l = chol.l();
    if (0..k).any(|i| l[(i, i)] * l[(i, i)] <= 1e-13 * scale) {
        return None;
    }
    let mu = chol.solve(&rhs);
    let lambda0 = 1.0 - mu.sum();
    if lambda0 <= 0.0 || mu.iter().any(|&c| c <= 0.0) {
        return None;
    }
    let mut x = p0.clone();
    for (e, c) in edges.iter().zip(mu.iter()) {
        x += e * *c;
    }
    Some(x)
}

/// Whether two closed bodies meet. Exact for ball and box pairs.
pub fn intersects(a: &ConvexBody, b: &ConvexBody) -> Result<bool, McError> {
    let n = b.dim();
    intersects_moved(a, &b.moved(&DMatrix::identity(n, n), &DVector::zeros(n)))
}

/// Whether `a` meets the moved body `b`.
pub fn intersects_moved(a: &ConvexBody, b: &Moved<'_>) -> Result<bool, McError> {
    if a.dim() != b.body.dim() {
        return Err(McError::DimensionMismatch { left: a.dim(), right: b.body.dim() });
    }
    let hit = match (a, b.body) {
        (ConvexBody::Ball { center: ca, radius: ra }, ConvexBody::Ball { center: cb, radius: rb }) => {
            let cb = b.apply(&DVector::from_column_slice(cb));
            let d2 = (DVector::from_column_slice(ca) - cb).norm_squared();
            d2 <= (ra + rb) * (ra + rb)
        }
        (ConvexBody::Ball { center, radius }, ConvexBody::Box { min, max }) => {
            let c = b.apply_inverse(&DVector::from_column_slice(center));
            box_distance(min, max, &c) <= *radius
        }
        (ConvexBody::Box { min, max }, ConvexBody::Ball { center, radius }) => {
            let c = b.apply(&DVector::from_column_slice(center));
            box_distance(min, max, &c) <= *radius
        }
        _ => overlaps(a, b, TOLERANCE),
    };
    Ok(hit)
}
