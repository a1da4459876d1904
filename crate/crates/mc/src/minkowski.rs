//! Volumes of convex hulls and of Minkowski sums `A + gB` in the plane and
//! in space.

use chull::ConvexHull;
use nalgebra::{DMatrix, DVector, Matrix3, Vector3};

use crate::body::ConvexBody;
use crate::error::McError;

/// Counter-clockwise hull of planar points, monotone chain.
pub fn planar_hull(points: &[[f64; 2]]) -> Vec<[f64; 2]> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let cross = |o: &[f64; 2], a: &[f64; 2], b: &[f64; 2]| (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    let mut lower: Vec<[f64; 2]> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(*p);
    }
    let mut upper: Vec<[f64; 2]> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(*p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Shoelace area of a simple polygon.
pub fn polygon_area(poly: &[[f64; 2]]) -> f64 {
    let n = poly.len();
    let twice: f64 = (0..n)
        .map(|i| {
            let (a, b) = (poly[i], poly[(i + 1) % n]);
            a[0] * b[1] - a[1] * b[0]
        })
        .sum();
    twice.abs() / 2.0
}

pub fn polygon_perimeter(poly: &[[f64; 2]]) -> f64 {
    let n = poly.len();
    if n < 2 {
        return 0.0;
    }
    if n == 2 {
        return 2.0 * dist2(poly[0], poly[1]);
    }
    (0..n).map(|i| dist2(poly[i], poly[(i + 1) % n])).sum()
}

fn dist2(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

/// Volume of the convex hull of points in `R^1`, `R^2` or `R^3`.
pub fn hull_volume(points: &[DVector<f64>]) -> Result<f64, McError> {
    let Some(first) = points.first() else {
        return Err(McError::InvalidBody("no points".into()));
    };
    match first.len() {
        1 => {
            let lo = points.iter().map(|p| p[0]).fold(f64::INFINITY, f64::min);
            let hi = points.iter().map(|p| p[0]).fold(f64::NEG_INFINITY, f64::max);
            Ok(hi - lo)
        }
        2 => {
            let pts: Vec<[f64; 2]> = points.iter().map(|p| [p[0], p[1]]).collect();
            Ok(polygon_area(&planar_hull(&pts)))
        }
        3 => {
            let pts: Vec<Vec<f64>> = points.iter().map(|p| p.iter().copied().collect()).collect();
            match ConvexHull::try_new(&pts, 1e-12, None) {
                Ok(hull) => Ok(hull.volume().abs()),
                // flat point sets have no 3d hull
                Err(chull::ErrorKind::Degenerated) => Ok(0.0),
                Err(e) => Err(McError::Hull(e.to_string())),
            }
        }
        n => Err(McError::Unsupported(format!("hull volume in dimension {n}"))),
    }
}

/// Volume of `A + R B`. Translations of `B` do not change it.
pub fn sum_volume(a: &ConvexBody, b: &ConvexBody, rotation: &DMatrix<f64>) -> Result<f64, McError> {
    let n = a.dim();
    if n != b.dim() {
        return Err(McError::DimensionMismatch { left: n, right: b.dim() });
    }
    if !(n == 2 || n == 3) {
        return Err(McError::Unsupported(format!("Minkowski sums in dimension {n}")));
    }
    if is_point(b) {
        return a.volume();
    }
    if is_point(a) {
        return b.volume();
    }
    match (a, b) {
        (ConvexBody::Ball { radius: r, .. }, ConvexBody::Ball { radius: s, .. }) => {
            ConvexBody::Ball { center: vec![0.0; n], radius: r + s }.volume()
        }
        (ConvexBody::Ball { radius, .. }, other) | (other, ConvexBody::Ball { radius, .. }) => {
            parallel_body_volume(other, *radius)
        }
        (ConvexBody::Box { min: a0, max: a1 }, ConvexBody::Box { min: b0, max: b1 }) if n == 3 => {
            Ok(zonotope_volume(&box_generators(a0, a1, &DMatrix::identity(3, 3)), &box_generators(b0, b1, rotation)))
        }
        _ => {
            let va = a.vertices().unwrap_or_default();
            let vb: Vec<DVector<f64>> = b.vertices().unwrap_or_default().iter().map(|v| rotation * v).collect();
            let sums: Vec<DVector<f64>> = va.iter().flat_map(|p| vb.iter().map(move |q| p + q)).collect();
            hull_volume(&sums)
        }
    }
}

fn is_point(b: &ConvexBody) -> bool {
    matches!(b, ConvexBody::Polytope { vertices } if vertices.iter().all(|v| v == &vertices[0]))
}

/// `vol(K + r B)`: boxes by the tube decomposition, planar polygons by
/// area, perimeter and disk.
fn parallel_body_volume(k: &ConvexBody, r: f64) -> Result<f64, McError> {
    let n = k.dim();
    match k {
        ConvexBody::Box { min, max } => {
            let sides: Vec<f64> = min.iter().zip(max).map(|(a, b)| b - a).collect();
            let mut total = 0.0;
            for mask in 0u32..1 << n {
                let s = mask.count_ones();
                let prod: f64 = (0..n).filter(|i| mask & (1 << i) == 0).map(|i| sides[i]).product();
                total += intgeo_core::omega(s).to_f64() * r.powi(s as i32) * prod;
            }
            Ok(total)
        }
        ConvexBody::Polytope { vertices } if n == 2 => {
            let pts: Vec<[f64; 2]> = vertices.iter().map(|p| [p[0], p[1]]).collect();
            let hull = planar_hull(&pts);
            Ok(polygon_area(&hull) + r * polygon_perimeter(&hull) + std::f64::consts::PI * r * r)
        }
        _ => Err(McError::Unsupported("ball plus a general polytope in space".into())),
    }
}

fn box_generators(min: &[f64], max: &[f64], rotation: &DMatrix<f64>) -> Vec<Vector3<f64>> {
    (0..3)
        .map(|i| {
            let side = max[i] - min[i];
            Vector3::new(rotation[(0, i)], rotation[(1, i)], rotation[(2, i)]) * side
        })
        .collect()
}

/// A box is the zonotope of its edge vectors, and the sum of two zonotopes
/// is the zonotope of all generators: `vol = Σ |det(g_a, g_b, g_c)|` over
/// triples.
fn zonotope_volume(a: &[Vector3<f64>], b: &[Vector3<f64>]) -> f64 {
    let g: Vec<&Vector3<f64>> = a.iter().chain(b).collect();
    let mut total = 0.0;
    for i in 0..g.len() {
        for j in i + 1..g.len() {
            for k in j + 1..g.len() {
                total += Matrix3::from_columns(&[*g[i], *g[j], *g[k]]).determinant().abs();
            }
        }
    }
    total
}
