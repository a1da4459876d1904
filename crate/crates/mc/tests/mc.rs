use intgeo_core::euclid::TemplateBody;
use intgeo_core::scalar::int;
use intgeo_core::{omega, Scalar};
use intgeo_mc::body::Support;
use intgeo_mc::gjk::{closest_on_simplex, distance, TOLERANCE};
use intgeo_mc::minkowski::{hull_volume, planar_hull, polygon_area, sum_volume};
use intgeo_mc::motion::{random_unit_vector, RigidMotion};
use intgeo_mc::sampler::{sample, Moments};
use intgeo_mc::suite::{default_cases, run_default_suite, to_csv, within};
use intgeo_mc::*;
use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{Beta, ContinuousCDF};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn box_as_polytope(b: &ConvexBody) -> ConvexBody {
    let v = b.vertices().unwrap();
    ConvexBody::Polytope { vertices: v.iter().map(|p| p.iter().copied().collect()).collect() }
}

#[test]
fn intersection_examples() {
    let disk = ConvexBody::unit_ball(2);
    let far = ConvexBody::ball(vec![3.0, 0.0], 1.0).unwrap();
    let tangent = ConvexBody::ball(vec![2.0, 0.0], 1.0).unwrap();
    let small = ConvexBody::cube(2, 1.0);
    assert!(!intersects(&disk, &far).unwrap());
    assert!(intersects(&disk, &small).unwrap());
    assert!(intersects(&disk, &tangent).unwrap());
    // touching squares along an edge, through the polytope path
    let a = box_as_polytope(&ConvexBody::cuboid(vec![0.0, 0.0], vec![1.0, 1.0]).unwrap());
    let b = box_as_polytope(&ConvexBody::cuboid(vec![1.0, 0.5], vec![2.0, 2.0]).unwrap());
    assert!(intersects(&a, &b).unwrap());
    let c = box_as_polytope(&ConvexBody::cuboid(vec![1.0 + 1e-6, 0.5], vec![2.0, 2.0]).unwrap());
    assert!(!intersects(&a, &c).unwrap());
    assert!(matches!(
        intersects(&disk, &ConvexBody::unit_ball(3)),
        Err(McError::DimensionMismatch { .. })
    ));
}

#[test]
fn invalid_bodies_are_rejected() {
    assert!(ConvexBody::ball(vec![0.0], 0.0).is_err());
    assert!(ConvexBody::cuboid(vec![0.0, 0.0], vec![1.0, 0.0]).is_err());
    assert!(ConvexBody::polytope(vec![]).is_err());
    assert!(ConvexBody::polytope(vec![vec![0.0, 1.0], vec![1.0]]).is_err());
}

#[test]
fn body_descriptions_parse() {
    let one = parse_bodies(r#"{"kind":"ball","center":[0,0],"radius":1}"#).unwrap();
    assert_eq!(one, vec![ConvexBody::unit_ball(2)]);
    let two = parse_bodies(
        r#"[{"kind":"box","min":[-0.5,-0.5],"max":[0.5,0.5]},{"kind":"polytope","vertices":[[0,0],[1,0],[0,1]]}]"#,
    )
    .unwrap();
    assert_eq!(two[0], ConvexBody::cube(2, 1.0));
    assert_eq!(two[1].dim(), 2);
    assert!(parse_bodies(r#"{"kind":"ball","center":[0],"radius":-1}"#).is_err());
    assert!(parse_bodies(r#"{"kind":"cone"}"#).is_err());
}

#[test]
fn simplex_closest_point_in_triangle_and_tetrahedron() {
    let tri = vec![
        DVector::from_vec(vec![-1.0, -1.0, 1.0]),
        DVector::from_vec(vec![2.0, -1.0, 1.0]),
        DVector::from_vec(vec![-1.0, 2.0, 1.0]),
    ];
    let (x, face) = closest_on_simplex(&tri);
    assert!((x - DVector::from_vec(vec![0.0, 0.0, 1.0])).norm() < 1e-14);
    assert_eq!(face.len(), 3);
    let mut tet = tri.clone();
    tet.iter_mut().for_each(|p| p[2] = -1.0);
    tet.push(DVector::from_vec(vec![0.0, 0.0, 3.0]));
    let (x, face) = closest_on_simplex(&tet);
    assert!(x.norm() < 1e-14);
    assert_eq!(face.len(), 4);
}

#[test]
fn rotation_in_one_dimension_is_trivial() {
    let mut r = rng(1);
    for _ in 0..10 {
        assert_eq!(random_rotation(1, &mut r), DMatrix::identity(1, 1));
    }
}

#[test]
fn rotations_are_special_orthogonal() {
    let mut r = rng(2);
    for n in 2..=7 {
        for _ in 0..200 {
            let m = RigidMotion { rotation: random_rotation(n, &mut r), translation: DVector::zeros(n) };
            assert!(m.orthogonality_defect() <= 1e-12, "n = {n}");
            assert!((m.rotation.determinant() - 1.0).abs() <= 1e-12, "n = {n}");
        }
    }
}

#[test]
fn planar_rotation_angle_is_uniform() {
    let mut r = rng(3);
    let samples = 100_000;
    let mut m = Moments::default();
    for _ in 0..samples {
        m.push(random_rotation(2, &mut r)[(0, 0)]);
    }
    // cos θ has variance 1/2 for uniform θ
    let se = (0.5f64 / samples as f64).sqrt();
    assert!(m.mean.abs() <= 3.0 * se, "mean {} se {se}", m.mean);
}

/// `<Ru, v>` for fixed unit vectors has `(x + 1)/2 ~ Beta((n-1)/2, (n-1)/2)`.
#[test]
fn projection_law_kolmogorov_smirnov() {
    for n in 3..=5 {
        let mut r = rng(40 + n as u64);
        let u = random_unit_vector(n, &mut r);
        let v = random_unit_vector(n, &mut r);
        let mut xs: Vec<f64> = (0..100_000)
            .map(|_| ((random_rotation(n, &mut r) * &u).dot(&v) + 1.0) / 2.0)
            .collect();
        xs.sort_by(f64::total_cmp);
        let a = (n as f64 - 1.0) / 2.0;
        let law = Beta::new(a, a).unwrap();
        let m = xs.len() as f64;
        let d = xs
            .iter()
            .enumerate()
            .map(|(i, x)| {
                let f = law.cdf(*x);
                (f - i as f64 / m).abs().max(((i + 1) as f64 / m - f).abs())
            })
            .fold(0.0, f64::max);
        assert!(d <= 1e-2, "n = {n}: D = {d}");
    }
}

#[test]
fn moments_merge_in_order_is_deterministic() {
    let cfg = SampleConfig::new(100_000, 9);
    let f = |r: &mut ChaCha8Rng, _| Ok(rand::Rng::random::<f64>(r));
    let one = sample(cfg, f).unwrap();
    let many = sample(cfg.with_jobs(5), f).unwrap();
    assert_eq!(one, many);
    assert_eq!(one.count, 100_000);
    assert!((one.mean - 0.5).abs() < 4.0 * one.stderr());
}

#[test]
fn estimates_do_not_depend_on_worker_count() {
    let disk = ConvexBody::unit_ball(2);
    let square = ConvexBody::cube(2, 1.0);
    let cfg = SampleConfig::new(40_000, 11);
    let a = estimate_principal_kinematic(&disk, &square, cfg, None).unwrap();
    let b = estimate_principal_kinematic(&disk, &square, cfg.with_jobs(3), None).unwrap();
    let c = estimate_principal_kinematic(&disk, &square, cfg.with_jobs(8), None).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.mean.to_bits(), c.mean.to_bits());
    let other = estimate_principal_kinematic(&disk, &square, SampleConfig::new(40_000, 12), None).unwrap();
    assert_ne!(a.mean, other.mean);
}

fn check(e: &McEstimate, want: Scalar) {
    assert_eq!(e.prediction.as_ref(), Some(&want), "{}", e.test);
    let z = e.z.unwrap();
    assert!(z.abs() <= 3.0, "{}: mean {} ± {} vs {} (z = {z})", e.test, e.mean, e.stderr, want.to_f64());
}

const N: u64 = 200_000;

#[test]
fn kinematic_disk_square() {
    let e = estimate_principal_kinematic(&ConvexBody::unit_ball(2), &ConvexBody::cube(2, 1.0), SampleConfig::new(N, 5).with_jobs(4), None)
        .unwrap();
    check(&e, Scalar::pi_pow(1) + Scalar::from_int(5));
    assert_eq!(e.window, Some(1.0 + 0.5f64.sqrt()));
}

#[test]
fn kinematic_point_gives_volume() {
    let square = ConvexBody::cuboid(vec![0.0, 0.0], vec![2.0, 1.0]).unwrap();
    let point = ConvexBody::point(vec![5.0, 5.0]);
    let e = estimate_principal_kinematic(&square, &point, SampleConfig::new(N, 6).with_jobs(4), None).unwrap();
    check(&e, Scalar::from_int(2));
}

#[test]
fn kinematic_balls_give_doubled_ball() {
    for n in 2..=4usize {
        let r = 0.75;
        let a = ConvexBody::ball(vec![0.0; n], r).unwrap();
        let b = ConvexBody::ball(vec![1.0; n], r).unwrap();
        let e = estimate_principal_kinematic(&a, &b, SampleConfig::new(N, 7).with_jobs(4), None).unwrap();
        let want = omega(n as u32).scale(&(0..n).fold(int(1), |acc, _| acc * intgeo_core::scalar::rat(3, 2)));
        check(&e, want);
    }
}

#[test]
fn kinematic_window_too_small_is_rejected() {
    let a = ConvexBody::unit_ball(2);
    let r = estimate_principal_kinematic(&a, &a, SampleConfig::new(10, 1), Some(1.5));
    assert!(matches!(r, Err(McError::WindowUnderflow { .. })));
}

#[test]
fn crofton_examples() {
    let cfg = SampleConfig::new(N, 8).with_jobs(4);
    check(&estimate_crofton(&ConvexBody::unit_ball(2), 1, cfg).unwrap(), Scalar::pi_pow(1));
    check(&estimate_crofton(&ConvexBody::cube(2, 1.0), 1, cfg).unwrap(), Scalar::from_int(2));
    check(&estimate_crofton(&ConvexBody::cube(3, 1.0), 1, cfg).unwrap(), Scalar::from_int(3));
    let chi = estimate_crofton(&ConvexBody::cube(3, 1.0), 0, cfg).unwrap();
    assert_eq!((chi.mean, chi.stderr, chi.z), (1.0, 0.0, Some(0.0)));
    let vol = estimate_crofton(&ConvexBody::cuboid(vec![0.0, 0.0], vec![1.0, 3.0]).unwrap(), 2, cfg).unwrap();
    check(&vol, Scalar::from_int(3));
}

#[test]
fn crofton_polytope_without_prediction() {
    let tri = ConvexBody::polytope(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
    let e = estimate_crofton(&tri, 1, SampleConfig::new(N, 9).with_jobs(4)).unwrap();
    assert!(e.prediction.is_none() && e.z.is_none());
    // half the perimeter
    let want = (2.0 + 2f64.sqrt()) / 2.0;
    assert!((e.mean - want).abs() <= 3.0 * e.stderr);
}

#[test]
fn cauchy_examples() {
    let cfg = SampleConfig::new(N, 10).with_jobs(4);
    check(&cauchy_projection_check(&ConvexBody::cube(2, 1.0), cfg).unwrap(), Scalar::from_int(2));
    check(&cauchy_projection_check(&ConvexBody::cube(3, 1.0), cfg).unwrap(), Scalar::from_int(3));
    let ball = cauchy_projection_check(&ConvexBody::ball(vec![0.0; 3], 2.0).unwrap(), cfg).unwrap();
    assert_eq!(ball.stderr, 0.0);
    assert_eq!(ball.z, Some(0.0));
    assert_eq!(ball.prediction, Some(Scalar::pi_pow(1).scale(&int(8))));
}

#[test]
fn steiner_examples() {
    let cfg = SampleConfig::new(N, 11).with_jobs(4);
    check(&steiner_mc(&ConvexBody::cube(2, 1.0), 1.0, cfg).unwrap(), Scalar::pi_pow(1) + Scalar::from_int(5));
    // ω_3 (R + r)^3 for a ball
    let e = steiner_mc(&ConvexBody::ball(vec![0.0; 3], 1.0).unwrap(), 0.5, cfg).unwrap();
    check(&e, omega(3).scale(&intgeo_core::scalar::rat(27, 8)));
    // small tubes approach the body
    let thin = steiner_mc(&ConvexBody::cube(2, 1.0), 1.0 / 1024.0, cfg).unwrap();
    assert!((thin.prediction_value.unwrap() - 1.0).abs() < 5e-3);
}

#[test]
fn additive_examples() {
    let cfg = SampleConfig::new(N / 4, 12).with_jobs(4);
    let square = ConvexBody::cube(2, 1.0);
    let e = estimate_additive(&square, &square, cfg).unwrap();
    check(&e, Scalar::from_int(2) + Scalar::pi_pow(-1).scale(&int(8)));
    let point = estimate_additive(&square, &ConvexBody::point(vec![3.0, 1.0]), cfg).unwrap();
    assert_eq!((point.mean, point.stderr, point.z), (1.0, 0.0, Some(0.0)));
    let disk = ConvexBody::unit_ball(2);
    let balls = estimate_additive(&disk, &disk, cfg).unwrap();
    assert_eq!(balls.stderr, 0.0);
    assert_eq!(balls.prediction, Some(Scalar::pi_pow(1).scale(&int(4))));
    assert_eq!(balls.z, Some(0.0));
    let cube = ConvexBody::cube(3, 1.0);
    check(&estimate_additive(&cube, &cube, cfg).unwrap(), additive_cube_cube());
    assert!(matches!(
        estimate_additive(&ConvexBody::cube(4, 1.0), &ConvexBody::cube(4, 1.0), cfg),
        Err(McError::Unsupported(_))
    ));
}

fn additive_cube_cube() -> Scalar {
    let t = TemplateBody::Box(vec![int(1); 3]);
    intgeo_core::euclid::additive_volume_value(3, &t, &t)
}

#[test]
fn planar_sum_of_rotated_squares() {
    let square = ConvexBody::cube(2, 1.0);
    for k in 0..16 {
        let th = k as f64 * 0.37;
        let rot = DMatrix::from_row_slice(2, 2, &[th.cos(), -th.sin(), th.sin(), th.cos()]);
        let got = sum_volume(&square, &square, &rot).unwrap();
        let want = 2.0 + 2.0 * (th.cos().abs() + th.sin().abs());
        assert!((got - want).abs() < 1e-12, "θ = {th}");
    }
}

#[test]
fn zonotope_volume_agrees_with_hull() {
    let cube = ConvexBody::cube(3, 1.0);
    let brick = ConvexBody::cuboid(vec![0.0, 0.0, 0.0], vec![2.0, 1.0, 0.5]).unwrap();
    let mut r = rng(13);
    for _ in 0..20 {
        let rot = random_rotation(3, &mut r);
        let zono = sum_volume(&cube, &brick, &rot).unwrap();
        let hull = sum_volume(&box_as_polytope(&cube), &box_as_polytope(&brick), &rot).unwrap();
        assert!((zono - hull).abs() < 1e-9 * zono, "{zono} vs {hull}");
    }
    let ball_plus_box = sum_volume(&ConvexBody::unit_ball(3), &cube, &DMatrix::identity(3, 3)).unwrap();
    let steiner = 1.0 + 6.0 + 3.0 * std::f64::consts::PI + 4.0 / 3.0 * std::f64::consts::PI;
    assert!((ball_plus_box - steiner).abs() < 1e-12);
}

#[test]
fn hull_volumes() {
    let tet: Vec<DVector<f64>> = [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]
        .iter()
        .map(|p| DVector::from_column_slice(p))
        .collect();
    assert!((hull_volume(&tet).unwrap() - 1.0 / 6.0).abs() < 1e-14);
    let hull = planar_hull(&[[0.0, 0.0], [1.0, 0.0], [0.5, 0.2], [1.0, 1.0], [0.0, 1.0]]);
    assert_eq!(hull.len(), 4);
    assert_eq!(polygon_area(&hull), 1.0);
}

#[test]
fn default_suite_shape_and_csv() {
    let cases = default_cases();
    assert_eq!(cases.len(), 12);
    let results = run_default_suite(2_000, 3, 2).unwrap();
    assert!(results.iter().all(|r| r.prediction.is_some()));
    let csv = to_csv(&results);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("test,seed,samples,estimate,stderr,prediction,z"));
    assert_eq!(lines.count(), 12);
    assert_eq!(run_default_suite(2_000, 3, 5).unwrap(), results);
    assert!(within(&[], 0.0));
}

/// Projection onto a frame, used by the Crofton sampler, against the box
/// shadow computed by hand.
#[test]
fn projected_support_of_box() {
    let cube = ConvexBody::cube(3, 2.0);
    let frame = DMatrix::from_column_slice(3, 1, &[1.0 / 3f64.sqrt(); 3]);
    let shadow = intgeo_mc::body::Projected { body: &cube, frame };
    let s = shadow.support(&DVector::from_vec(vec![1.0]));
    assert!((s[0] - 3f64.sqrt()).abs() < 1e-14);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    /// Axis-aligned boxes meet iff every coordinate interval does.
    #[test]
    fn polytope_test_matches_interval_oracle(
        n in 1usize..=4,
        raw in prop::collection::vec((-3.0f64..3.0, 0.1f64..2.0, -3.0f64..3.0, 0.1f64..2.0), 4),
    ) {
        let raw = &raw[..n];
        let a = ConvexBody::cuboid(raw.iter().map(|r| r.0).collect(), raw.iter().map(|r| r.0 + r.1).collect()).unwrap();
        let b = ConvexBody::cuboid(raw.iter().map(|r| r.2).collect(), raw.iter().map(|r| r.2 + r.3).collect()).unwrap();
        let gap = raw.iter().map(|r| (r.2 - (r.0 + r.1)).max(r.0 - (r.2 + r.3))).fold(f64::NEG_INFINITY, f64::max);
        prop_assume!(gap.abs() > 1e-7);
        let (pa, pb) = (box_as_polytope(&a), box_as_polytope(&b));
        prop_assert_eq!(intersects(&pa, &pb).unwrap(), gap < 0.0);
        prop_assert_eq!(intersects(&a, &b).unwrap(), gap < 0.0);
    }

    /// GJK distance from a point to a box equals the clamped distance.
    #[test]
    fn distance_matches_clamp(p in prop::collection::vec(-4.0f64..4.0, 3)) {
        let cube = ConvexBody::cube(3, 2.0);
        let poly = box_as_polytope(&cube);
        let point = ConvexBody::point(p.clone());
        let exact = cube.distance_to(&DVector::from_vec(p));
        let d = distance(&poly, &point, TOLERANCE);
        prop_assert!((d - exact).abs() < 1e-9, "{} vs {}", d, exact);
    }

    /// Ball against a rotated polytope box agrees with the exact clamp test.
    #[test]
    fn rotated_box_against_ball(seed in 0u64..1000, c in prop::collection::vec(-2.5f64..2.5, 3), r in 0.1f64..1.5) {
        let mut g = rng(seed);
        let rotation = random_rotation(3, &mut g);
        let translation = DVector::from_vec(vec![0.2, -0.1, 0.3]);
        let cube = ConvexBody::cube(3, 1.5);
        let ball = ConvexBody::ball(c.clone(), r).unwrap();
        let exact = intgeo_mc::gjk::intersects_moved(&ball, &cube.moved(&rotation, &translation)).unwrap();
        let local = rotation.tr_mul(&(DVector::from_vec(c) - &translation));
        prop_assume!((cube.distance_to(&local) - r).abs() > 1e-7);
        let poly = box_as_polytope(&cube);
        let via_gjk = intgeo_mc::gjk::overlaps(&ball, &poly.moved(&rotation, &translation), TOLERANCE);
        prop_assert_eq!(exact, via_gjk);
    }

    #[test]
    fn moments_merge_is_exact_enough(xs in prop::collection::vec(-100.0f64..100.0, 2..200), cut in 0usize..200) {
        let cut = cut.min(xs.len());
        let mut all = Moments::default();
        xs.iter().for_each(|x| all.push(*x));
        let (mut l, mut r) = (Moments::default(), Moments::default());
        xs[..cut].iter().for_each(|x| l.push(*x));
        xs[cut..].iter().for_each(|x| r.push(*x));
        let merged = l.merge(&r);
        prop_assert_eq!(merged.count, all.count);
        prop_assert!((merged.mean - all.mean).abs() < 1e-9);
        prop_assert!((merged.m2 - all.m2).abs() < 1e-7 * all.m2.max(1.0));
    }
}
