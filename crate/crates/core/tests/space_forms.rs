use intgeo_core::algebra::GradedElement;
use intgeo_core::euclid::SoAlgebra;
use intgeo_core::hermitian::{st, un_algebra, Presentation};
use intgeo_core::scalar::{int, rat};
use intgeo_core::series::FormalSeries;
use intgeo_core::space_forms::*;
use intgeo_core::{alpha, LambdaScalar, Rational, Scalar};

fn lam(c: Rational, j: u32) -> LambdaScalar {
    LambdaScalar::term(Scalar::from_rational(c), j)
}

/// Independent model: `Q[λ][φ]/(φ^{n+1})` with `τ_i = φ^i - (λ/4) φ^{i+2}`.
struct PhiModel {
    n: usize,
}

impl PhiModel {
    fn tau(&self, i: usize) -> Vec<LambdaScalar> {
        let mut v = vec![LambdaScalar::zero(); self.n + 1];
        if i <= self.n {
            v[i] = LambdaScalar::one();
        }
        if i + 2 <= self.n {
            v[i + 2] = lam(rat(-1, 4), 1);
        }
        v
    }

    fn mul(&self, x: &[LambdaScalar], y: &[LambdaScalar]) -> Vec<LambdaScalar> {
        let mut out = vec![LambdaScalar::zero(); self.n + 1];
        for (i, a) in x.iter().enumerate() {
            for (j, b) in y.iter().enumerate() {
                if i + j <= self.n {
                    out[i + j] += &(a * b);
                }
            }
        }
        out
    }

    fn from_tau(&self, x: &[LambdaScalar]) -> Vec<LambdaScalar> {
        let mut out = vec![LambdaScalar::zero(); self.n + 1];
        for (i, c) in x.iter().enumerate() {
            for (k, v) in self.tau(i).iter().enumerate() {
                out[k] += &(c * v);
            }
        }
        out
    }
}

#[test]
fn product_table_matches_phi_model() {
    for n in 1..=8 {
        let v = RealSpaceForm::new(n).unwrap();
        let model = PhiModel { n: n as usize };
        for i in 0..=n as usize {
            for j in 0..=n as usize {
                let table = model.from_tau(&v.mul(&v.tau(i), &v.tau(j)));
                let direct = model.mul(&model.tau(i), &model.tau(j));
                assert_eq!(table, direct, "n={n} i={i} j={j}");
            }
        }
    }
}

#[test]
fn reproductive_property_and_unit() {
    for n in 1..=10 {
        let v = RealSpaceForm::new(n).unwrap();
        let phi = v.phi();
        for i in 0..=n as usize {
            assert_eq!(v.mul(&v.chi(), &v.tau(i)), v.tau(i));
            for j in 0..=(n as usize - i) {
                assert_eq!(v.mul(&v.pow(&phi, j as u32), &v.tau(i)), v.tau(i + j));
            }
        }
        let quarter = lam(rat(1, 4), 1);
        let rhs = v.add(&v.tau(0), &v.scale(&v.pow(&phi, 2), &quarter));
        assert_eq!(v.chi(), rhs);
        assert!(v.pow(&phi, n + 1).iter().all(LambdaScalar::is_zero));
    }
}

#[test]
fn euclidean_limit_is_truncated_polynomials() {
    let v = RealSpaceForm::new(6).unwrap();
    let zero = int(0);
    for i in 0..=6 {
        for j in 0..=6 {
            let p: Vec<Scalar> = v.mul(&v.tau(i), &v.tau(j)).iter().map(|c| c.eval_at(&zero)).collect();
            let want: Vec<Scalar> = (0..=6).map(|k| if k == i + j { Scalar::one() } else { Scalar::zero() }).collect();
            assert_eq!(p, want);
        }
    }
}

#[test]
fn sphere_values() {
    let v = RealSpaceForm::new(6).unwrap();
    let one = int(1);
    assert_eq!(v.sphere_value(&v.chi(), 2, &one).unwrap(), Scalar::from_int(2));
    for j in 0..=6 {
        assert_eq!(v.sphere_value(&v.tau(j), j, &one).unwrap(), Scalar::from_int(1 << (j + 1)));
    }
    let phi = v.phi();
    for l in 0..=3usize {
        for k in 0..=3u32 {
            let want = if k as usize <= l { 2 * 4i64.pow(k) } else { 0 };
            let got = v.sphere_value(&v.pow(&phi, 2 * k), 2 * l, &one).unwrap();
            assert_eq!(got, Scalar::from_int(want), "k={k} l={l}");
        }
        let t2 = v.pow(&v.t(), 2);
        assert_eq!(v.sphere_value(&t2, 2 * l, &one).unwrap(), Scalar::from_int(8 * l as i64));
    }
    assert!(v.sphere_value(&v.chi(), 2, &int(2)).is_err());
}

#[test]
fn t_phi_round_trip() {
    let v = RealSpaceForm::new(6).unwrap();
    let t = v.t();
    assert_eq!(v.apply_series(&v.phi_of_t_series(), &t), v.phi());
    let a = v.t_of_phi_series();
    let b = v.phi_of_t_series();
    assert_eq!(a.compose(&b), FormalSeries::x(a.order()));
    // λ = 0: t = φ = τ_1
    let zero = int(0);
    let t0: Vec<Scalar> = t.iter().map(|c| c.eval_at(&zero)).collect();
    let tau1: Vec<Scalar> = v.tau(1).iter().map(|c| c.eval_at(&zero)).collect();
    assert_eq!(t0, tau1);
}

#[test]
fn kinematic_routes_agree() {
    for n in 1..=8 {
        let v = RealSpaceForm::new(n).unwrap();
        let mut inputs: Vec<RealElement> = (0..=n as usize).map(|l| v.tau(l)).collect();
        inputs.push(v.chi());
        inputs.push(v.phi());
        for psi in &inputs {
            let k = v.kinematic(psi).unwrap();
            let swapped: TauTensor = k.iter().map(|((i, j), c)| ((*j, *i), c.clone())).collect();
            assert_eq!(k, swapped);
        }
        assert_eq!(v.kinematic(&v.chi()).unwrap(), v.kinematic_chi());
    }
}

#[test]
fn principal_formula_in_the_plane() {
    // (α_2/8)(τ_0⊗τ_2 + τ_1⊗τ_1 + τ_2⊗τ_0 + (λ/4) τ_2⊗τ_2), expanded by hand
    let v = RealSpaceForm::new(2).unwrap();
    let k = LambdaScalar::from_scalar(alpha(2).scale(&rat(1, 8)));
    let mut want = TauTensor::new();
    want.insert((0, 2), k.clone());
    want.insert((1, 1), k.clone());
    want.insert((2, 0), k.clone());
    want.insert((2, 2), &k * &lam(rat(1, 4), 1));
    assert_eq!(v.kinematic_chi(), want);
}

#[test]
fn flat_limit_matches_euclidean_tables() {
    let zero = int(0);
    for n in 1..=6u32 {
        let v = RealSpaceForm::new(n).unwrap();
        let so = SoAlgebra::new(n).unwrap();
        for l in 0..=n {
            let curved = v.kinematic(&v.tau(l as usize)).unwrap();
            let flat = so.kinematic(&so.t_pow(l)).unwrap();
            for i in 0..=n {
                for j in 0..=n {
                    let a = curved
                        .get(&(i as usize, j as usize))
                        .map(|c| c.eval_at(&zero))
                        .unwrap_or_else(Scalar::zero);
                    let b = flat.coeff(&intgeo_core::algebra::Monomial(vec![i]), &intgeo_core::algebra::Monomial(vec![j]));
                    assert_eq!(a, b, "n={n} l={l} ({i},{j})");
                }
            }
        }
    }
}

#[test]
fn complex_space_form_basics() {
    for n in 1..=5 {
        let c = ComplexSpaceForm::new(n).unwrap();
        for (g, k) in c.ideal_generators().iter().zip([n + 1, n + 2]) {
            assert!(is_lambda_homogeneous(g, k));
        }
        // λ = 0 gives the flat model
        let flat = un_algebra(n, Presentation::Relations).unwrap();
        let zero = int(0);
        for d in 0..=2 * n {
            for m in flat.generators().monomials(d) {
                let x = c.nf(&GradedElement::monomial(m.clone(), LambdaScalar::one())).unwrap();
                let x0 = x.map_coeffs(|v| v.eval_at(&zero));
                let y = flat.normal_form(&GradedElement::monomial(m, Scalar::one())).unwrap();
                assert_eq!(x0, y);
            }
        }
    }
}

#[test]
fn complex_line_relation() {
    // n = 1: f_2(s, t_λ) = s - t²/2 + (λ/8) t⁴ - …, cut at degree 2
    let c = ComplexSpaceForm::new(1).unwrap();
    let g = &c.ideal_generators()[0];
    let want = GradedElement::from_terms([
        (st(1, 0), LambdaScalar::one()),
        (st(0, 2), lam(rat(-1, 2), 0)),
    ]);
    assert_eq!(*g, want);
    let long = fk_lambda(2, 4);
    assert_eq!(long.coeff(&st(0, 4)), lam(rat(1, 8), 1));
}

#[test]
fn bfs_presentation_equals_cp_relations() {
    for n in 1..=5 {
        let bfs = ComplexSpaceForm::new(n).unwrap().ideal_at_one().unwrap();
        let cp = cp_evaluation_kernel(n);
        assert_eq!(bfs.filtration_dims(), cp.filtration_dims(), "n = {n}");
        assert_eq!(bfs, cp, "n = {n}");
    }
}

#[test]
fn fbar_relations_vanish() {
    for n in 1..=6 {
        for (i, r) in fbar_relations_check(n, 2 * n).unwrap() {
            assert!(r.is_zero(), "n={n} i={i}: {r:?}");
        }
    }
}

#[test]
fn fbar_flat_part_is_fk() {
    let zero = int(0);
    for k in 1..=8 {
        let f = fbar(k, 16).map_coeffs(|c| c.eval_at(&zero));
        assert_eq!(f, intgeo_core::hermitian::fk(k).lift::<Scalar>());
    }
}

#[test]
fn chapoton_series_to_order_twelve() {
    let r = chapoton_check(12);
    assert!(r.matches());
    assert_eq!(conjecture_coefficients(3), vec![int(1), int(3), int(13)]);
}
