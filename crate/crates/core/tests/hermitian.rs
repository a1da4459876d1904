use intgeo_core::algebra::{GradedElement, Tensor};
use intgeo_core::hermitian::*;
use intgeo_core::scalar::{big, binomial, factorial, int, rat};
use intgeo_core::{Coeff, Rational, Scalar};

fn alg(n: u32) -> HermitianAlgebra {
    HermitianAlgebra::new(n, Presentation::Relations).unwrap()
}

fn q(x: Rational) -> Scalar {
    Scalar::from_rational(x)
}

#[test]
fn hilbert_function_matches_closed_form() {
    for n in 1..=8 {
        let h = alg(n);
        assert_eq!(h.algebra().hilbert(), hilbert_series_expected(n), "n = {n}");
    }
}

#[test]
fn both_presentations_agree() {
    for n in 1..=6 {
        let a = alg(n);
        let b = HermitianAlgebra::new(n, Presentation::EvaluationKernel).unwrap();
        assert_eq!(a.algebra().hilbert(), b.algebra().hilbert());
        for d in 0..=2 * n {
            for m in st_generators().monomials(d) {
                let x = GradedElement::monomial(m, Scalar::one());
                assert_eq!(a.nf(&x).unwrap(), b.nf(&x).unwrap(), "n = {n}");
            }
        }
    }
}

#[test]
fn disk_values_are_consistent_with_relations() {
    for n in 1..=7 {
        let h = alg(n);
        let scale = Scalar::term(big(factorial(n)), -(n as i32));
        let defects = h
            .volume_functional()
            .defects(h.algebra(), |m| scale.scale(&cpn_top_value(n, m)))
            .unwrap();
        assert!(defects.is_empty(), "n = {n}: {defects:?}");
    }
}

#[test]
fn fk_recursion_holds() {
    for k in 1..=20 {
        assert!(fk_recursion_defect(k).is_zero());
    }
}

#[test]
fn pfaff_saalschutz_identity() {
    for n in 0..=40 {
        for k in 0..=n {
            assert_eq!(pfaff_saalschutz_residual(n, k), int(0), "n = {n}, k = {k}");
        }
    }
}

#[test]
fn ideal_lies_in_klain_kernel() {
    for n in 1..=5 {
        let h = alg(n);
        for f in [fk(n + 1), fk(n + 2)] {
            let f = f.lift::<Scalar>();
            for d in 0..=2 * n {
                for m in st_generators().monomials(d) {
                    let x = f.mul_monomial(&m);
                    let deg = d + f.homogeneous_degree(&st_generators()).unwrap();
                    if deg <= 2 * n {
                        assert!(h.klain_of_polynomial(&x, deg).unwrap().iter().all(Coeff::is_zero));
                    }
                }
            }
        }
    }
}

#[test]
fn fourier_is_an_involution() {
    for n in 1..=5 {
        let h = alg(n);
        for d in 0..=2 * n {
            for m in h.algebra().basis(d).to_vec() {
                let x = GradedElement::monomial(m, Scalar::one());
                assert_eq!(h.fourier(&h.fourier(&x).unwrap()).unwrap(), x);
            }
        }
        assert_eq!(h.fourier(&h.algebra().one()).unwrap(), h.volume());
    }
}

#[test]
fn hermitian_volumes_have_vertex_klain_functions() {
    for n in 1..=5 {
        let h = alg(n);
        for k in 0..=2 * n {
            let lo = k.saturating_sub(n);
            for qq in lo..=k / 2 {
                let kl = h.klain(&h.hermitian_mu(k, qq).unwrap(), k).unwrap();
                for j in 0..=kl.vars {
                    let want = if j == qq - lo { Scalar::one() } else { Scalar::zero() };
                    assert_eq!(kl.at_vertex(j), want, "n={n} k={k} q={qq} j={j}");
                }
            }
        }
    }
}

#[test]
fn monomial_klain_values_at_all_ones_vertex() {
    // Klain(s^a t^{2p-2a}) at v_p times π^p / p! is C(2p-2a, p-a)
    for n in 2..=5 {
        let h = alg(n);
        for p in 0..=n {
            for a in 0..=p {
                let x = GradedElement::monomial(st(a, 2 * p - 2 * a), Scalar::one());
                let kl = h.klain(&x, 2 * p).unwrap();
                if kl.complement {
                    continue;
                }
                let v = kl.at_vertex(kl.vars) * Scalar::term(int(1) / big(factorial(p)), p as i32);
                assert_eq!(v, q(big(binomial((2 * p - 2 * a) as i64, (p - a) as i64))));
            }
        }
    }
}

#[test]
fn iota_relations() {
    for n in 1..=5 {
        let h = alg(n);
        for d in (0..=2 * n).step_by(2) {
            for m in h.algebra().basis(d).to_vec() {
                let x = GradedElement::monomial(m.clone(), Scalar::one());
                let ix = h.iota(&x).unwrap();
                assert_eq!(h.iota(&ix).unwrap(), x);
                assert_eq!(
                    h.fourier(&ix).unwrap(),
                    h.iota(&h.fourier(&x).unwrap()).unwrap()
                );
            }
        }
        // ι preserves the ideal of relations in even degrees
        let t = GradedElement::monomial(st(0, 1), int(1));
        for (f, deg) in [(fk(n + 1), n + 1), (fk(n + 2), n + 2)] {
            for shift in [0, 1] {
                if (deg + shift) % 2 == 1 {
                    continue;
                }
                let g = if shift == 1 { f.mul(&t) } else { f.clone() };
                if deg + shift <= 2 * n {
                    let ig = iota_polynomial(&g).lift::<Scalar>();
                    assert!(h.nf(&ig).unwrap().is_zero(), "n={n} deg={deg} shift={shift}");
                }
            }
        }
    }
}

#[test]
fn tasaki_matrices_two_routes_symmetric_palindromic() {
    for n in 1..=6 {
        let h = alg(n);
        for tm in h.tasaki_matrices().unwrap() {
            let direct = h.tasaki_matrix_direct(tm.k).unwrap();
            assert_eq!(tm, direct, "n={n} k={}", tm.k);
            assert!(tm.matrix.is_symmetric());
            if tm.k % 2 == 0 {
                assert!(tm.is_palindromic(), "n={n} k={}", tm.k);
            }
        }
    }
}

#[test]
fn kinematic_of_euler_characteristic_is_symmetric() {
    for n in 1..=4 {
        let h = alg(n);
        let k = h.kinematic_chi().unwrap();
        assert_eq!(k.swap(), *k);
    }
}

#[test]
fn u1_matches_planar_rotations() {
    // s = t^2/2 in U(1); k(χ) = χ ⊗ vol + (2/π) μ_1 ⊗ μ_1 + vol ⊗ χ in the μ basis
    let h = alg(1);
    let k = h.kinematic_chi().unwrap();
    let half_t2 = GradedElement::monomial(st(0, 2), q(rat(1, 2)));
    assert_eq!(h.nf(&h.s()).unwrap(), h.nf(&half_t2).unwrap());
    let mu1 = h.intrinsic_volume(1);
    let vol = h.volume();
    let one = h.algebra().one();
    let pi = Scalar::pi_pow(1);
    let want = Tensor::outer(&one, &vol, &Scalar::one())
        .add(&Tensor::outer(&vol, &one, &Scalar::one()))
        .add(&Tensor::outer(
            &mu1,
            &mu1,
            &(Scalar::from_int(2) * pi.inverse().unwrap()),
        ));
    assert_eq!(*k, want);
}

#[test]
fn first_order_u4_bidegree_4_5() {
    let h = alg(4);
    let f = h.first_order_formula(4, 5).unwrap();
    let c = |x: i64| q(rat(x, 120));
    assert_eq!(f.coeffs.rows(), 3);
    assert_eq!(f.coeffs.cols(), 2);
    assert_eq!(f.coeffs.get(0, 0), &c(30));
    assert_eq!(f.coeffs.get(0, 1), &c(-6));
    assert_eq!(f.coeffs.get(1, 0), &c(-3));
    assert_eq!(f.coeffs.get(1, 1), &c(7));
    assert!(f.coeffs.get(2, 0).is_zero() && f.coeffs.get(2, 1).is_zero());
    let cp = f.scaled(&h.projective_factor());
    assert_eq!(cp.coeffs.get(0, 0), &Scalar::term(rat(30, 5), -4));
    assert_eq!(cp.coeffs.get(0, 1), &Scalar::term(rat(-6, 5), -4));
    assert_eq!(cp.coeffs.get(1, 0), &Scalar::term(rat(-3, 5), -4));
    assert_eq!(cp.coeffs.get(1, 1), &Scalar::term(rat(7, 5), -4));
}

#[test]
fn additive_first_order_u4_bidegree_4_3() {
    let h = alg(4);
    let f = h.additive_first_order(4, 3).unwrap();
    let c = |x: i64| q(rat(x, 120));
    assert_eq!(f.coeffs.get(0, 0), &c(30));
    assert_eq!(f.coeffs.get(0, 1), &c(-6));
    assert_eq!(f.coeffs.get(1, 0), &c(-3));
    assert_eq!(f.coeffs.get(1, 1), &c(7));
}

#[test]
fn restriction_is_compatible() {
    for n in 1..=5 {
        assert!(restriction_check(n).unwrap(), "n = {n}");
    }
}

#[test]
fn mu_zero_is_multiple_of_fk() {
    for k in 1..=8 {
        let c = hermitian_f_constant(k).unwrap();
        assert!(c.single_term().is_some());
        // the same constant holds inside every Val^{U(n)}, n ≥ k
        for n in k..=k + 1 {
            let h = alg(n);
            let f = h.nf(&fk(k).lift::<Scalar>()).unwrap().mul_coeff(&c);
            assert_eq!(h.hermitian_mu(k, 0).unwrap(), f);
        }
    }
}

#[test]
fn kinematic_document_roundtrips() {
    let h = alg(2);
    for b in [UnBasis::Monomial, UnBasis::Tasaki, UnBasis::Hermitian] {
        let doc = h.kinematic_document(b).unwrap();
        let s = serde_json::to_string(&doc).unwrap();
        let back: intgeo_core::table::FormulaTableDocument = serde_json::from_str(&s).unwrap();
        assert_eq!(doc, back);
    }
}
