//! Exact self-checks, grouped into named suites. Each check reports PASS or
//! FAIL with a short detail line instead of panicking.

use std::time::Instant;

use serde::Serialize;

use crate::algebra::{GradedElement, Tensor};
use crate::error::AlgebraError;
use crate::euclid::{mu_product_coefficient, principal_kinematic_value, SoAlgebra, TemplateBody};
use crate::hermitian::{
    cpn_top_value, hermitian_f_constant, hilbert_series_expected, pfaff_saalschutz_residual,
    restriction_check, st, st_generators, fk, HermitianAlgebra, Presentation,
};
use crate::scalar::{big, binomial, int, Coeff, Rational, Scalar};
use crate::series::FormalSeries;
use crate::space_forms::{chapoton_check, cp_evaluation_kernel, fbar_relations_check, ComplexSpaceForm, RealSpaceForm};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub suite: String,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    /// Wall time; left out of serialized reports so they stay reproducible.
    #[serde(skip)]
    pub millis: u128,
}

impl CheckReport {
    pub fn line(&self) -> String {
        format!(
            "{} {}::{} ({} ms) {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.suite,
            self.name,
            self.millis,
            self.detail
        )
    }
}

type CheckResult = Result<(bool, String), AlgebraError>;

fn run(suite: &str, name: &str, f: impl FnOnce() -> CheckResult) -> CheckReport {
    let start = Instant::now();
    let (passed, detail) = match f() {
        Ok(x) => x,
        Err(e) => (false, format!("error: {e}")),
    };
    tracing::debug!(suite, name, passed, "check finished");
    CheckReport {
        suite: suite.into(),
        name: name.into(),
        passed,
        detail,
        millis: start.elapsed().as_millis(),
    }
}

fn first_failure<T: std::fmt::Debug>(fails: &[T], what: &str) -> (bool, String) {
    match fails.first() {
        None => (true, what.to_string()),
        Some(f) => (false, format!("{} failures, first: {f:?}", fails.len())),
    }
}

/// Unit normalization makes every structure constant 1, for both coproducts
/// at once, in some basis.
pub fn nijenhuis_unity(max_n: u32) -> CheckReport {
    run("so", "nijenhuis_unity", || {
        let mut bad = Vec::new();
        for n in 1..=max_n {
            let r = SoAlgebra::new(n)?.nijenhuis_report()?;
            if !r.both_unit() {
                bad.push(format!(
                    "n={n}: t basis kinematic={} additive={}, θ basis kinematic={} additive={}, c={}",
                    r.kinematic_unit_in_t,
                    r.additive_unit_in_t,
                    r.kinematic_unit_in_theta,
                    r.additive_unit_in_theta,
                    r.c
                ));
            }
        }
        Ok(match bad.first() {
            None => (true, format!("n <= {max_n}")),
            Some(b) => (false, format!("{} dimensions fail; {b}", bad.len())),
        })
    })
}

/// `k(χ) = χ⊗μ_2 + μ_2⊗χ + (2/π) μ_1⊗μ_1`, and disk against unit square gives `π + 5`.
pub fn planar_kinematic() -> CheckReport {
    run("so", "planar_kinematic", || {
        let so = SoAlgebra::new(2)?;
        let k = so.kinematic_chi()?;
        let want = Tensor::outer(&so.mu(0), &so.mu(2), &Scalar::one())
            .add(&Tensor::outer(&so.mu(2), &so.mu(0), &Scalar::one()))
            .add(&Tensor::outer(&so.mu(1), &so.mu(1), &Scalar::term(int(2), -1)));
        // area + area + perimeter·perimeter / 2π
        let disk = TemplateBody::Ball(int(1));
        let square = TemplateBody::Box(vec![int(1), int(1)]);
        let classical = Scalar::pi_pow(1) + Scalar::from_int(1) + Scalar::from_int(4);
        let value = principal_kinematic_value(2, &disk, &square);
        Ok((
            k == want && value == classical,
            format!("disk/square = {value}"),
        ))
    })
}

/// `μ_i μ_j = C(i+j, i) ω_{i+j} / (ω_i ω_j) μ_{i+j}`, against multiplication in `Q[t]`.
pub fn mu_products(max_n: u32) -> CheckReport {
    run("so", "mu_products", || {
        let mut bad = Vec::new();
        for n in 1..=max_n {
            let so = SoAlgebra::new(n)?;
            for i in 0..=n {
                for j in 0..=(n - i) {
                    let prod = so.algebra().multiply(&so.mu(i), &so.mu(j))?;
                    let want = so.mu(i + j).mul_coeff(&mu_product_coefficient(i, j));
                    if prod != want {
                        bad.push((n, i, j));
                    }
                }
            }
        }
        Ok(first_failure(&bad, &format!("i + j <= n <= {max_n}")))
    })
}

/// Coefficients of `(1-x^{n+1})(1-x^{n+2}) / ((1-x)(1-x^2))` by series arithmetic.
pub fn poincare_series(n: u32) -> Vec<usize> {
    let len = 2 * n as usize + 1;
    let x = FormalSeries::<Rational>::x(len + 2);
    let one = FormalSeries::<Rational>::one(len + 2);
    let num = one.sub(&x.pow(n + 1)).mul(&one.sub(&x.pow(n + 2)));
    let inv1 = FormalSeries::one_plus_pow(&x.scale(&int(-1)), &int(-1));
    let inv2 = FormalSeries::one_plus_pow(&x.pow(2).scale(&int(-1)), &int(-1));
    let s = num.mul(&inv1).mul(&inv2);
    (0..len)
        .map(|i| s.coeff(i).to_integer().try_into().unwrap_or(usize::MAX))
        .collect()
}

pub fn hilbert_function(max_n: u32) -> CheckReport {
    run("un", "hilbert_function", || {
        let mut bad = Vec::new();
        for n in 1..=max_n {
            let h = crate::hermitian::un_algebra(n, Presentation::Relations)?.hilbert();
            let series = poincare_series(n);
            let palindromic = h.iter().eq(h.iter().rev());
            if h != series || h != hilbert_series_expected(n) || !palindromic {
                bad.push((n, h, series));
            }
        }
        Ok(first_failure(&bad, &format!("n <= {max_n}")))
    })
}

/// `s^k t^{2n-2k} ≡ C(2n-2k, n-k) / C(2n, n) · t^{2n}`.
pub fn cpn_reduction(max_n: u32) -> CheckReport {
    run("un", "cpn_reduction", || {
        let mut bad = Vec::new();
        for n in 1..=max_n {
            let h = HermitianAlgebra::new(n, Presentation::Relations)?;
            if h.algebra().basis(2 * n) != [st(0, 2 * n)] {
                bad.push((n, n + 1));
                continue;
            }
            let top = GradedElement::monomial(st(0, 2 * n), Scalar::one());
            let c_top = big(binomial(2 * n as i64, n as i64));
            for k in 0..=n {
                let x = GradedElement::monomial(st(k, 2 * n - 2 * k), Scalar::one());
                let c = big(binomial((2 * n - 2 * k) as i64, (n - k) as i64)) / c_top.clone();
                if h.nf(&x)? != top.scale(&c) {
                    bad.push((n, k));
                }
            }
        }
        Ok(first_failure(&bad, &format!("0 <= k <= n <= {max_n}")))
    })
}

pub fn presentations_agree(max_n: u32) -> CheckReport {
    run("un", "presentations_agree", || {
        let mut bad = Vec::new();
        for n in 1..=max_n {
            let a = HermitianAlgebra::new(n, Presentation::Relations)?;
            let b = HermitianAlgebra::new(n, Presentation::EvaluationKernel)?;
            for d in 0..=2 * n {
                if a.algebra().basis(d) != b.algebra().basis(d) {
                    bad.push((n, d));
                    continue;
                }
                for m in st_generators().monomials(d) {
                    let x = GradedElement::monomial(m, Scalar::one());
                    if a.nf(&x)? != b.nf(&x)? {
                        bad.push((n, d));
                    }
                }
            }
            // the disk values satisfy the relations
            let scale = a.projective_factor();
            if !a
                .volume_functional()
                .defects(a.algebra(), |m| scale.scale(&cpn_top_value(n, m)))?
                .is_empty()
            {
                bad.push((n, 2 * n));
            }
        }
        Ok(first_failure(&bad, &format!("n <= {max_n}")))
    })
}

pub fn pfaff_saalschutz(max_n: u32) -> CheckReport {
    run("un", "pfaff_saalschutz", || {
        let bad: Vec<(u32, u32)> = (0..=max_n)
            .flat_map(|n| (0..=n).map(move |k| (n, k)))
            .filter(|&(n, k)| pfaff_saalschutz_residual(n, k) != int(0))
            .collect();
        Ok(first_failure(&bad, &format!("0 <= k <= n <= {max_n}")))
    })
}

pub fn tasaki_matrices(max_n: u32) -> CheckReport {
    run("un", "tasaki_matrices", || {
        let mut bad = Vec::new();
        for n in 1..=max_n {
            let h = HermitianAlgebra::new(n, Presentation::Relations)?;
            for tm in h.tasaki_matrices()? {
                let direct = h.tasaki_matrix_direct(tm.k)?;
                let even_ok = tm.k % 2 == 1 || tm.is_palindromic();
                if tm != direct || !tm.matrix.is_symmetric() || !even_ok {
                    bad.push((n, tm.k));
                }
            }
        }
        Ok(first_failure(&bad, &format!("k <= n <= {max_n}")))
    })
}

pub fn fourier_iota(max_n: u32) -> CheckReport {
    run("un", "fourier_iota", || {
        let mut bad = Vec::new();
        for n in 1..=max_n {
            let h = HermitianAlgebra::new(n, Presentation::Relations)?;
            for d in 0..=2 * n {
                for m in h.algebra().basis(d).to_vec() {
                    let x = GradedElement::monomial(m, Scalar::one());
                    if h.fourier(&h.fourier(&x)?)? != x {
                        bad.push((n, d, "fourier"));
                    }
                    if d % 2 == 0 {
                        let ix = h.iota(&x)?;
                        if h.fourier(&ix)? != h.iota(&h.fourier(&x)?)? || h.iota(&ix)? != x {
                            bad.push((n, d, "iota"));
                        }
                    }
                }
            }
        }
        Ok(first_failure(&bad, &format!("n <= {max_n}")))
    })
}

fn bracket(f: &crate::hermitian::FirstOrderFormula) -> Vec<Scalar> {
    vec![
        f.coeffs.get(0, 0).clone(),
        f.coeffs.get(0, 1).clone(),
        f.coeffs.get(1, 0).clone(),
        f.coeffs.get(1, 1).clone(),
    ]
}

/// The `(4,5)` part of `k(μ_1)` on `C^4` and the `(4,3)` part of `a(μ_7)`.
pub fn first_order_u4() -> CheckReport {
    run("un", "first_order_u4", || {
        let h = HermitianAlgebra::new(4, Presentation::Relations)?;
        let base = [30, -6, -3, 7];
        let kin = h.first_order_formula(4, 5)?.scaled(&h.projective_factor());
        let want_kin: Vec<Scalar> = base
            .iter()
            .map(|&c| Scalar::term(int(c) / int(5), -4))
            .collect();
        let add = h.additive_first_order(4, 3)?;
        let want_add: Vec<Scalar> = base
            .iter()
            .map(|&c| Scalar::from_rational(int(c) / int(120)))
            .collect();
        let rest_zero = (0..2).all(|j| h.first_order_formula(4, 5).map(|f| f.coeffs.get(2, j).is_zero()).unwrap_or(false));
        let got_kin = bracket(&kin);
        let got_add = bracket(&add);
        Ok((
            got_kin == want_kin && got_add == want_add && rest_zero,
            format!(
                "CP^4 [{}], C^4 additive [{}]",
                got_kin.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", "),
                got_add.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")
            ),
        ))
    })
}

/// Klain kernel, vertex values, restriction maps and `μ_{k,0} = c f_k`.
pub fn hermitian_structure(max_n: u32) -> CheckReport {
    run("un", "hermitian_structure", || {
        let mut bad = Vec::new();
        for n in 1..=max_n {
            let h = HermitianAlgebra::new(n, Presentation::Relations)?;
            for f in [fk(n + 1), fk(n + 2)] {
                let f = f.lift::<Scalar>();
                let e = f.homogeneous_degree(&st_generators()).unwrap_or(0);
                for d in (0..=2 * n).take_while(|d| d + e <= 2 * n) {
                    for m in st_generators().monomials(d) {
                        if !h.klain_of_polynomial(&f.mul_monomial(&m), d + e)?.iter().all(Coeff::is_zero) {
                            bad.push(format!("n={n}: Klain of relation"));
                        }
                    }
                }
            }
            for k in 0..=2 * n {
                let lo = k.saturating_sub(n);
                for q in lo..=k / 2 {
                    let kl = h.klain(&h.hermitian_mu(k, q)?, k)?;
                    for j in 0..=kl.vars {
                        let want = if j == q - lo { Scalar::one() } else { Scalar::zero() };
                        if kl.at_vertex(j) != want {
                            bad.push(format!("n={n}: Klain of μ_{k},{q}"));
                        }
                    }
                }
            }
            if !restriction_check(n)? {
                bad.push(format!("n={n}: restriction"));
            }
        }
        let mut constants = Vec::new();
        for k in 1..=max_n.max(1) {
            constants.push(format!("c_{k}={}", hermitian_f_constant(k)?));
        }
        Ok(match bad.first() {
            None => (true, format!("n <= {max_n}; μ_k0 = c f_k: {}", constants.join(" "))),
            Some(b) => (false, format!("{} failures, first: {b}", bad.len())),
        })
    })
}

/// Reproductive property, `χ = τ_0 + (λ/4)φ^2`, series round trip, and
/// `t^2(S^{2l}) = 8l` at `λ = 1`.
pub fn real_space_forms(max_n: u32, max_l: u32) -> CheckReport {
    run("spaceform", "real_space_forms", || {
        let mut bad = Vec::new();
        let quarter = crate::scalar::LambdaScalar::term(Scalar::from_rational(crate::scalar::rat(1, 4)), 1);
        for n in 1..=max_n {
            let v = RealSpaceForm::new(n)?;
            let phi = v.phi();
            for i in 0..=n as usize {
                for j in 0..=(n as usize - i) {
                    if v.mul(&v.pow(&phi, j as u32), &v.tau(i)) != v.tau(i + j) {
                        bad.push(format!("n={n}: φ^{j} τ_{i}"));
                    }
                }
            }
            if v.chi() != v.add(&v.tau(0), &v.scale(&v.pow(&phi, 2), &quarter)) {
                bad.push(format!("n={n}: χ"));
            }
            v.kinematic(&v.chi())?;
        }
        let v = RealSpaceForm::new(2 * max_l.max(1))?;
        let t = v.t();
        if v.apply_series(&v.phi_of_t_series(), &t) != v.phi() {
            bad.push("round trip".into());
        }
        let t2 = v.pow(&t, 2);
        for l in 0..=max_l {
            if v.sphere_value(&t2, 2 * l as usize, &int(1))? != Scalar::from_int(8 * l as i64) {
                bad.push(format!("t^2(S^{})", 2 * l));
            }
        }
        Ok(first_failure(&bad, &format!("n <= {max_n}, l <= {max_l}")))
    })
}

pub fn bfs_presentation(max_n: u32) -> CheckReport {
    run("spaceform", "bfs_presentation", || {
        let mut bad = Vec::new();
        let mut dims = Vec::new();
        for n in 1..=max_n {
            let bfs = ComplexSpaceForm::new(n)?.ideal_at_one()?;
            let cp = cp_evaluation_kernel(n);
            if bfs != cp {
                bad.push((n, bfs.filtration_dims(), cp.filtration_dims()));
            }
            dims.push(format!("n={n}: dim I = {}", cp.dim()));
        }
        Ok(match bad.first() {
            None => (true, dims.join(", ")),
            Some(b) => (false, format!("{} failures, first: {b:?}", bad.len())),
        })
    })
}

pub fn fbar_relations(max_n: u32) -> CheckReport {
    run("spaceform", "fbar_relations", || {
        let mut bad = Vec::new();
        for n in 1..=max_n {
            for (i, r) in fbar_relations_check(n, 2 * n)? {
                if !r.is_zero() {
                    bad.push((n, i));
                }
            }
        }
        Ok(first_failure(&bad, &format!("n < i <= 2n, n <= {max_n}")))
    })
}

pub fn chapoton(max_m: u32) -> CheckReport {
    run("spaceform", "chapoton", || {
        let r = chapoton_check(max_m);
        let shown: Vec<String> = r.g.iter().skip(1).take(5).map(|c| c.to_string()).collect();
        Ok((r.matches(), format!("g = {} ...", shown.join(", "))))
    })
}

/// Dimension caps for [`exact_suite`]; `None` uses the full default ranges.
#[derive(Clone, Copy, Debug, Default)]
pub struct SuiteBounds {
    pub max_dim: Option<u32>,
}

impl SuiteBounds {
    fn cap(&self, default: u32) -> u32 {
        self.max_dim.map_or(default, |m| m.min(default))
    }
}

pub const SUITES: [&str; 3] = ["so", "un", "spaceform"];

/// Runs the exact checks of the named suite.
pub fn exact_suite(suite: &str, bounds: SuiteBounds) -> Option<Vec<CheckReport>> {
    let b = bounds;
    Some(match suite {
        "so" => vec![nijenhuis_unity(b.cap(10)), planar_kinematic(), mu_products(b.cap(10))],
        "un" => vec![
            hilbert_function(b.cap(8)),
            cpn_reduction(b.cap(6)),
            presentations_agree(b.cap(6)),
            pfaff_saalschutz(40),
            tasaki_matrices(b.cap(6)),
            fourier_iota(b.cap(5)),
            first_order_u4(),
            hermitian_structure(b.cap(5)),
        ],
        "spaceform" => vec![
            real_space_forms(b.cap(10), 10),
            bfs_presentation(b.cap(5)),
            fbar_relations(b.cap(6)),
            chapoton(12),
        ],
        _ => return None,
    })
}
