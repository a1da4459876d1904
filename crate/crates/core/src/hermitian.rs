//! Unitarily invariant valuations on `C^n`: `Q[s,t]/(f_{n+1}, f_{n+2})`,
//! Klain functions, Fourier transform, the involution ι and the kinematic
//! and additive coproducts.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::algebra::{
    inverse_transpose_pairing, invert_pairing, pairing_matrix, tensor_in_bases, DisplayBasis,
    GeneratorSet, GradedElement, IdealGenerator, LinearFunctional, Monomial, QuotientAlgebra,
    Tensor, Truncation,
};
use crate::error::AlgebraError;
use crate::euclid::mu_to_t_factor;
use crate::linalg::{invert_exact, kernel, Matrix};
use crate::scalar::{big, binomial, factorial, int, omega, Coeff, Rational, Scalar};
use crate::table::{FormulaTableDocument, Normalization, TableTerm};

pub fn st_generators() -> GeneratorSet {
    GeneratorSet::new(&[("s", 2), ("t", 1)])
}

/// `s^a t^b`
pub fn st(a: u32, b: u32) -> Monomial {
    Monomial(vec![a, b])
}

/// Weighted-degree-`k` part of `log(1 + s + t)`.
pub fn fk(k: u32) -> GradedElement<Rational> {
    // (s+t)^j contributes C(j, a) s^a t^{j-a} in weighted degree j + a
    let mut out = GradedElement::zero();
    for j in k.div_ceil(2)..=k {
        let a = k - j;
        let sign = if j % 2 == 1 { 1 } else { -1 };
        let c = int(sign) / int(j as i64) * big(binomial(j as i64, a as i64));
        out.add_term(st(a, j - a), c);
    }
    out
}

/// `[f_1, …, f_max_k]`.
pub fn fk_polynomials(max_k: u32) -> Vec<GradedElement<Rational>> {
    (1..=max_k).map(fk).collect()
}

/// `k s f_k + (k+1) t f_{k+1} + (k+2) f_{k+2}`, which vanishes identically.
pub fn fk_recursion_defect(k: u32) -> GradedElement<Rational> {
    let s = GradedElement::monomial(st(1, 0), int(1));
    let t = GradedElement::monomial(st(0, 1), int(1));
    s.mul(&fk(k))
        .scale(&int(k as i64))
        .add(&t.mul(&fk(k + 1)).scale(&int(k as i64 + 1)))
        .add(&fk(k + 2).scale(&int(k as i64 + 2)))
}

/// `s^a t^b (CP^n)` for `2a + b = 2n`: `C(2n-2a, n-a)`.
pub fn cpn_top_value(n: u32, m: &Monomial) -> Rational {
    let (a, b) = (m.0[0], m.0[1]);
    if 2 * a + b != 2 * n {
        return int(0);
    }
    big(binomial((2 * n - 2 * a) as i64, (n - a) as i64))
}

/// `t^a u^b` with `u = 4s - t^2`, expanded in `s, t`.
pub fn tu_monomial(a: u32, b: u32) -> GradedElement<Rational> {
    let mut out = GradedElement::zero();
    for j in 0..=b {
        // C(b, j) (4s)^j (-t^2)^{b-j}
        let sign = if (b - j) % 2 == 0 { 1 } else { -1 };
        let c = big(binomial(b as i64, j as i64)) * big(num_bigint::BigInt::from(4u8).pow(j)) * int(sign);
        out.add_term(st(j, a + 2 * (b - j)), c);
    }
    out
}

/// Rewrites a polynomial in `s, t` as a polynomial in `t, u`; keys are `(a, b)` for `t^a u^b`.
pub fn st_to_tu<C: Coeff>(x: &GradedElement<C>) -> BTreeMap<(u32, u32), C> {
    let mut out: BTreeMap<(u32, u32), C> = BTreeMap::new();
    for (m, c) in x.terms() {
        let (a, b) = (m.0[0], m.0[1]);
        // s^a = 4^{-a} (u + t^2)^a
        let four = big(num_bigint::BigInt::from(4u8).pow(a));
        for j in 0..=a {
            let k = (b + 2 * (a - j), j);
            let v = c.scale(&(big(binomial(a as i64, j as i64)) / four.clone()));
            let e = out.entry(k).or_insert_with(C::zero);
            *e = e.add_ref(&v);
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

pub fn tu_to_st<C: Coeff>(x: &BTreeMap<(u32, u32), C>) -> GradedElement<C> {
    let mut out = GradedElement::zero();
    for ((a, b), c) in x {
        out = out.add(&tu_monomial(*a, *b).lift::<C>().mul_coeff(c));
    }
    out
}

/// `π^k / (ω_k (k-2q)! (2q)!)`, so that `τ_{k,q} = tasaki_factor · t^{k-2q} u^q`.
pub fn tasaki_factor(k: u32, q: u32) -> Scalar {
    let den = omega(k).scale(&(big(factorial(k - 2 * q)) * big(factorial(2 * q))));
    Scalar::pi_pow(k as i32) * den.inverse().expect("single term")
}

/// The Tasaki valuation `τ_{k,q}` as a polynomial in `s, t` (not reduced).
pub fn tau_poly(k: u32, q: u32) -> GradedElement<Scalar> {
    tu_monomial(k - 2 * q, q).lift::<Scalar>().mul_coeff(&tasaki_factor(k, q))
}

/// `Σ_{i=0}^{⌊(n+1)/2⌋} (-1)^i/(n+1-i) C(n+1-i, i) C(2n-2k-2i, n-k-i) - (-1)^{n-k}/(n+1) C(k, n-k)`.
pub fn pfaff_saalschutz_residual(n: u32, k: u32) -> Rational {
    let (n, k) = (n as i64, k as i64);
    let mut lhs = int(0);
    for i in 0..=(n + 1) / 2 {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        let term = int(sign) / int(n + 1 - i)
            * big(binomial(n + 1 - i, i))
            * big(binomial(2 * n - 2 * k - 2 * i, n - k - i));
        lhs += term;
    }
    let sign = if (n - k) % 2 == 0 { 1 } else { -1 };
    let rhs = int(sign) / int(n + 1) * big(binomial(k, n - k));
    lhs - rhs
}

/// How the ideal of relations is obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Presentation {
    /// `(f_{n+1}, f_{n+2})`
    Relations,
    /// Kernel of the top-degree pairing determined by the values on `CP^n`.
    EvaluationKernel,
}

/// Display bases of `Val^{U(n)}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum UnBasis {
    /// normal-form monomials `s^a t^b`
    Monomial,
    /// `τ_{k,q}` for `k ≤ n`, Fourier transforms `τ̂_{2n-k,q}` above
    Tasaki,
    /// hermitian intrinsic volumes `μ_{k,q}`
    Hermitian,
}

impl UnBasis {
    pub fn tag(self) -> &'static str {
        match self {
            UnBasis::Monomial => "monomial",
            UnBasis::Tasaki => "tasaki",
            UnBasis::Hermitian => "hermitian",
        }
    }
}

#[derive(Clone, Debug)]
struct KlainDegree {
    /// number of Kähler angles forced to zero (`max(0, k - n)`)
    shift: u32,
    /// number of free variables
    vars: u32,
    to_klain: Matrix<Scalar>,
    from_klain: Matrix<Scalar>,
}

/// Klain function of a homogeneous valuation, as coefficients on the
/// elementary symmetric functions `σ_{vars, i}` of the squared cosines of
/// the Kähler angles of `E` (degree `≤ n`) or of `E^⊥` (degree `> n`).
#[derive(Clone, Debug, PartialEq)]
pub struct KlainPolynomial {
    pub degree: u32,
    pub vars: u32,
    pub complement: bool,
    pub coeffs: Vec<Scalar>,
}

impl KlainPolynomial {
    /// Value at the vertex with `j` ones among the free variables.
    pub fn at_vertex(&self, j: u32) -> Scalar {
        let mut acc = Scalar::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            acc += &c.scale(&big(binomial(j as i64, i as i64)));
        }
        acc
    }
}

/// Bidegree component of a coproduct with both legs written as Klain
/// polynomials: `coeffs[i][j]` multiplies `σ_i(left) σ_j(right)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FirstOrderFormula {
    pub n: u32,
    pub left_degree: u32,
    pub right_degree: u32,
    pub left_complement: bool,
    pub right_complement: bool,
    pub coeffs: Matrix<Scalar>,
}

impl FirstOrderFormula {
    pub fn scaled(&self, c: &Scalar) -> FirstOrderFormula {
        FirstOrderFormula {
            coeffs: self.coeffs.map(|x| x * c),
            ..self.clone()
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TasakiMatrix {
    pub n: u32,
    pub k: u32,
    pub matrix: Matrix<Scalar>,
}

impl TasakiMatrix {
    /// `(T)_{i,j} = (T)_{l-i,l-j}` for the `(l+1) × (l+1)` matrix; expected for even `k`.
    pub fn is_palindromic(&self) -> bool {
        let l = self.matrix.rows() - 1;
        (0..=l).all(|i| (0..=l).all(|j| self.matrix.get(i, j) == self.matrix.get(l - i, l - j)))
    }
}

/// `Val^{U(n)}(C^n)` with its volume functional and Klain maps.
#[derive(Debug)]
pub struct HermitianAlgebra {
    n: u32,
    alg: QuotientAlgebra<Scalar>,
    ev: LinearFunctional<Scalar>,
    klain: Vec<KlainDegree>,
    k_chi: OnceLock<Tensor<Scalar>>,
}

impl HermitianAlgebra {
    pub fn new(n: u32, presentation: Presentation) -> Result<Self, AlgebraError> {
        if n == 0 {
            return Err(AlgebraError::InvalidDimension(n));
        }
        let alg = un_algebra(n, presentation)?;
        let scale = Scalar::term(big(factorial(n)), -(n as i32));
        let ev = LinearFunctional::from_monomial_values(&alg, 2 * n, |m| {
            scale.scale(&cpn_top_value(n, m))
        });
        let mut klain = Vec::new();
        for k in 0..=2 * n {
            let shift = k.saturating_sub(n);
            let vars = (k / 2).min((2 * n - k) / 2);
            let basis = alg.basis(k);
            if basis.len() != vars as usize + 1 {
                return Err(AlgebraError::Unsupported(format!(
                    "degree {k}: dimension {} but {} Klain coordinates",
                    basis.len(),
                    vars + 1
                )));
            }
            let cols: Vec<Vec<Scalar>> = basis
                .iter()
                .map(|m| klain_of_free_monomial(k, shift, vars, m))
                .collect();
            let to_klain = Matrix::from_fn(vars as usize + 1, basis.len(), |i, j| cols[j][i].clone());
            let from_klain = invert_exact(&to_klain)?;
            klain.push(KlainDegree {
                shift,
                vars,
                to_klain,
                from_klain,
            });
        }
        Ok(HermitianAlgebra {
            n,
            alg,
            ev,
            klain,
            k_chi: OnceLock::new(),
        })
    }

    pub fn dim(&self) -> u32 {
        self.n
    }

    pub fn algebra(&self) -> &QuotientAlgebra<Scalar> {
        &self.alg
    }

    pub fn volume_functional(&self) -> &LinearFunctional<Scalar> {
        &self.ev
    }

    pub fn s(&self) -> GradedElement<Scalar> {
        self.alg.generator(0)
    }

    pub fn t(&self) -> GradedElement<Scalar> {
        self.alg.generator(1)
    }

    pub fn nf(&self, x: &GradedElement<Scalar>) -> Result<GradedElement<Scalar>, AlgebraError> {
        self.alg.normal_form(x)
    }

    /// The volume `μ_{2n}` as an element.
    pub fn volume(&self) -> GradedElement<Scalar> {
        self.alg.from_coords(
            2 * self.n,
            &[self.ev.values()[0].inverse().expect("single term")],
        )
    }

    fn check_degree(&self, k: u32) -> Result<(), AlgebraError> {
        if k > 2 * self.n {
            return Err(AlgebraError::InvalidDegree {
                degree: k,
                allowed: format!("0..={}", 2 * self.n),
            });
        }
        Ok(())
    }

    /// `τ_{k,q}`, `k ≤ n`.
    pub fn tau(&self, k: u32, q: u32) -> Result<GradedElement<Scalar>, AlgebraError> {
        if k > self.n || 2 * q > k {
            return Err(AlgebraError::InvalidDegree {
                degree: k,
                allowed: format!("k <= {} and 2q <= k", self.n),
            });
        }
        self.nf(&tau_poly(k, q))
    }

    /// `τ̂_{k,q}`, of degree `2n - k`.
    pub fn tau_hat(&self, k: u32, q: u32) -> Result<GradedElement<Scalar>, AlgebraError> {
        Ok(self.fourier(&self.tau(k, q)?)?)
    }

    /// Hermitian intrinsic volume `μ_{k,q}`, `max(0, k-n) ≤ q ≤ k/2`.
    pub fn hermitian_mu(&self, k: u32, q: u32) -> Result<GradedElement<Scalar>, AlgebraError> {
        self.check_degree(k)?;
        let lo = k.saturating_sub(self.n);
        if q < lo || 2 * q > k {
            return Err(AlgebraError::InvalidDegree {
                degree: k,
                allowed: format!("{lo} <= q <= {}", k / 2),
            });
        }
        if k <= self.n {
            let mut out = GradedElement::zero();
            for l in q..=k / 2 {
                let sign = if (l - q) % 2 == 0 { 1 } else { -1 };
                let c = big(binomial(l as i64, q as i64)) * int(sign);
                out = out.add(&self.tau(k, l)?.scale(&c));
            }
            Ok(out)
        } else {
            // μ_{k,q} = Fourier of μ_{2n-k, q-(k-n)}
            self.fourier(&self.hermitian_mu(2 * self.n - k, q - lo)?)
        }
    }

    /// Klain coordinates of a homogeneous element of degree `k`.
    pub fn klain(&self, x: &GradedElement<Scalar>, k: u32) -> Result<KlainPolynomial, AlgebraError> {
        self.check_degree(k)?;
        let nf = self.nf(x)?;
        if nf.terms().any(|(m, _)| self.alg.generators().degree(m) != k) {
            return Err(AlgebraError::NotHomogeneous);
        }
        let kd = &self.klain[k as usize];
        Ok(KlainPolynomial {
            degree: k,
            vars: kd.vars,
            complement: k > self.n,
            coeffs: kd.to_klain.mul_vec(&self.alg.coords(&nf, k)),
        })
    }

    /// Element of degree `k` with the given Klain coordinates.
    pub fn from_klain(&self, k: u32, coeffs: &[Scalar]) -> GradedElement<Scalar> {
        let coords = self.klain[k as usize].from_klain.mul_vec(coeffs);
        self.alg.from_coords(k, &coords)
    }

    /// Klain coordinates of an arbitrary polynomial (no reduction): used to
    /// check that the ideal lies in the kernel of the Klain map.
    pub fn klain_of_polynomial(&self, x: &GradedElement<Scalar>, k: u32) -> Result<Vec<Scalar>, AlgebraError> {
        self.check_degree(k)?;
        let kd = &self.klain[k as usize];
        let mut acc = vec![Scalar::zero(); kd.vars as usize + 1];
        for (m, c) in x.terms() {
            if self.alg.generators().degree(m) != k {
                continue;
            }
            for (a, v) in acc.iter_mut().zip(klain_of_free_monomial(k, kd.shift, kd.vars, m)) {
                *a += &(c * &v);
            }
        }
        Ok(acc)
    }

    /// Alesker–Fourier transform: degree `k` to `2n-k`, the identity on
    /// Klain coordinates under `E ↦ E^⊥`.
    pub fn fourier(&self, x: &GradedElement<Scalar>) -> Result<GradedElement<Scalar>, AlgebraError> {
        let nf = self.nf(x)?;
        let mut out = GradedElement::zero();
        for k in 0..=2 * self.n {
            let part = nf.homogeneous_part(self.alg.generators(), k);
            if part.is_zero() {
                continue;
            }
            let kl = self.klain(&part, k)?;
            out = out.add(&self.from_klain(2 * self.n - k, &kl.coeffs));
        }
        Ok(out)
    }

    /// ι: `τ_{2l,q} ↦ τ_{2l,l-q}`, i.e. `t^{2a} u^b ↦ t^{2b} u^a`, on even degrees.
    pub fn iota(&self, x: &GradedElement<Scalar>) -> Result<GradedElement<Scalar>, AlgebraError> {
        let nf = self.nf(x)?;
        if nf.terms().any(|(m, _)| self.alg.generators().degree(m) % 2 == 1) {
            return Err(AlgebraError::Unsupported("ι is defined on even degrees only".into()));
        }
        self.nf(&iota_polynomial(&nf))
    }

    /// `k(χ)`, by inverting the volume pairing degree by degree.
    pub fn kinematic_chi(&self) -> Result<&Tensor<Scalar>, AlgebraError> {
        if let Some(t) = self.k_chi.get() {
            return Ok(t);
        }
        let t = invert_pairing(&self.alg, &self.ev)?;
        Ok(self.k_chi.get_or_init(|| t))
    }

    /// `k(φ) = (φ ⊗ χ) · k(χ)`.
    pub fn kinematic(&self, phi: &GradedElement<Scalar>) -> Result<Tensor<Scalar>, AlgebraError> {
        self.kinematic_chi()?.mul_left(&self.alg, phi)
    }

    /// `a(φ) = (^ ⊗ ^) k(φ̂)`.
    pub fn additive(&self, phi: &GradedElement<Scalar>) -> Result<Tensor<Scalar>, AlgebraError> {
        let k = self.kinematic(&self.fourier(phi)?)?;
        k.map_legs(
            |a| self.fourier(&GradedElement::monomial(a.clone(), Scalar::one())),
            |b| self.fourier(&GradedElement::monomial(b.clone(), Scalar::one())),
        )
    }

    pub fn display_basis(&self, basis: UnBasis) -> Result<DisplayBasis<Scalar>, AlgebraError> {
        let n = self.n;
        let gens = self.alg.generators();
        let mut per_degree = Vec::new();
        for k in 0..=2 * n {
            let items: Vec<(String, GradedElement<Scalar>)> = match basis {
                UnBasis::Monomial => self
                    .alg
                    .basis(k)
                    .iter()
                    .map(|m| (gens.latex_monomial(m), GradedElement::monomial(m.clone(), Scalar::one())))
                    .collect(),
                UnBasis::Tasaki if k <= n => (0..=k / 2)
                    .map(|q| Ok((format!("\\tau_{{{k},{q}}}"), self.tau(k, q)?)))
                    .collect::<Result<_, AlgebraError>>()?,
                UnBasis::Tasaki => {
                    let j = 2 * n - k;
                    (0..=j / 2)
                        .map(|q| Ok((format!("\\widehat{{\\tau_{{{j},{q}}}}}"), self.tau_hat(j, q)?)))
                        .collect::<Result<_, AlgebraError>>()?
                }
                UnBasis::Hermitian => (k.saturating_sub(n)..=k / 2)
                    .map(|q| Ok((format!("\\mu_{{{k},{q}}}"), self.hermitian_mu(k, q)?)))
                    .collect::<Result<_, AlgebraError>>()?,
            };
            per_degree.push(items);
        }
        DisplayBasis::new(&self.alg, basis.tag(), per_degree)
    }

    /// Kinematic table of every basis element of the chosen basis.
    pub fn kinematic_document(&self, basis: UnBasis) -> Result<FormulaTableDocument, AlgebraError> {
        let db = self.display_basis(basis)?;
        let k_chi = self.kinematic_chi()?;
        let mut terms = Vec::new();
        for (d, deg) in db.degrees.iter().enumerate() {
            for (i, phi) in deg.elements.iter().enumerate() {
                let t = k_chi.mul_left(&self.alg, phi)?;
                for e in tensor_in_bases(&self.alg, &t, &db, &db) {
                    terms.push(TableTerm {
                        coefficient: e.coeff,
                        input_degree: d as u32,
                        input_index: i,
                        input_label: deg.labels[i].clone(),
                        left_degree: e.left_degree,
                        left_index: e.left_index,
                        left_label: db.label(e.left_degree, e.left_index).to_string(),
                        right_degree: e.right_degree,
                        right_index: e.right_index,
                        right_label: db.label(e.right_degree, e.right_index).to_string(),
                        lambda_power: 0,
                    });
                }
            }
        }
        Ok(FormulaTableDocument {
            basis: basis.tag().into(),
            dimension: self.n,
            group: "U".into(),
            normalization: Normalization::Standard.tag().into(),
            operator: "kinematic".into(),
            terms,
        })
    }

    /// `T^n_k`, `k ≤ n`: the coefficients of `τ_{k,p} ⊗ τ̂_{k,q}` in `k(χ)`.
    pub fn tasaki_matrices(&self) -> Result<Vec<TasakiMatrix>, AlgebraError> {
        let db = self.display_basis(UnBasis::Tasaki)?;
        let entries = tensor_in_bases(&self.alg, self.kinematic_chi()?, &db, &db);
        let mut out = Vec::new();
        for k in 0..=self.n {
            let size = k as usize / 2 + 1;
            let mut m = Matrix::zeros(size, size);
            for e in entries.iter().filter(|e| e.left_degree == k && e.right_degree == 2 * self.n - k) {
                m.set(e.left_index, e.right_index, e.coeff.clone());
            }
            out.push(TasakiMatrix { n: self.n, k, matrix: m });
        }
        Ok(out)
    }

    /// `T^n_k` from direct inversion of the pairing of `τ_{k,·}` with `τ̂_{k,·}`.
    pub fn tasaki_matrix_direct(&self, k: u32) -> Result<TasakiMatrix, AlgebraError> {
        let (left, right) = self.tasaki_pair(k)?;
        Ok(TasakiMatrix {
            n: self.n,
            k,
            matrix: inverse_transpose_pairing(&self.alg, &self.ev, &left, &right)?,
        })
    }

    /// `ev(τ_{k,p} τ̂_{k,q})`.
    pub fn tasaki_pairing(&self, k: u32) -> Result<Matrix<Scalar>, AlgebraError> {
        let (left, right) = self.tasaki_pair(k)?;
        pairing_matrix(&self.alg, &self.ev, &left, &right)
    }

    fn tasaki_pair(&self, k: u32) -> Result<(Vec<GradedElement<Scalar>>, Vec<GradedElement<Scalar>>), AlgebraError> {
        let left = (0..=k / 2).map(|q| self.tau(k, q)).collect::<Result<Vec<_>, _>>()?;
        let right = (0..=k / 2).map(|q| self.tau_hat(k, q)).collect::<Result<Vec<_>, _>>()?;
        Ok((left, right))
    }

    /// The SO(2n) intrinsic volume `μ_d = t^d / (d! ω_d / π^d)`.
    pub fn intrinsic_volume(&self, d: u32) -> GradedElement<Scalar> {
        GradedElement::monomial(st(0, d), mu_to_t_factor(d).inverse().expect("single term"))
    }

    fn klain_tensor(&self, t: &Tensor<Scalar>, k: u32, l: u32) -> FirstOrderFormula {
        let (kk, kl) = (&self.klain[k as usize], &self.klain[l as usize]);
        let mut m = Matrix::zeros(kk.vars as usize + 1, kl.vars as usize + 1);
        for (a, b, c) in t.bidegree(&self.alg, k, l).terms() {
            let ia = self.alg.basis(k).iter().position(|x| x == a).expect("basis leg");
            let ib = self.alg.basis(l).iter().position(|x| x == b).expect("basis leg");
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    let v = c * &(kk.to_klain.get(i, ia) * kl.to_klain.get(j, ib));
                    let cur = m.get(i, j) + &v;
                    m.set(i, j, cur);
                }
            }
        }
        FirstOrderFormula {
            n: self.n,
            left_degree: k,
            right_degree: l,
            left_complement: k > self.n,
            right_complement: l > self.n,
            coeffs: m,
        }
    }

    /// Bidegree `(k, l)` part of `k(μ_d)`, `d = k + l - 2n`, in Klain coordinates.
    pub fn first_order_formula(&self, k: u32, l: u32) -> Result<FirstOrderFormula, AlgebraError> {
        self.check_degree(k)?;
        self.check_degree(l)?;
        if k + l < 2 * self.n {
            return Err(AlgebraError::InvalidDegree {
                degree: k + l,
                allowed: format!(">= {}", 2 * self.n),
            });
        }
        let t = self.kinematic(&self.intrinsic_volume(k + l - 2 * self.n))?;
        Ok(self.klain_tensor(&t, k, l))
    }

    /// Bidegree `(k, l)` part of `a(μ_{k+l})`, in Klain coordinates.
    pub fn additive_first_order(&self, k: u32, l: u32) -> Result<FirstOrderFormula, AlgebraError> {
        self.check_degree(k + l)?;
        let t = self.additive(&self.intrinsic_volume(k + l))?;
        Ok(self.klain_tensor(&t, k, l))
    }

    /// `n! / π^n`: converts the Haar measure normalized by `vol ≃ 1` on `C^n`
    /// into the probability measure on the isometry group of `CP^n`.
    pub fn projective_factor(&self) -> Scalar {
        Scalar::term(big(factorial(self.n)), -(self.n as i32))
    }
}

/// `Val^{U(n)}` as a quotient algebra over `Scalar`.
pub fn un_algebra(n: u32, presentation: Presentation) -> Result<QuotientAlgebra<Scalar>, AlgebraError> {
    if n == 0 {
        return Err(AlgebraError::InvalidDimension(n));
    }
    let gens = st_generators();
    match presentation {
        Presentation::Relations => QuotientAlgebra::new(
            gens,
            &[
                IdealGenerator::homogeneous(fk(n + 1)),
                IdealGenerator::homogeneous(fk(n + 2)),
            ],
            2 * n,
            Truncation::Nilpotent,
        ),
        Presentation::EvaluationKernel => {
            let mut comps = Vec::new();
            for d in 0..=2 * n {
                let left = gens.monomials(d);
                let right = gens.monomials(2 * n - d);
                let p = Matrix::from_fn(left.len(), right.len(), |i, j| {
                    cpn_top_value(n, &left[i].mul(&right[j]))
                });
                // x ∈ ideal iff Σ x_i p_ij = 0 for all j
                let ker = kernel(&p.transpose());
                comps.push(
                    ker.into_iter()
                        .map(|v| GradedElement::from_terms(left.iter().cloned().zip(v)))
                        .collect(),
                );
            }
            QuotientAlgebra::from_degree_components(gens, comps, 2 * n, Truncation::Nilpotent)
        }
    }
}

/// `σ(x) = (1-x^{n+1})(1-x^{n+2}) / ((1-x)(1-x^2))` up to degree `2n`.
pub fn hilbert_series_expected(n: u32) -> Vec<usize> {
    // dim_k = min(⌊k/2⌋, ⌊(2n-k)/2⌋) + 1
    (0..=2 * n).map(|k| (k / 2).min((2 * n - k) / 2) as usize + 1).collect()
}

fn klain_of_free_monomial(k: u32, shift: u32, vars: u32, m: &Monomial) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); vars as usize + 1];
    let x = GradedElement::<Scalar>::monomial(m.clone(), Scalar::one());
    for ((_a, q), c) in st_to_tu(&x) {
        // t^{k-2q} u^q = τ_{k,q} / tasaki_factor, Klain(τ_{k,q}) = σ_q(1^shift, z)
        let f = c * tasaki_factor(k, q).inverse().expect("single term");
        for i in 0..=vars.min(q) {
            let b = big(binomial(shift as i64, (q - i) as i64));
            out[i as usize] += &f.scale(&b);
        }
    }
    out
}

/// ι on polynomials: swaps `t^2` and `u` in each `t^{2a} u^b`.
pub fn iota_polynomial<C: Coeff>(x: &GradedElement<C>) -> GradedElement<C> {
    let tu = st_to_tu(x);
    let swapped: BTreeMap<(u32, u32), C> = tu
        .into_iter()
        .map(|((a, b), c)| {
            assert!(a % 2 == 0, "ι needs even powers of t");
            ((2 * b, a / 2), c)
        })
        .collect();
    tu_to_st(&swapped)
}

/// `c` with `μ_{k,0} = c f_k` as polynomials (degree `k ≤ n`).
pub fn hermitian_f_constant(k: u32) -> Result<Scalar, AlgebraError> {
    let mut mu = GradedElement::<Scalar>::zero();
    for l in 0..=k / 2 {
        let sign = if l % 2 == 0 { 1 } else { -1 };
        mu = mu.add(&tau_poly(k, l).scale(&int(sign)));
    }
    let f = fk(k).lift::<Scalar>();
    let probe = st(0, k);
    let c = mu.coeff(&probe) * f.coeff(&probe).inverse()?;
    if mu != f.mul_coeff(&c) {
        return Err(AlgebraError::Unsupported(format!("μ_{{{k},0}} is not a multiple of f_{k}")));
    }
    Ok(c)
}

/// Checks the restriction `Val^{U(n+1)} → Val^{U(n)}`, `s ↦ s`, `t ↦ t`:
/// well defined, surjective, with kernel generated by `f_{n+1}`.
pub fn restriction_check(n: u32) -> Result<bool, AlgebraError> {
    let big_alg = un_algebra(n + 1, Presentation::Relations)?;
    let small = un_algebra(n, Presentation::Relations)?;
    let gens = st_generators();
    for f in [fk(n + 2), fk(n + 3)] {
        if !small.normal_form(&f.lift())?.is_zero() {
            return Ok(false);
        }
    }
    let f = fk(n + 1).lift::<Scalar>();
    for d in 0..=2 * n {
        let src = big_alg.basis(d);
        let dst = small.basis(d);
        let img = Matrix::from_fn(dst.len(), src.len(), |i, j| {
            let x = small
                .normal_form(&GradedElement::monomial(src[j].clone(), Scalar::one()))
                .expect("in range");
            x.coeff(&dst[i]).as_rational().expect("rational")
        });
        let rank = crate::linalg::rref(img.to_rows(), src.len()).rank();
        if rank != dst.len() {
            return Ok(false);
        }
        if d <= n && src != dst {
            return Ok(false);
        }
        // kernel of the restriction = multiples of f_{n+1} in the larger algebra
        let multiples: Vec<Vec<Rational>> = if d > n {
            gens.monomials(d - n - 1)
                .iter()
                .map(|m| {
                    let x = big_alg.normal_form(&f.mul_monomial(m)).expect("in range");
                    src.iter().map(|b| x.coeff(b).as_rational().expect("rational")).collect()
                })
                .collect()
        } else {
            vec![]
        };
        let span = crate::linalg::rref(multiples.clone(), src.len()).rank();
        if span != src.len() - dst.len() {
            return Ok(false);
        }
        for v in &multiples {
            if !img.mul_vec(v).iter().all(Coeff::is_zero) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn low_fk() {
        assert_eq!(fk(1), GradedElement::monomial(st(0, 1), int(1)));
        let f2 = GradedElement::from_terms([(st(1, 0), int(1)), (st(0, 2), rat(-1, 2))]);
        assert_eq!(fk(2), f2);
        let f3 = GradedElement::from_terms([(st(0, 3), rat(1, 3)), (st(1, 1), int(-1))]);
        assert_eq!(fk(3), f3);
        for k in 1..12 {
            assert!(fk_recursion_defect(k).is_zero());
        }
    }

    #[test]
    fn disk_functional_values() {
        let h = HermitianAlgebra::new(2, Presentation::Relations).unwrap();
        let ev = |m: Monomial| {
            h.volume_functional()
                .eval(h.algebra(), &GradedElement::monomial(m, Scalar::one()))
                .unwrap()
        };
        assert_eq!(ev(st(0, 4)), Scalar::term(int(12), -2));
        assert_eq!(ev(st(1, 2)), Scalar::term(int(4), -2));
        assert_eq!(ev(st(2, 0)), Scalar::term(int(2), -2));
    }

    #[test]
    fn tasaki_degree_two() {
        let h = HermitianAlgebra::new(2, Presentation::Relations).unwrap();
        let half_pi = Scalar::term(rat(1, 2), 1);
        assert_eq!(
            h.tau(2, 0).unwrap(),
            GradedElement::monomial(st(0, 2), half_pi.clone())
        );
        let u = tu_monomial(0, 1).lift::<Scalar>().mul_coeff(&half_pi);
        assert_eq!(h.tau(2, 1).unwrap(), h.nf(&u).unwrap());
        assert_eq!(h.hermitian_mu(2, 1).unwrap(), h.tau(2, 1).unwrap());
        assert_eq!(
            h.hermitian_mu(2, 0).unwrap(),
            h.tau(2, 0).unwrap().sub(&h.tau(2, 1).unwrap())
        );
    }

    #[test]
    fn tasaki_matrix_hand_inverse() {
        // pairing [[3,1],[1,3]] π^-2 ... inverse (1/8)[[3,-1],[-1,3]] π^2 up to the pairing scale
        let h = HermitianAlgebra::new(2, Presentation::Relations).unwrap();
        let m = h.tasaki_pairing(2).unwrap();
        assert!(m.is_symmetric());
        let unit = m.get(0, 1).clone();
        assert_eq!(m.get(0, 0), &unit.scale(&int(3)));
        assert_eq!(m.get(1, 1), &unit.scale(&int(3)));
        let t = h.tasaki_matrix_direct(2).unwrap();
        let inv_unit = unit.inverse().unwrap();
        assert_eq!(t.matrix.get(0, 0), &inv_unit.scale(&rat(3, 8)));
        assert_eq!(t.matrix.get(0, 1), &inv_unit.scale(&rat(-1, 8)));
        assert!(t.is_palindromic());
    }

    #[test]
    fn pfaff_saalschutz_small() {
        assert_eq!(pfaff_saalschutz_residual(2, 1), int(0));
        assert_eq!(pfaff_saalschutz_residual(5, 1), int(0));
    }

    #[test]
    fn mu_zero_constant_low_degrees() {
        assert_eq!(hermitian_f_constant(1).unwrap(), Scalar::term(rat(1, 2), 1));
        assert_eq!(hermitian_f_constant(2).unwrap(), Scalar::term(int(-2), 1));
    }
}
