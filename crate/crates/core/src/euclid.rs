//! Rotation-invariant valuations on `R^n`: the algebra `Q[t]/(t^{n+1})`,
//! its kinematic and additive coproducts, and classical constants.

use crate::algebra::{
    invert_pairing, tensor_in_bases, DisplayBasis, GeneratorSet, GradedElement, IdealGenerator,
    LinearFunctional, Monomial, QuotientAlgebra, TableEntry, Tensor, Truncation,
};
use crate::error::AlgebraError;
use crate::scalar::{alpha, big, binomial, factorial, int, omega, Rational, Scalar};
use crate::table::{FormulaTableDocument, Normalization, TableTerm};

/// Display bases of `Val^{SO(n)}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SoBasis {
    /// powers `t^i`
    T,
    /// intrinsic volumes `μ_i`
    Mu,
    /// `ψ_i = μ_i / μ_i(B)`, normalized on the unit ball
    Psi,
    /// `θ'_i = ψ_i / i!`
    NijenhuisPrime,
    /// `θ_i = c^{i/n} θ'_i`, with `c` read off the kinematic table
    Nijenhuis,
}

impl SoBasis {
    pub fn tag(self) -> &'static str {
        match self {
            SoBasis::T => "t",
            SoBasis::Mu => "mu",
            SoBasis::Psi => "psi",
            SoBasis::NijenhuisPrime => "nijenhuis-prime",
            SoBasis::Nijenhuis => "nijenhuis",
        }
    }

    fn label(self, i: u32) -> String {
        match self {
            SoBasis::T => format!("t^{{{i}}}"),
            SoBasis::Mu => format!("\\mu_{{{i}}}"),
            SoBasis::Psi => format!("\\psi_{{{i}}}"),
            SoBasis::NijenhuisPrime => format!("\\theta'_{{{i}}}"),
            SoBasis::Nijenhuis => format!("\\theta_{{{i}}}"),
        }
    }
}

/// `t^i = g_i μ_i` with `g_i = i! ω_i / π^i`.
pub fn mu_to_t_factor(i: u32) -> Scalar {
    omega(i).scale(&big(factorial(i))) * Scalar::pi_pow(-(i as i32))
}

/// `μ_i(B^n) = C(n, i) ω_n / ω_{n-i}`.
pub fn ball_intrinsic_volume(n: u32, i: u32) -> Scalar {
    if i > n {
        return Scalar::zero();
    }
    let q = omega(n - i).inverse().expect("ω is a single term");
    (omega(n) * q).scale(&big(binomial(n as i64, i as i64)))
}

/// `α_n / 2^{n+1}`, the factor in front of `Σ t^a ⊗ t^b` for the standard
/// normalization of the kinematic measure.
pub fn kinematic_constant(n: u32) -> Scalar {
    alpha(n).scale(&(int(1) / big(num_bigint::BigInt::from(1u8) << (n + 1))))
}

/// Coefficient `c^k_{ij}` of `μ_i ⊗ μ_j` in `k(μ_k)`, `i + j = n + k`.
pub fn flag_coefficient(n: u32, k: u32, i: u32, j: u32) -> Scalar {
    if i + j != n + k || i > n || j > n || k > n {
        return Scalar::zero();
    }
    let num = omega(i).scale(&big(factorial(i))) * omega(j).scale(&big(factorial(j)));
    let den = omega(k).scale(&big(factorial(k))) * omega(n).scale(&big(factorial(n)));
    num * den.inverse().expect("single term")
}

/// Coefficient `d^k_{ij}` of `μ_i ⊗ μ_j` in `a(μ_k)`, `i + j = k`.
pub fn additive_coefficient(n: u32, k: u32, i: u32, j: u32) -> Scalar {
    if i + j != k || k > n {
        return Scalar::zero();
    }
    let b = ball_intrinsic_volume(n, k)
        * (ball_intrinsic_volume(n, i) * ball_intrinsic_volume(n, j))
            .inverse()
            .expect("single term");
    b.scale(&big(binomial(k as i64, i as i64)))
}

/// Crofton constant `C(n,k) ω_n / (ω_{n-k} ω_k)`: `μ_k = const · ∫ χ(K ∩ E) dE`
/// over affine `(n-k)`-planes with the motion-invariant measure normalized
/// by Lebesgue measure on the orthogonal complement.
pub fn crofton_constant(n: u32, k: u32) -> Scalar {
    ball_intrinsic_volume(n, k) * omega(k).inverse().expect("single term")
}

/// `n ω_n / (2 ω_{n-1})`: mean projection volume times this equals `μ_{n-1}`.
pub fn cauchy_constant(n: u32) -> Scalar {
    (omega(n) * omega(n - 1).inverse().expect("single term")).scale(&(int(n as i64) / int(2)))
}

/// `μ_i · μ_j = C(i+j, i) ω_{i+j} / (ω_i ω_j) · μ_{i+j}`.
pub fn mu_product_coefficient(i: u32, j: u32) -> Scalar {
    (omega(i + j) * (omega(i) * omega(j)).inverse().expect("single term"))
        .scale(&big(binomial((i + j) as i64, i as i64)))
}

/// Convex bodies with closed-form intrinsic volumes.
#[derive(Clone, Debug, PartialEq)]
pub enum TemplateBody {
    Point,
    Segment(Rational),
    Ball(Rational),
    /// Side lengths; fewer than `n` sides means a lower-dimensional box.
    Box(Vec<Rational>),
}

impl TemplateBody {
    /// `μ_0, …, μ_n` of the body in `R^n`.
    pub fn intrinsic_volumes(&self, n: u32) -> Vec<Scalar> {
        match self {
            TemplateBody::Point => Self::elementary(n, &[]),
            TemplateBody::Segment(l) => Self::elementary(n, std::slice::from_ref(l)),
            TemplateBody::Box(sides) => Self::elementary(n, sides),
            TemplateBody::Ball(r) => (0..=n)
                .map(|i| ball_intrinsic_volume(n, i).scale(&pow(r, i)))
                .collect(),
        }
    }

    fn elementary(n: u32, sides: &[Rational]) -> Vec<Scalar> {
        // σ_i(sides) by the usual recurrence
        let mut e = vec![int(0); n as usize + 1];
        e[0] = int(1);
        for a in sides {
            for i in (1..=n as usize).rev() {
                let prev = e[i - 1].clone();
                e[i] += prev * a;
            }
        }
        e.into_iter().map(Scalar::from_rational).collect()
    }
}

fn pow(r: &Rational, e: u32) -> Rational {
    (0..e).fold(int(1), |acc, _| acc * r)
}

/// Coefficients of `vol(K + r B) = Σ_m c_m r^m`, from intrinsic volumes.
pub fn steiner_polynomial(n: u32, body: &TemplateBody) -> Vec<Scalar> {
    let mu = body.intrinsic_volumes(n);
    (0..=n).map(|m| omega(m) * mu[(n - m) as usize].clone()).collect()
}

/// Tube volume coefficients computed directly from the geometry: binomial
/// expansion for balls, decomposition into outer regions for boxes.
pub fn tube_volume_closed_form(n: u32, body: &TemplateBody) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); n as usize + 1];
    match body {
        TemplateBody::Ball(r) => {
            for m in 0..=n {
                let c = big(binomial(n as i64, m as i64)) * pow(r, n - m);
                out[m as usize] = omega(n).scale(&c);
            }
        }
        TemplateBody::Point | TemplateBody::Segment(_) | TemplateBody::Box(_) => {
            let sides: Vec<Rational> = match body {
                TemplateBody::Point => vec![],
                TemplateBody::Segment(l) => vec![l.clone()],
                TemplateBody::Box(s) => s.clone(),
                TemplateBody::Ball(_) => unreachable!(),
            };
            let mut full = sides.clone();
            full.resize(n as usize, int(0));
            // outside coordinates S contribute Π_{i∉S} a_i · ω_{|S|} r^{|S|}
            for mask in 0u32..(1 << n) {
                let s = mask.count_ones();
                let prod = (0..n as usize)
                    .filter(|i| mask & (1 << i) == 0)
                    .fold(int(1), |acc, i| acc * &full[i]);
                out[s as usize] += &omega(s).scale(&prod);
            }
        }
    }
    out
}

/// `∫ χ(A ∩ gB) dg` under the standard normalization.
pub fn principal_kinematic_value(n: u32, a: &TemplateBody, b: &TemplateBody) -> Scalar {
    let ma = a.intrinsic_volumes(n);
    let mb = b.intrinsic_volumes(n);
    let mut acc = Scalar::zero();
    for i in 0..=n {
        acc += &(flag_coefficient(n, 0, i, n - i) * ma[i as usize].clone() * mb[(n - i) as usize].clone());
    }
    acc
}

/// `∫ vol(A + gB) dg` over the rotation group with probability measure.
pub fn additive_volume_value(n: u32, a: &TemplateBody, b: &TemplateBody) -> Scalar {
    let ma = a.intrinsic_volumes(n);
    let mb = b.intrinsic_volumes(n);
    let mut acc = Scalar::zero();
    for i in 0..=n {
        acc += &(additive_coefficient(n, n, i, n - i) * ma[i as usize].clone() * mb[(n - i) as usize].clone());
    }
    acc
}

/// `Val^{SO(n)}` as `Q[t]/(t^{n+1})` with the volume functional.
#[derive(Clone, Debug)]
pub struct SoAlgebra {
    n: u32,
    alg: QuotientAlgebra<Scalar>,
    ev: LinearFunctional<Scalar>,
}

impl SoAlgebra {
    pub fn new(n: u32) -> Result<Self, AlgebraError> {
        if n == 0 {
            return Err(AlgebraError::InvalidDimension(n));
        }
        let gens = GeneratorSet::new(&[("t", 1)]);
        let rel = GradedElement::monomial(Monomial(vec![n + 1]), int(1));
        let alg = QuotientAlgebra::new(gens, &[IdealGenerator::homogeneous(rel)], n, Truncation::Nilpotent)?;
        // vol = μ_n = t^n / g_n
        let ev = LinearFunctional::from_basis_values(&alg, n, vec![mu_to_t_factor(n)])?;
        Ok(SoAlgebra { n, alg, ev })
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

    pub fn t_pow(&self, i: u32) -> GradedElement<Scalar> {
        if i > self.n {
            return GradedElement::zero();
        }
        GradedElement::monomial(Monomial(vec![i]), Scalar::one())
    }

    pub fn mu(&self, i: u32) -> GradedElement<Scalar> {
        self.t_pow(i).mul_coeff(&mu_to_t_factor(i).inverse().expect("single term"))
    }

    pub fn psi(&self, i: u32) -> GradedElement<Scalar> {
        self.mu(i)
            .mul_coeff(&ball_intrinsic_volume(self.n, i).inverse().expect("single term"))
    }

    pub fn theta_prime(&self, i: u32) -> GradedElement<Scalar> {
        self.psi(i).scale(&(int(1) / big(factorial(i))))
    }

    pub fn element(&self, basis: SoBasis, i: u32) -> Option<GradedElement<Scalar>> {
        match basis {
            SoBasis::T => Some(self.t_pow(i)),
            SoBasis::Mu => Some(self.mu(i)),
            SoBasis::Psi => Some(self.psi(i)),
            SoBasis::NijenhuisPrime => Some(self.theta_prime(i)),
            SoBasis::Nijenhuis => None,
        }
    }

    pub fn display_basis(&self, basis: SoBasis) -> Result<DisplayBasis<Scalar>, AlgebraError> {
        let elem_basis = if basis == SoBasis::Nijenhuis { SoBasis::NijenhuisPrime } else { basis };
        let per_degree = (0..=self.n)
            .map(|i| vec![(basis.label(i), self.element(elem_basis, i).expect("representable"))])
            .collect();
        DisplayBasis::new(&self.alg, basis.tag(), per_degree)
    }

    /// `k(χ)` by inverting the volume pairing.
    pub fn kinematic_chi(&self) -> Result<Tensor<Scalar>, AlgebraError> {
        invert_pairing(&self.alg, &self.ev)
    }

    /// `k(t^c) = (α_n / 2^{n+1}) Σ_{a+b=n+c} t^a ⊗ t^b`.
    pub fn kinematic_closed_form(&self, c: u32) -> Tensor<Scalar> {
        let k = kinematic_constant(self.n);
        let mut t = Tensor::zero();
        for a in c..=self.n {
            let b = self.n + c - a;
            t.add_term(Monomial(vec![a]), Monomial(vec![b]), k.clone());
        }
        t
    }

    /// `k(φ) = (φ ⊗ χ) · k(χ)`.
    pub fn kinematic(&self, phi: &GradedElement<Scalar>) -> Result<Tensor<Scalar>, AlgebraError> {
        self.kinematic_chi()?.mul_left(&self.alg, phi)
    }

    /// Fourier transform `μ_i ↦ μ_{n-i}`.
    pub fn fourier(&self, phi: &GradedElement<Scalar>) -> GradedElement<Scalar> {
        let mut out = GradedElement::zero();
        for (m, c) in phi.terms() {
            let i = m.0[0];
            let f = mu_to_t_factor(i) * mu_to_t_factor(self.n - i).inverse().expect("single term");
            out.add_term(Monomial(vec![self.n - i]), c * &f);
        }
        out
    }

    /// `a = (^ ⊗ ^) ∘ k ∘ ^`.
    pub fn additive_via_fourier(&self, phi: &GradedElement<Scalar>) -> Result<Tensor<Scalar>, AlgebraError> {
        let k = self.kinematic(&self.fourier(phi))?;
        k.map_legs(
            |a| Ok(self.fourier(&GradedElement::monomial(a.clone(), Scalar::one()))),
            |b| Ok(self.fourier(&GradedElement::monomial(b.clone(), Scalar::one()))),
        )
    }

    /// `a(ψ_k) = Σ_{i+j=k} C(k, i) ψ_i ⊗ ψ_j`.
    pub fn additive_psi(&self, k: u32) -> Tensor<Scalar> {
        let mut t = Tensor::zero();
        for i in 0..=k {
            let c = Scalar::from_rational(big(binomial(k as i64, i as i64)));
            t = t.add(&Tensor::outer(&self.psi(i), &self.psi(k - i), &c));
        }
        t
    }

    /// Additive coproduct extended linearly from the `ψ` formula.
    pub fn additive(&self, phi: &GradedElement<Scalar>) -> Result<Tensor<Scalar>, AlgebraError> {
        let basis = self.display_basis(SoBasis::Psi)?;
        let nf = self.alg.normal_form(phi)?;
        let mut t = Tensor::zero();
        for k in 0..=self.n {
            let c = &basis.coords(&self.alg, &nf, k)[0];
            if !c.is_zero() {
                t = t.add(&self.additive_psi(k).mul_coeff(c));
            }
        }
        Ok(t)
    }

    /// Kinematic coproduct table for every basis element, in the given basis.
    pub fn kinematic_document(
        &self,
        basis: SoBasis,
        normalization: Normalization,
    ) -> Result<FormulaTableDocument, AlgebraError> {
        let db = self.display_basis(basis)?;
        let scale = match normalization {
            Normalization::Standard => Scalar::one(),
            Normalization::Unit => kinematic_constant(self.n).inverse()?,
            Normalization::Probability => {
                return Err(AlgebraError::Unsupported(
                    "the kinematic measure has infinite mass".into(),
                ))
            }
        };
        let nij = if basis == SoBasis::Nijenhuis {
            self.nijenhuis_constant()?.inverse()?
        } else {
            Scalar::one()
        };
        let k_chi = self.kinematic_chi()?;
        let mut terms = Vec::new();
        for c in 0..=self.n {
            let phi = &db.degrees[c as usize].elements[0];
            let t = k_chi.mul_left(&self.alg, phi)?.mul_coeff(&(&scale * &nij));
            for e in tensor_in_bases(&self.alg, &t, &db, &db) {
                terms.push(self.term(&db, c, &e));
            }
        }
        Ok(self.document("kinematic", basis, normalization, terms))
    }

    /// Additive coproduct table (rotation group with probability measure).
    pub fn additive_document(&self, basis: SoBasis) -> Result<FormulaTableDocument, AlgebraError> {
        let db = self.display_basis(basis)?;
        let mut terms = Vec::new();
        for c in 0..=self.n {
            let phi = &db.degrees[c as usize].elements[0];
            let t = self.additive(phi)?;
            for e in tensor_in_bases(&self.alg, &t, &db, &db) {
                terms.push(self.term(&db, c, &e));
            }
        }
        Ok(self.document("additive", basis, Normalization::Probability, terms))
    }

    fn term(&self, db: &DisplayBasis<Scalar>, input: u32, e: &TableEntry<Scalar>) -> TableTerm {
        TableTerm {
            coefficient: e.coeff.clone(),
            input_degree: input,
            input_index: 0,
            input_label: db.label(input, 0).to_string(),
            left_degree: e.left_degree,
            left_index: e.left_index,
            left_label: db.label(e.left_degree, e.left_index).to_string(),
            right_degree: e.right_degree,
            right_index: e.right_index,
            right_label: db.label(e.right_degree, e.right_index).to_string(),
            lambda_power: 0,
        }
    }

    fn document(
        &self,
        operator: &str,
        basis: SoBasis,
        normalization: Normalization,
        terms: Vec<TableTerm>,
    ) -> FormulaTableDocument {
        FormulaTableDocument {
            basis: basis.tag().into(),
            dimension: self.n,
            group: "SO".into(),
            normalization: normalization.tag().into(),
            operator: operator.into(),
            terms,
        }
    }

    /// The constant `c` in front of every coefficient of `k(χ)` written in
    /// the `θ'` basis (read off the `θ'_0 ⊗ θ'_n` entry).
    pub fn nijenhuis_constant(&self) -> Result<Scalar, AlgebraError> {
        let db = self.display_basis(SoBasis::NijenhuisPrime)?;
        let t = self.kinematic_chi()?.mul_left(&self.alg, &db.degrees[0].elements[0])?;
        let entries = tensor_in_bases(&self.alg, &t, &db, &db);
        entries
            .iter()
            .find(|e| e.left_degree == 0 && e.right_degree == self.n)
            .map(|e| e.coeff.clone())
            .ok_or_else(|| AlgebraError::Unsupported("k(χ) has no θ'_0 ⊗ θ'_n term".into()))
    }

    /// Checks whether the kinematic and additive coproducts can both be
    /// written with all structure constants equal to 1.
    pub fn nijenhuis_report(&self) -> Result<NijenhuisReport, AlgebraError> {
        let n = self.n;
        let all_one = |doc: &FormulaTableDocument| doc.terms.iter().all(|t| t.coefficient.is_one());
        let full_support = |doc: &FormulaTableDocument, kin: bool| {
            let expected: u32 = (0..=n).map(|c| if kin { n - c + 1 } else { c + 1 }).sum();
            let expected = expected as usize;
            doc.terms.len() == expected
        };
        let kin_t = self.kinematic_document(SoBasis::T, Normalization::Unit)?;
        let add_t = self.additive_document(SoBasis::T)?;
        let kin_theta = self.kinematic_document(SoBasis::Nijenhuis, Normalization::Standard)?;
        let add_theta = self.additive_document(SoBasis::Nijenhuis)?;
        let kin_prime = self.kinematic_document(SoBasis::NijenhuisPrime, Normalization::Standard)?;
        let mut distinct: Vec<Scalar> = Vec::new();
        for t in &kin_prime.terms {
            if !distinct.contains(&t.coefficient) {
                distinct.push(t.coefficient.clone());
            }
        }
        Ok(NijenhuisReport {
            n,
            c: self.nijenhuis_constant()?,
            kinematic_unit_in_t: all_one(&kin_t) && full_support(&kin_t, true),
            additive_unit_in_t: all_one(&add_t) && full_support(&add_t, false),
            kinematic_unit_in_theta: all_one(&kin_theta) && full_support(&kin_theta, true),
            additive_unit_in_theta: all_one(&add_theta) && full_support(&add_theta, false),
            kinematic_theta_prime_values: distinct,
        })
    }
}

/// Outcome of the search for a basis in which both coproducts are unit.
#[derive(Clone, Debug, PartialEq)]
pub struct NijenhuisReport {
    pub n: u32,
    /// the constant of `k(χ)` in the `θ'` basis
    pub c: Scalar,
    pub kinematic_unit_in_t: bool,
    pub additive_unit_in_t: bool,
    pub kinematic_unit_in_theta: bool,
    pub additive_unit_in_theta: bool,
    /// distinct coefficients of the kinematic table in the `θ'` basis
    pub kinematic_theta_prime_values: Vec<Scalar>,
}

impl NijenhuisReport {
    pub fn both_unit(&self) -> bool {
        (self.kinematic_unit_in_t && self.additive_unit_in_t)
            || (self.kinematic_unit_in_theta && self.additive_unit_in_theta)
    }
}
