use std::collections::BTreeMap;

use crate::algebra::element::{GradedElement, Monomial};
use crate::algebra::quotient::{pairing_matrix, LinearFunctional, QuotientAlgebra};
use crate::error::AlgebraError;
use crate::linalg::{invert_exact, Matrix};
use crate::scalar::{Coeff, ExactDomain};

/// Element of `A ⊗ A`, stored on pairs of normal-form basis monomials.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor<C> {
    terms: BTreeMap<(Monomial, Monomial), C>,
}

impl<C: Coeff> Default for Tensor<C> {
    fn default() -> Self {
        Tensor {
            terms: BTreeMap::new(),
        }
    }
}

impl<C: Coeff> Tensor<C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, a: Monomial, b: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        let key = (a, b);
        match self.terms.get_mut(&key) {
            Some(v) => {
                *v = v.add_ref(&c);
                if v.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    /// `Σ c_a c_b a ⊗ b` for two elements.
    pub fn outer(x: &GradedElement<C>, y: &GradedElement<C>, scale: &C) -> Self {
        let mut t = Self::zero();
        for (a, ca) in x.terms() {
            for (b, cb) in y.terms() {
                t.add_term(a.clone(), b.clone(), ca.mul_ref(cb).mul_ref(scale));
            }
        }
        t
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Monomial, &C)> {
        self.terms.iter().map(|((a, b), c)| (a, b, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, a: &Monomial, b: &Monomial) -> C {
        self.terms
            .get(&(a.clone(), b.clone()))
            .cloned()
            .unwrap_or_else(C::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((a, b), c) in &other.terms {
            out.add_term(a.clone(), b.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((a, b), c) in &other.terms {
            out.add_term(a.clone(), b.clone(), c.neg_ref());
        }
        out
    }

    pub fn mul_coeff(&self, k: &C) -> Self {
        let mut out = Self::zero();
        for ((a, b), c) in &self.terms {
            out.add_term(a.clone(), b.clone(), c.mul_ref(k));
        }
        out
    }

    pub fn swap(&self) -> Self {
        let mut out = Self::zero();
        for ((a, b), c) in &self.terms {
            out.add_term(b.clone(), a.clone(), c.clone());
        }
        out
    }

    /// Applies linear maps to both legs; each map is given on monomials.
    pub fn map_legs(
        &self,
        mut left: impl FnMut(&Monomial) -> Result<GradedElement<C>, AlgebraError>,
        mut right: impl FnMut(&Monomial) -> Result<GradedElement<C>, AlgebraError>,
    ) -> Result<Self, AlgebraError> {
        let mut lcache: BTreeMap<Monomial, GradedElement<C>> = BTreeMap::new();
        let mut rcache: BTreeMap<Monomial, GradedElement<C>> = BTreeMap::new();
        let mut out = Self::zero();
        for ((a, b), c) in &self.terms {
            if !lcache.contains_key(a) {
                lcache.insert(a.clone(), left(a)?);
            }
            if !rcache.contains_key(b) {
                rcache.insert(b.clone(), right(b)?);
            }
            for (x, cx) in lcache[a].terms() {
                for (y, cy) in rcache[b].terms() {
                    out.add_term(x.clone(), y.clone(), c.mul_ref(cx).mul_ref(cy));
                }
            }
        }
        Ok(out)
    }

    /// `(φ ⊗ 1) · T`
    pub fn mul_left(&self, alg: &QuotientAlgebra<C>, phi: &GradedElement<C>) -> Result<Self, AlgebraError> {
        self.map_legs(
            |a| alg.multiply(phi, &GradedElement::monomial(a.clone(), C::one())),
            |b| Ok(GradedElement::monomial(b.clone(), C::one())),
        )
    }

    /// `(1 ⊗ φ) · T`
    pub fn mul_right(&self, alg: &QuotientAlgebra<C>, phi: &GradedElement<C>) -> Result<Self, AlgebraError> {
        self.map_legs(
            |a| Ok(GradedElement::monomial(a.clone(), C::one())),
            |b| alg.multiply(phi, &GradedElement::monomial(b.clone(), C::one())),
        )
    }

    /// Terms whose legs have the given degrees.
    pub fn bidegree(&self, alg: &QuotientAlgebra<C>, dl: u32, dr: u32) -> Self {
        let g = alg.generators();
        let mut out = Self::zero();
        for ((a, b), c) in &self.terms {
            if g.degree(a) == dl && g.degree(b) == dr {
                out.add_term(a.clone(), b.clone(), c.clone());
            }
        }
        out
    }

    pub fn bidegrees(&self, alg: &QuotientAlgebra<C>) -> Vec<(u32, u32)> {
        let g = alg.generators();
        let mut v: Vec<(u32, u32)> = self.terms.keys().map(|(a, b)| (g.degree(a), g.degree(b))).collect();
        v.sort();
        v.dedup();
        v
    }

    /// Contracts the left leg with a functional: `(ev(ψ · _) ⊗ id) T`.
    pub fn contract_left(
        &self,
        alg: &QuotientAlgebra<C>,
        ev: &LinearFunctional<C>,
        psi: &GradedElement<C>,
    ) -> Result<GradedElement<C>, AlgebraError> {
        let mut out = GradedElement::zero();
        let mut cache: BTreeMap<Monomial, C> = BTreeMap::new();
        for ((a, b), c) in &self.terms {
            if !cache.contains_key(a) {
                let v = ev.eval(alg, &alg.multiply(psi, &GradedElement::monomial(a.clone(), C::one()))?)?;
                cache.insert(a.clone(), v);
            }
            out.add_term(b.clone(), c.mul_ref(&cache[a]));
        }
        Ok(out)
    }
}

/// Triple tensor used to compare `(k ⊗ id) ∘ k` with `(id ⊗ k) ∘ k`.
pub type Tensor3<C> = BTreeMap<(Monomial, Monomial, Monomial), C>;

fn add3<C: Coeff>(t: &mut Tensor3<C>, key: (Monomial, Monomial, Monomial), c: C) {
    if c.is_zero() {
        return;
    }
    match t.get_mut(&key) {
        Some(v) => {
            *v = v.add_ref(&c);
            if v.is_zero() {
                t.remove(&key);
            }
        }
        None => {
            t.insert(key, c);
        }
    }
}

/// Returns both sides of the coassociativity identity for a coproduct
/// given on elements.
pub fn coassociativity_sides<C: Coeff>(
    t: &Tensor<C>,
    mut coproduct: impl FnMut(&Monomial) -> Result<Tensor<C>, AlgebraError>,
) -> Result<(Tensor3<C>, Tensor3<C>), AlgebraError> {
    let mut cache: BTreeMap<Monomial, Tensor<C>> = BTreeMap::new();
    let mut left = Tensor3::new();
    let mut right = Tensor3::new();
    for (a, b, c) in t.terms() {
        for m in [a, b] {
            if !cache.contains_key(m) {
                cache.insert(m.clone(), coproduct(m)?);
            }
        }
        for (x, y, c2) in cache[a].terms() {
            add3(&mut left, (x.clone(), y.clone(), b.clone()), c.mul_ref(c2));
        }
        for (x, y, c2) in cache[b].terms() {
            add3(&mut right, (a.clone(), x.clone(), y.clone()), c.mul_ref(c2));
        }
    }
    Ok((left, right))
}

/// The coproduct image of the unit obtained by inverting the pairing
/// `(ν, φ) ↦ ev(ν φ)` degree by degree:
/// `Σ_k Σ_ij C_ij ν_i ⊗ φ_j` with `C = (M^T)^{-1}`, `M_ij = ev(ν_i φ_j)`.
pub fn invert_pairing<C: ExactDomain>(
    alg: &QuotientAlgebra<C>,
    ev: &LinearFunctional<C>,
) -> Result<Tensor<C>, AlgebraError> {
    let top = ev.degree();
    let mut out = Tensor::zero();
    for k in 0..=top {
        let left: Vec<GradedElement<C>> = alg
            .basis(k)
            .iter()
            .map(|m| GradedElement::monomial(m.clone(), C::one()))
            .collect();
        let right: Vec<GradedElement<C>> = alg
            .basis(top - k)
            .iter()
            .map(|m| GradedElement::monomial(m.clone(), C::one()))
            .collect();
        let block = inverse_transpose_pairing(alg, ev, &left, &right)?;
        for (i, a) in alg.basis(k).iter().enumerate() {
            for (j, b) in alg.basis(top - k).iter().enumerate() {
                out.add_term(a.clone(), b.clone(), block.get(i, j).clone());
            }
        }
    }
    Ok(out)
}

/// `(M^T)^{-1}` for the pairing matrix of two bases.
pub fn inverse_transpose_pairing<C: ExactDomain>(
    alg: &QuotientAlgebra<C>,
    ev: &LinearFunctional<C>,
    left: &[GradedElement<C>],
    right: &[GradedElement<C>],
) -> Result<Matrix<C>, AlgebraError> {
    let m = pairing_matrix(alg, ev, left, right)?;
    Ok(invert_exact(&m.transpose())?)
}
