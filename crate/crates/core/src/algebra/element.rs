use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::scalar::{Coeff, Rational};

/// Named generators with positive integer weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    names: Vec<String>,
    weights: Vec<u32>,
}

impl GeneratorSet {
    pub fn new(gens: &[(&str, u32)]) -> Self {
        assert!(gens.iter().all(|(_, w)| *w > 0), "generator weights must be positive");
        GeneratorSet {
            names: gens.iter().map(|(n, _)| n.to_string()).collect(),
            weights: gens.iter().map(|(_, w)| *w).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn max_weight(&self) -> u32 {
        self.weights.iter().copied().max().unwrap_or(1)
    }

    pub fn degree(&self, m: &Monomial) -> u32 {
        m.0.iter().zip(&self.weights).map(|(e, w)| e * w).sum()
    }

    pub fn generator(&self, i: usize) -> Monomial {
        let mut e = vec![0; self.len()];
        e[i] = 1;
        Monomial(e)
    }

    pub fn one(&self) -> Monomial {
        Monomial(vec![0; self.len()])
    }

    /// All monomials of weighted degree `d`, in lexicographic exponent order.
    pub fn monomials(&self, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.len()];
        self.fill(0, d, &mut cur, &mut out);
        out.sort();
        out
    }

    fn fill(&self, i: usize, rest: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == self.len() {
            if rest == 0 {
                out.push(Monomial(cur.clone()));
            }
            return;
        }
        let w = self.weights[i];
        for e in 0..=rest / w {
            cur[i] = e;
            self.fill(i + 1, rest - e * w, cur, out);
        }
        cur[i] = 0;
    }

    /// Sort key: exponents listed heaviest generator first.
    ///
    /// Within one degree, monomials with a small key are kept as normal-form
    /// basis elements and monomials with a large key are eliminated first.
    pub fn heaviness_key(&self, m: &Monomial) -> Vec<u32> {
        let mut idx: Vec<usize> = (0..self.len()).collect();
        idx.sort_by(|&a, &b| self.weights[b].cmp(&self.weights[a]).then(a.cmp(&b)));
        idx.iter().map(|&i| m.0[i]).collect()
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut s = String::new();
        for (e, name) in m.0.iter().zip(&self.names) {
            match e {
                0 => {}
                1 => s.push_str(name),
                _ => {
                    let _ = write!(s, "{name}^{e}");
                }
            }
        }
        if s.is_empty() {
            "1".into()
        } else {
            s
        }
    }

    pub fn latex_monomial(&self, m: &Monomial) -> String {
        let mut s = String::new();
        for (e, name) in m.0.iter().zip(&self.names) {
            match e {
                0 => {}
                1 => s.push_str(name),
                _ => {
                    let _ = write!(s, "{name}^{{{e}}}");
                }
            }
        }
        if s.is_empty() {
            "1".into()
        } else {
            s
        }
    }
}

/// Exponent vector over a `GeneratorSet`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }
}

/// Finite linear combination of monomials.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedElement<C> {
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coeff> Default for GradedElement<C> {
    fn default() -> Self {
        GradedElement {
            terms: BTreeMap::new(),
        }
    }
}

impl<C: Coeff> GradedElement<C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(m: Monomial, c: C) -> Self {
        let mut e = Self::zero();
        e.add_term(m, c);
        e
    }

    pub fn constant(gens: &GeneratorSet, c: C) -> Self {
        Self::monomial(gens.one(), c)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut e = Self::zero();
        for (m, c) in terms {
            e.add_term(m, c);
        }
        e
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = v.add_ref(&c);
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, C)> {
        self.terms.into_iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.neg_ref());
        }
        out
    }

    pub fn neg(&self) -> Self {
        GradedElement {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg_ref())).collect(),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), c.scale(r))))
    }

    pub fn mul_coeff(&self, k: &C) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), c.mul_ref(k))))
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        GradedElement {
            terms: self.terms.iter().map(|(a, c)| (a.mul(m), c.clone())).collect(),
        }
    }

    /// Polynomial product without any truncation.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1.mul_ref(c2));
            }
        }
        out
    }

    /// Product keeping only terms of degree at most `max`.
    pub fn mul_truncated(&self, other: &Self, gens: &GeneratorSet, max: u32) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            let d1 = gens.degree(m1);
            if d1 > max {
                continue;
            }
            for (m2, c2) in &other.terms {
                if d1 + gens.degree(m2) <= max {
                    out.add_term(m1.mul(m2), c1.mul_ref(c2));
                }
            }
        }
        out
    }

    pub fn truncate(&self, gens: &GeneratorSet, max: u32) -> Self {
        self.filter(|m| gens.degree(m) <= max)
    }

    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Self {
        GradedElement {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn homogeneous_part(&self, gens: &GeneratorSet, d: u32) -> Self {
        self.filter(|m| gens.degree(m) == d)
    }

    pub fn max_degree(&self, gens: &GeneratorSet) -> Option<u32> {
        self.terms.keys().map(|m| gens.degree(m)).max()
    }

    pub fn min_degree(&self, gens: &GeneratorSet) -> Option<u32> {
        self.terms.keys().map(|m| gens.degree(m)).min()
    }

    /// The single degree of a nonzero homogeneous element.
    pub fn homogeneous_degree(&self, gens: &GeneratorSet) -> Option<u32> {
        let d = self.min_degree(gens)?;
        (self.max_degree(gens) == Some(d)).then_some(d)
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> GradedElement<D> {
        GradedElement::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    pub fn pow(&self, e: u32, gens: &GeneratorSet, max: u32) -> Self {
        let mut acc = Self::constant(gens, C::one());
        for _ in 0..e {
            acc = acc.mul_truncated(self, gens, max);
        }
        acc
    }

    pub fn format(&self, gens: &GeneratorSet) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mono = gens.format_monomial(m);
                if mono == "1" {
                    format!("({c})")
                } else {
                    format!("({c})·{mono}")
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl GradedElement<Rational> {
    pub fn lift<C: Coeff>(&self) -> GradedElement<C> {
        self.map_coeffs(|c| C::from_rational(c.clone()))
    }
}
