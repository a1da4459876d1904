use std::collections::BTreeMap;

use crate::algebra::element::{GeneratorSet, GradedElement, Monomial};
use crate::error::AlgebraError;
use crate::linalg::Matrix;
use crate::scalar::{Coeff, Rational};

/// What happens to products landing above the top degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Truncation {
    /// Overflow is an error.
    Strict,
    /// The algebra is known to vanish above the top degree; such terms are dropped.
    Nilpotent,
}

/// Ideal generator: a homogeneous rational leading form plus optional
/// higher-degree corrections with coefficients in `C`.
#[derive(Clone, Debug, PartialEq)]
pub struct IdealGenerator<C> {
    pub lead: GradedElement<Rational>,
    pub tail: GradedElement<C>,
}

impl<C: Coeff> IdealGenerator<C> {
    pub fn homogeneous(lead: GradedElement<Rational>) -> Self {
        IdealGenerator {
            lead,
            tail: GradedElement::zero(),
        }
    }

    pub fn full(&self) -> GradedElement<C> {
        self.lead.lift::<C>().add(&self.tail)
    }
}

#[derive(Clone, Debug)]
struct Reducer<C> {
    same: Vec<(Monomial, Rational)>,
    tail: GradedElement<C>,
}

#[derive(Clone, Debug)]
struct DegreeData<C> {
    basis: Vec<Monomial>,
    reducers: BTreeMap<Monomial, Reducer<C>>,
    ideal_rows: Vec<GradedElement<C>>,
}

/// Graded quotient `C[gens]/I` truncated at a top degree, with a
/// canonical normal form.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra<C> {
    gens: GeneratorSet,
    top: u32,
    truncation: Truncation,
    degrees: Vec<DegreeData<C>>,
}

type Row<C> = (Vec<Rational>, GradedElement<C>);

impl<C: Coeff> QuotientAlgebra<C> {
    /// Builds the normal form from ideal generators by row reduction of all
    /// monomial multiples, degree by degree.
    pub fn new(
        gens: GeneratorSet,
        ideal: &[IdealGenerator<C>],
        top: u32,
        truncation: Truncation,
    ) -> Result<Self, AlgebraError> {
        let mut gen_degrees = Vec::with_capacity(ideal.len());
        for g in ideal {
            let d = g
                .lead
                .homogeneous_degree(&gens)
                .ok_or(AlgebraError::NotHomogeneous)?;
            if let Some(td) = g.tail.min_degree(&gens) {
                if td <= d {
                    return Err(AlgebraError::Unsupported(
                        "ideal tail must lie strictly above the leading degree".into(),
                    ));
                }
            }
            gen_degrees.push(d);
        }
        let mut degrees = Vec::with_capacity(top as usize + 1);
        let mut syzygy_tails = Vec::new();
        for d in 0..=top {
            let monos = gens.monomials(d);
            let mut rows: Vec<Row<C>> = Vec::new();
            for (g, &e) in ideal.iter().zip(&gen_degrees) {
                if e > d {
                    continue;
                }
                for m in gens.monomials(d - e) {
                    let lead = dense(&monos, &g.lead.mul_monomial(&m));
                    let tail = g.tail.mul_monomial(&m).truncate(&gens, top);
                    rows.push((lead, tail));
                }
            }
            let (data, dropped) = reduce_degree(&gens, monos, rows);
            degrees.push(data);
            syzygy_tails.extend(dropped);
        }
        let alg = QuotientAlgebra {
            gens,
            top,
            truncation,
            degrees,
        };
        // combinations whose leading forms cancel leave their tails in the
        // ideal; these must already reduce to zero or the leading ideal is
        // not the initial ideal
        for t in syzygy_tails {
            if !alg.normal_form(&t)?.is_zero() {
                return Err(AlgebraError::Unsupported(
                    "leading forms do not generate the initial ideal".into(),
                ));
            }
        }
        Ok(alg)
    }

    /// Builds the normal form from explicit homogeneous ideal components,
    /// one list per degree `0..=top`. The caller guarantees they form an ideal.
    pub fn from_degree_components(
        gens: GeneratorSet,
        components: Vec<Vec<GradedElement<Rational>>>,
        top: u32,
        truncation: Truncation,
    ) -> Result<Self, AlgebraError> {
        if components.len() != top as usize + 1 {
            return Err(AlgebraError::Unsupported(format!(
                "expected {} degree components, got {}",
                top + 1,
                components.len()
            )));
        }
        let mut degrees = Vec::new();
        for (d, comp) in components.into_iter().enumerate() {
            let monos = gens.monomials(d as u32);
            let mut rows = Vec::new();
            for x in comp {
                if !x.is_zero() && x.homogeneous_degree(&gens) != Some(d as u32) {
                    return Err(AlgebraError::NotHomogeneous);
                }
                rows.push((dense(&monos, &x), GradedElement::zero()));
            }
            degrees.push(reduce_degree(&gens, monos, rows).0);
        }
        Ok(QuotientAlgebra {
            gens,
            top,
            truncation,
            degrees,
        })
    }

    pub fn generators(&self) -> &GeneratorSet {
        &self.gens
    }

    pub fn top_degree(&self) -> u32 {
        self.top
    }

    pub fn truncation(&self) -> Truncation {
        self.truncation
    }

    pub fn basis(&self, d: u32) -> &[Monomial] {
        self.degrees
            .get(d as usize)
            .map(|x| x.basis.as_slice())
            .unwrap_or(&[])
    }

    pub fn hilbert(&self) -> Vec<usize> {
        self.degrees.iter().map(|x| x.basis.len()).collect()
    }

    pub fn dim(&self) -> usize {
        self.hilbert().iter().sum()
    }

    /// Reduced row echelon basis of the ideal in degree `d` (full elements).
    pub fn ideal_rows(&self, d: u32) -> &[GradedElement<C>] {
        self.degrees
            .get(d as usize)
            .map(|x| x.ideal_rows.as_slice())
            .unwrap_or(&[])
    }

    pub fn is_basis_monomial(&self, m: &Monomial) -> bool {
        let d = self.gens.degree(m);
        d <= self.top && !self.degrees[d as usize].reducers.contains_key(m)
    }

    pub fn one(&self) -> GradedElement<C> {
        GradedElement::constant(&self.gens, C::one())
    }

    pub fn generator(&self, i: usize) -> GradedElement<C> {
        GradedElement::monomial(self.gens.generator(i), C::one())
    }

    pub fn normal_form(&self, x: &GradedElement<C>) -> Result<GradedElement<C>, AlgebraError> {
        let mut buckets: Vec<BTreeMap<Monomial, C>> = vec![BTreeMap::new(); self.top as usize + 1];
        for (m, c) in x.terms() {
            let d = self.gens.degree(m);
            if d > self.top {
                match self.truncation {
                    Truncation::Strict => {
                        return Err(AlgebraError::DegreeOverflow { degree: d, top: self.top })
                    }
                    Truncation::Nilpotent => continue,
                }
            }
            accumulate(&mut buckets[d as usize], m.clone(), c.clone());
        }
        let mut out = GradedElement::zero();
        for d in 0..=self.top as usize {
            let bucket = std::mem::take(&mut buckets[d]);
            for (m, c) in bucket {
                match self.degrees[d].reducers.get(&m) {
                    None => out.add_term(m, c),
                    Some(r) => {
                        for (b, q) in &r.same {
                            out.add_term(b.clone(), c.scale(q));
                        }
                        for (mt, ct) in r.tail.terms() {
                            let dt = self.gens.degree(mt) as usize;
                            accumulate(&mut buckets[dt], mt.clone(), c.mul_ref(ct));
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn multiply(
        &self,
        x: &GradedElement<C>,
        y: &GradedElement<C>,
    ) -> Result<GradedElement<C>, AlgebraError> {
        let p = match self.truncation {
            Truncation::Nilpotent => x.mul_truncated(y, &self.gens, self.top),
            Truncation::Strict => x.mul(y),
        };
        self.normal_form(&p)
    }

    pub fn equal(&self, x: &GradedElement<C>, y: &GradedElement<C>) -> Result<bool, AlgebraError> {
        Ok(self.normal_form(&x.sub(y))?.is_zero())
    }

    /// Coefficients of a normal-form element on the basis of degree `d`.
    pub fn coords(&self, x: &GradedElement<C>, d: u32) -> Vec<C> {
        self.basis(d).iter().map(|m| x.coeff(m)).collect()
    }

    pub fn from_coords(&self, d: u32, coords: &[C]) -> GradedElement<C> {
        GradedElement::from_terms(self.basis(d).iter().cloned().zip(coords.iter().cloned()))
    }

    /// Dimensions of the leading-form quotient in the degrees just above the
    /// top degree. All zero means the truncation drops nothing.
    pub fn dims_above_top(&self, ideal_leads: &[GradedElement<Rational>], extra: u32) -> Vec<usize> {
        let leads: Vec<IdealGenerator<C>> = ideal_leads
            .iter()
            .map(|l| IdealGenerator::homogeneous(l.clone()))
            .collect();
        let Ok(probe) = QuotientAlgebra::<C>::new(
            self.gens.clone(),
            &leads,
            self.top + extra,
            Truncation::Nilpotent,
        ) else {
            return vec![usize::MAX; extra as usize];
        };
        probe.hilbert()[self.top as usize + 1..].to_vec()
    }
}

fn accumulate<C: Coeff>(map: &mut BTreeMap<Monomial, C>, m: Monomial, c: C) {
    if c.is_zero() {
        return;
    }
    match map.get_mut(&m) {
        Some(v) => {
            *v = v.add_ref(&c);
            if v.is_zero() {
                map.remove(&m);
            }
        }
        None => {
            map.insert(m, c);
        }
    }
}

fn dense(monos: &[Monomial], x: &GradedElement<Rational>) -> Vec<Rational> {
    monos.iter().map(|m| x.coeff(m)).collect()
}

/// Gauss-Jordan on leading forms, carrying the tails along. Also returns the
/// nonzero tails of rows whose leading form was eliminated.
fn reduce_degree<C: Coeff>(
    gens: &GeneratorSet,
    mut monos: Vec<Monomial>,
    rows: Vec<Row<C>>,
) -> (DegreeData<C>, Vec<GradedElement<C>>) {
    // elimination order: heavy monomials first, so they become pivots
    let mut perm: Vec<usize> = (0..monos.len()).collect();
    perm.sort_by(|&a, &b| gens.heaviness_key(&monos[b]).cmp(&gens.heaviness_key(&monos[a])));
    let mut rows: Vec<Row<C>> = rows
        .into_iter()
        .map(|(lead, tail)| (perm.iter().map(|&i| lead[i].clone()).collect(), tail))
        .collect();
    monos = perm.iter().map(|&i| monos[i].clone()).collect();

    let ncols = monos.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !Coeff::is_zero(&rows[i].0[c])) else {
            continue;
        };
        rows.swap(p, r);
        let inv = rows[r].0[c].recip();
        for v in rows[r].0.iter_mut() {
            *v *= &inv;
        }
        rows[r].1 = rows[r].1.scale(&inv);
        let (pl, pt) = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || Coeff::is_zero(&row.0[c]) {
                continue;
            }
            let f = row.0[c].clone();
            for (v, pv) in row.0.iter_mut().zip(&pl) {
                if !Coeff::is_zero(pv) {
                    *v -= &f * pv;
                }
            }
            row.1 = row.1.sub(&pt.scale(&f));
        }
        pivots.push(c);
        r += 1;
    }
    let dropped: Vec<GradedElement<C>> = rows
        .drain(r..)
        .map(|(_, t)| t)
        .filter(|t| !t.is_zero())
        .collect();

    let mut basis: Vec<Monomial> = (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|c| monos[c].clone())
        .collect();
    basis.sort_by_key(|m| gens.heaviness_key(m));

    let mut reducers = BTreeMap::new();
    let mut ideal_rows = Vec::new();
    for ((lead, tail), &pc) in rows.iter().zip(&pivots) {
        let same = (0..ncols)
            .filter(|c| *c != pc && !Coeff::is_zero(&lead[*c]))
            .map(|c| (monos[c].clone(), -lead[c].clone()))
            .collect();
        reducers.insert(
            monos[pc].clone(),
            Reducer {
                same,
                tail: tail.neg(),
            },
        );
        let full = GradedElement::from_terms(
            monos
                .iter()
                .cloned()
                .zip(lead.iter().map(|q| C::from_rational(q.clone()))),
        )
        .add(tail);
        ideal_rows.push(full);
    }
    (
        DegreeData {
            basis,
            reducers,
            ideal_rows,
        },
        dropped,
    )
}

/// Matrix of `ev(ν_i · φ_j)`.
pub fn pairing_matrix<C: Coeff>(
    alg: &QuotientAlgebra<C>,
    ev: &LinearFunctional<C>,
    left: &[GradedElement<C>],
    right: &[GradedElement<C>],
) -> Result<Matrix<C>, AlgebraError> {
    let mut m = Matrix::zeros(left.len(), right.len());
    for (i, a) in left.iter().enumerate() {
        for (j, b) in right.iter().enumerate() {
            m.set(i, j, ev.eval(alg, &alg.multiply(a, b)?)?);
        }
    }
    Ok(m)
}

/// Linear functional supported on one degree, given by its values on the
/// normal-form basis of that degree.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearFunctional<C> {
    degree: u32,
    values: Vec<C>,
}

impl<C: Coeff> LinearFunctional<C> {
    pub fn from_basis_values(alg: &QuotientAlgebra<C>, degree: u32, values: Vec<C>) -> Result<Self, AlgebraError> {
        if values.len() != alg.basis(degree).len() {
            return Err(AlgebraError::Unsupported("value count does not match basis".into()));
        }
        Ok(LinearFunctional { degree, values })
    }

    /// Functional determined by values on all monomials of `degree`; only the
    /// basis values are stored.
    pub fn from_monomial_values(
        alg: &QuotientAlgebra<C>,
        degree: u32,
        f: impl Fn(&Monomial) -> C,
    ) -> Self {
        LinearFunctional {
            degree,
            values: alg.basis(degree).iter().map(f).collect(),
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn values(&self) -> &[C] {
        &self.values
    }

    pub fn eval(&self, alg: &QuotientAlgebra<C>, x: &GradedElement<C>) -> Result<C, AlgebraError> {
        let nf = alg.normal_form(x)?;
        let mut acc = C::zero();
        for (m, v) in alg.basis(self.degree).iter().zip(&self.values) {
            let c = nf.coeff(m);
            if !c.is_zero() {
                acc = acc.add_ref(&c.mul_ref(v));
            }
        }
        Ok(acc)
    }

    /// Monomials of the functional's degree whose prescribed value disagrees
    /// with the value forced by the relations.
    pub fn defects(
        &self,
        alg: &QuotientAlgebra<C>,
        f: impl Fn(&Monomial) -> C,
    ) -> Result<Vec<(Monomial, C, C)>, AlgebraError> {
        let mut out = Vec::new();
        for m in alg.generators().monomials(self.degree) {
            let want = f(&m);
            let got = self.eval(alg, &GradedElement::monomial(m.clone(), C::one()))?;
            if want != got {
                out.push((m, want, got));
            }
        }
        Ok(out)
    }
}
