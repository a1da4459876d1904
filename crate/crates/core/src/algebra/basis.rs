use crate::algebra::element::GradedElement;
use crate::algebra::quotient::QuotientAlgebra;
use crate::algebra::tensor::Tensor;
use crate::error::AlgebraError;
use crate::linalg::{invert_exact, Matrix};
use crate::scalar::{Coeff, ExactDomain};

/// Basis of one homogeneous component, with the change of coordinates from
/// the normal-form monomial basis.
#[derive(Clone, Debug)]
pub struct DegreeBasis<C: Coeff> {
    pub degree: u32,
    pub labels: Vec<String>,
    pub elements: Vec<GradedElement<C>>,
    to_coords: Matrix<C>,
}

/// A labelled basis of the whole algebra used to display tensors.
#[derive(Clone, Debug)]
pub struct DisplayBasis<C: Coeff> {
    pub tag: String,
    pub degrees: Vec<DegreeBasis<C>>,
}

impl<C: ExactDomain> DisplayBasis<C> {
    /// `per_degree[d]` lists `(label, element)` for degree `d`.
    pub fn new(
        alg: &QuotientAlgebra<C>,
        tag: &str,
        per_degree: Vec<Vec<(String, GradedElement<C>)>>,
    ) -> Result<Self, AlgebraError> {
        let mut degrees = Vec::new();
        for (d, items) in per_degree.into_iter().enumerate() {
            let d = d as u32;
            let n = alg.basis(d).len();
            if items.len() != n {
                return Err(AlgebraError::Unsupported(format!(
                    "basis {tag}: degree {d} has {} elements, dimension is {n}",
                    items.len()
                )));
            }
            let mut labels = Vec::new();
            let mut elements = Vec::new();
            for (l, e) in items {
                let nf = alg.normal_form(&e)?;
                if !nf.is_zero() && nf.homogeneous_degree(alg.generators()) != Some(d) {
                    return Err(AlgebraError::NotHomogeneous);
                }
                labels.push(l);
                elements.push(nf);
            }
            let cols = Matrix::from_fn(n, n, |i, j| elements[j].coeff(&alg.basis(d)[i]));
            let to_coords = invert_exact(&cols)?;
            degrees.push(DegreeBasis {
                degree: d,
                labels,
                elements,
                to_coords,
            });
        }
        Ok(DisplayBasis {
            tag: tag.to_string(),
            degrees,
        })
    }

    /// Coordinates of a normal-form element's degree-`d` part.
    pub fn coords(&self, alg: &QuotientAlgebra<C>, x: &GradedElement<C>, d: u32) -> Vec<C> {
        self.degrees[d as usize].to_coords.mul_vec(&alg.coords(x, d))
    }

    pub fn label(&self, d: u32, i: usize) -> &str {
        &self.degrees[d as usize].labels[i]
    }
}

/// One nonzero coefficient of a tensor written in display bases.
#[derive(Clone, Debug, PartialEq)]
pub struct TableEntry<C> {
    pub left_degree: u32,
    pub left_index: usize,
    pub right_degree: u32,
    pub right_index: usize,
    pub coeff: C,
}

/// Rewrites a tensor in the given bases of the two legs.
pub fn tensor_in_bases<C: ExactDomain>(
    alg: &QuotientAlgebra<C>,
    t: &Tensor<C>,
    left: &DisplayBasis<C>,
    right: &DisplayBasis<C>,
) -> Vec<TableEntry<C>> {
    let gens = alg.generators();
    let top = alg.top_degree();
    let mut out = Vec::new();
    for dl in 0..=top {
        for dr in 0..=top {
            let nl = alg.basis(dl).len();
            let nr = alg.basis(dr).len();
            let mut acc = Matrix::<C>::zeros(nl, nr);
            let mut any = false;
            for (a, b, c) in t.terms() {
                if gens.degree(a) != dl || gens.degree(b) != dr {
                    continue;
                }
                any = true;
                let ia = alg.basis(dl).iter().position(|m| m == a).expect("normal-form leg");
                let ib = alg.basis(dr).iter().position(|m| m == b).expect("normal-form leg");
                let lc = &left.degrees[dl as usize].to_coords;
                let rc = &right.degrees[dr as usize].to_coords;
                for i in 0..nl {
                    let li = lc.get(i, ia);
                    if li.is_zero() {
                        continue;
                    }
                    for j in 0..nr {
                        let rj = rc.get(j, ib);
                        if rj.is_zero() {
                            continue;
                        }
                        let v = acc.get(i, j).add_ref(&c.mul_ref(li).mul_ref(rj));
                        acc.set(i, j, v);
                    }
                }
            }
            if !any {
                continue;
            }
            for i in 0..nl {
                for j in 0..nr {
                    let v = acc.get(i, j);
                    if !v.is_zero() {
                        out.push(TableEntry {
                            left_degree: dl,
                            left_index: i,
                            right_degree: dr,
                            right_index: j,
                            coeff: v.clone(),
                        });
                    }
                }
            }
        }
    }
    out
}

/// Builds the tensor `Σ c e_i ⊗ e_j` back from table entries.
pub fn tensor_from_entries<C: ExactDomain>(
    left: &DisplayBasis<C>,
    right: &DisplayBasis<C>,
    entries: &[TableEntry<C>],
) -> Tensor<C> {
    let mut t = Tensor::zero();
    for e in entries {
        let a = &left.degrees[e.left_degree as usize].elements[e.left_index];
        let b = &right.degrees[e.right_degree as usize].elements[e.right_index];
        t = t.add(&Tensor::outer(a, b, &e.coeff));
    }
    t
}
