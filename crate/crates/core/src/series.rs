//! Truncated univariate power series.

use crate::scalar::{binomial_rational, int, Coeff, Rational};

/// `Σ_{i < order} c_i x^i + O(x^order)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FormalSeries<C> {
    coeffs: Vec<C>,
}

impl<C: Coeff> FormalSeries<C> {
    pub fn new(mut coeffs: Vec<C>, order: usize) -> Self {
        coeffs.resize(order, C::zero());
        FormalSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::new(vec![C::one()], order)
    }

    /// The variable `x` itself.
    pub fn x(order: usize) -> Self {
        Self::new(vec![C::zero(), C::one()], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, i: usize) -> C {
        self.coeffs.get(i).cloned().unwrap_or_else(C::zero)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        Self::new((0..n).map(|i| self.coeffs[i].add_ref(&o.coeffs[i])).collect(), n)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        Self::new((0..n).map(|i| self.coeffs[i].sub_ref(&o.coeffs[i])).collect(), n)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.scale(r)).collect(), self.order())
    }

    pub fn mul_coeff(&self, k: &C) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.mul_ref(k)).collect(), self.order())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        let mut out = vec![C::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(n - i) {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
                }
            }
        }
        Self::new(out, n)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        let mut c = vec![C::zero(); k];
        c.extend(self.coeffs.iter().cloned());
        Self::new(c, self.order())
    }

    fn without_constant(&self) -> bool {
        self.coeffs.first().is_none_or(Coeff::is_zero)
    }

    /// `self(inner(x))`; `inner` must have no constant term.
    pub fn compose(&self, inner: &Self) -> Self {
        assert!(inner.without_constant(), "inner series must vanish at 0");
        let n = self.order().min(inner.order());
        let mut out = Self::zero(n);
        let mut p = Self::one(n);
        for i in 0..n {
            out = out.add(&p.mul_coeff(&self.coeffs[i]));
            p = p.mul(inner);
        }
        out
    }

    /// `(1 + y)^a` for rational `a`; `y` must have no constant term.
    pub fn one_plus_pow(y: &Self, a: &Rational) -> Self {
        assert!(y.without_constant(), "series must vanish at 0");
        let n = y.order();
        let mut out = Self::zero(n);
        let mut p = Self::one(n);
        for j in 0..n {
            out = out.add(&p.scale(&binomial_rational(a, j as u32)));
            p = p.mul(y);
        }
        out
    }

    /// `log(1 + y)`; `y` must have no constant term.
    pub fn log_one_plus(y: &Self) -> Self {
        assert!(y.without_constant(), "series must vanish at 0");
        let n = y.order();
        let mut out = Self::zero(n);
        let mut p = y.clone();
        for j in 1..n {
            let sign = if j % 2 == 1 { 1 } else { -1 };
            out = out.add(&p.scale(&(int(sign) / int(j as i64))));
            p = p.mul(y);
        }
        out
    }

    /// Iterates `f` from zero until the series stabilizes, at most `order + 1` times.
    pub fn fixed_point(order: usize, f: impl Fn(&Self) -> Self) -> Self {
        let mut cur = Self::zero(order);
        for _ in 0..=order {
            let next = f(&cur);
            if next == cur {
                break;
            }
            cur = next;
        }
        cur
    }
}
