//! Exact coefficients: rationals, Laurent polynomials in π and polynomials in
//! the curvature parameter λ.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::ScalarError;

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn big(n: BigInt) -> Rational {
    BigRational::from_integer(n)
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Binomial coefficient with the usual zero conventions outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= BigInt::from(n - i);
        acc /= BigInt::from(i + 1);
    }
    acc
}

/// Generalized binomial `a choose j` for rational `a`.
pub fn binomial_rational(a: &Rational, j: u32) -> Rational {
    let mut acc = <Rational as One>::one();
    for i in 0..j {
        acc = acc * (a - int(i as i64)) / int(i as i64 + 1);
    }
    acc
}

/// Exact conversion of a finite float into a rational.
pub fn rational_from_f64(x: f64) -> Option<Rational> {
    BigRational::from_float(x)
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Ring operations shared by every coefficient type used in the algebras.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_rational(r: Rational) -> Self;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn scale(&self, r: &Rational) -> Self;
}

/// Coefficient rings with exact division, needed for fraction-free elimination.
pub trait ExactDomain: Coeff {
    fn div_exact(&self, d: &Self) -> Option<Self>;
}

impl Coeff for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_rational(r: Rational) -> Self {
        r
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
}

impl ExactDomain for Rational {
    fn div_exact(&self, d: &Self) -> Option<Self> {
        if Zero::is_zero(d) {
            None
        } else {
            Some(self / d)
        }
    }
}

/// Finite sum `Σ q_m π^m` with rational `q_m` and integer `m`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    terms: BTreeMap<i32, Rational>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::from_rational(<Rational as One>::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        Scalar::term(r, 0)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rational(int(n))
    }

    pub fn pi_pow(m: i32) -> Self {
        Scalar::term(<Rational as One>::one(), m)
    }

    /// `r · π^m`
    pub fn term(r: Rational, m: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !Zero::is_zero(&r) {
            terms.insert(m, r);
        }
        Scalar { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Rational)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn coeff(&self, m: i32) -> Rational {
        self.terms.get(&m).cloned().unwrap_or_else(<Rational as Zero>::zero)
    }

    pub fn single_term(&self) -> Option<(i32, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(m, c)| (*m, c))
        } else {
            None
        }
    }

    /// The value as a rational, if no power of π other than `π^0` occurs.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(<Rational as Zero>::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn inverse(&self) -> Result<Scalar, ScalarError> {
        match self.terms.len() {
            0 => Err(ScalarError::DivisionByZero),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                Ok(Scalar::term(c.recip(), -m))
            }
            _ => Err(ScalarError::UnsupportedInverse(self.to_string())),
        }
    }

    /// Exact quotient in the Laurent polynomial ring `Q[π, π^-1]`.
    pub fn div_exact(&self, d: &Scalar) -> Result<Scalar, ScalarError> {
        if d.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Scalar::zero());
        }
        if let Some((m, c)) = d.single_term() {
            return Ok(self * &Scalar::term(c.recip(), -m));
        }
        let (dmin, _) = d.terms.iter().next().map(|(m, c)| (*m, c)).unwrap();
        let (dmax, dlead) = d.terms.iter().next_back().map(|(m, c)| (*m, c.clone())).unwrap();
        let amin = *self.terms.keys().next().unwrap();
        let lowest_quotient = amin - dmin;
        let mut rem = self.clone();
        let mut quot = Scalar::zero();
        while let Some((&e, c)) = rem.terms.iter().next_back() {
            let qe = e - dmax;
            if qe < lowest_quotient {
                return Err(ScalarError::NotDivisible {
                    num: self.to_string(),
                    den: d.to_string(),
                });
            }
            let q = Scalar::term(c / &dlead, qe);
            rem = &rem - &(&q * d);
            quot = &quot + &q;
        }
        Ok(quot)
    }

    pub fn scale(&self, r: &Rational) -> Scalar {
        if Zero::is_zero(r) {
            return Scalar::zero();
        }
        Scalar {
            terms: self.terms.iter().map(|(m, c)| (*m, c * r)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| rational_to_f64(c) * std::f64::consts::PI.powi(*m))
            .sum()
    }

    fn insert_add(&mut self, m: i32, c: Rational) {
        if Zero::is_zero(&c) {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(<Rational as Zero>::zero);
        *entry += c;
        if Zero::is_zero(entry) {
            self.terms.remove(&m);
        }
    }

    pub fn to_json(&self) -> ScalarJson {
        ScalarJson {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| ScalarTermJson {
                    den: c.denom().to_string(),
                    num: c.numer().to_string(),
                    pi_pow: *m,
                })
                .collect(),
        }
    }

    pub fn from_json(j: &ScalarJson) -> Result<Scalar, ScalarError> {
        let mut s = Scalar::zero();
        for t in &j.terms {
            let num: BigInt = t
                .num
                .parse()
                .map_err(|_| ScalarError::Parse(t.num.clone()))?;
            let den: BigInt = t
                .den
                .parse()
                .map_err(|_| ScalarError::Parse(t.den.clone()))?;
            if den.is_zero() {
                return Err(ScalarError::DivisionByZero);
            }
            s.insert_add(t.pi_pow, BigRational::new(num, den));
        }
        Ok(s)
    }

    /// LaTeX rendering, e.g. `\frac{2}{\pi}` or `\frac{\pi^{2}}{4}`.
    pub fn to_latex(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if i > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            let a = c.abs();
            let (num, den) = (a.numer().clone(), a.denom().clone());
            let pi = match m.abs() {
                0 => String::new(),
                1 => "\\pi".to_string(),
                k => format!("\\pi^{{{k}}}"),
            };
            let (top, bottom) = if *m >= 0 { (pi, String::new()) } else { (String::new(), pi) };
            let top = match (num.is_one(), top.is_empty()) {
                (true, true) => "1".to_string(),
                (true, false) => top,
                (false, true) => num.to_string(),
                (false, false) => format!("{num}{top}"),
            };
            let bottom = match (den.is_one(), bottom.is_empty()) {
                (true, true) => String::new(),
                (true, false) => bottom,
                (false, true) => den.to_string(),
                (false, false) => format!("{den}{bottom}"),
            };
            if bottom.is_empty() {
                out.push_str(&top);
            } else {
                out.push_str(&format!("\\frac{{{top}}}{{{bottom}}}"));
            }
        }
        out
    }
}

fn fmt_pi_term(f: &mut fmt::Formatter<'_>, m: i32, c: &Rational) -> fmt::Result {
    if m == 0 {
        return write!(f, "{c}");
    }
    let pi = if m == 1 { "π".to_string() } else { format!("π^{m}") };
    if c.is_one() {
        write!(f, "{pi}")
    } else if (-c).is_one() {
        write!(f, "-{pi}")
    } else {
        write!(f, "{c}·{pi}")
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                if c.is_negative() {
                    write!(f, " - ")?;
                    fmt_pi_term(f, *m, &-c)?;
                    continue;
                }
                write!(f, " + ")?;
            }
            fmt_pi_term(f, *m, c)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert_add(*m, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert_add(*m, -c);
        }
        out
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.insert_add(m1 + m2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        for (m, c) in &rhs.terms {
            self.insert_add(*m, c.clone());
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        for (m, c) in &rhs.terms {
            self.insert_add(*m, -c);
        }
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::from_rational(r)
    }
}

impl Coeff for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn from_rational(r: Rational) -> Self {
        Scalar::from_rational(r)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn scale(&self, r: &Rational) -> Self {
        Scalar::scale(self, r)
    }
}

impl ExactDomain for Scalar {
    fn div_exact(&self, d: &Self) -> Option<Self> {
        Scalar::div_exact(self, d).ok()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalarTermJson {
    pub den: String,
    pub num: String,
    pub pi_pow: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalarJson {
    pub terms: Vec<ScalarTermJson>,
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = ScalarJson::deserialize(d)?;
        Scalar::from_json(&j).map_err(serde::de::Error::custom)
    }
}

/// Polynomial in λ with `Scalar` coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LambdaScalar {
    terms: BTreeMap<u32, Scalar>,
}

impl LambdaScalar {
    pub fn zero() -> Self {
        LambdaScalar::default()
    }

    pub fn one() -> Self {
        LambdaScalar::from_scalar(Scalar::one())
    }

    pub fn from_scalar(s: Scalar) -> Self {
        LambdaScalar::term(s, 0)
    }

    pub fn from_rational(r: Rational) -> Self {
        LambdaScalar::from_scalar(Scalar::from_rational(r))
    }

    pub fn lambda_pow(j: u32) -> Self {
        LambdaScalar::term(Scalar::one(), j)
    }

    /// `s · λ^j`
    pub fn term(s: Scalar, j: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !s.is_zero() {
            terms.insert(j, s);
        }
        LambdaScalar { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Scalar)> {
        self.terms.iter().map(|(j, c)| (*j, c))
    }

    pub fn coeff(&self, j: u32) -> Scalar {
        self.terms.get(&j).cloned().unwrap_or_default()
    }

    pub fn lambda_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    pub fn truncate_lambda(&self, max: u32) -> LambdaScalar {
        LambdaScalar {
            terms: self
                .terms
                .iter()
                .filter(|(j, _)| **j <= max)
                .map(|(j, c)| (*j, c.clone()))
                .collect(),
        }
    }

    /// Specialize λ to a rational value.
    pub fn eval_at(&self, lambda: &Rational) -> Scalar {
        let mut out = Scalar::zero();
        for (j, c) in &self.terms {
            let mut p = <Rational as One>::one();
            for _ in 0..*j {
                p *= lambda;
            }
            out += &c.scale(&p);
        }
        out
    }

    pub fn scale(&self, r: &Rational) -> LambdaScalar {
        if Zero::is_zero(r) {
            return LambdaScalar::zero();
        }
        LambdaScalar {
            terms: self.terms.iter().map(|(j, c)| (*j, c.scale(r))).collect(),
        }
    }

    pub fn scale_scalar(&self, s: &Scalar) -> LambdaScalar {
        let mut out = LambdaScalar::zero();
        for (j, c) in &self.terms {
            out.insert_add(*j, c * s);
        }
        out
    }

    fn insert_add(&mut self, j: u32, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(j).or_default();
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&j);
        }
    }

    pub fn to_json(&self) -> LambdaScalarJson {
        LambdaScalarJson {
            terms: self
                .terms
                .iter()
                .map(|(j, c)| LambdaTermJson {
                    coeff: c.to_json(),
                    lambda_pow: *j,
                })
                .collect(),
        }
    }

    pub fn from_json(j: &LambdaScalarJson) -> Result<LambdaScalar, ScalarError> {
        let mut out = LambdaScalar::zero();
        for t in &j.terms {
            out.insert_add(t.lambda_pow, Scalar::from_json(&t.coeff)?);
        }
        Ok(out)
    }
}

impl fmt::Display for LambdaScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (j, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match j {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})·λ")?,
                _ => write!(f, "({c})·λ^{j}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LambdaScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LambdaScalar({self})")
    }
}

impl<'a> Add<&'a LambdaScalar> for &'a LambdaScalar {
    type Output = LambdaScalar;
    fn add(self, rhs: &'a LambdaScalar) -> LambdaScalar {
        let mut out = self.clone();
        for (j, c) in &rhs.terms {
            out.insert_add(*j, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a LambdaScalar> for &'a LambdaScalar {
    type Output = LambdaScalar;
    fn sub(self, rhs: &'a LambdaScalar) -> LambdaScalar {
        let mut out = self.clone();
        for (j, c) in &rhs.terms {
            out.insert_add(*j, -c);
        }
        out
    }
}

impl<'a> Mul<&'a LambdaScalar> for &'a LambdaScalar {
    type Output = LambdaScalar;
    fn mul(self, rhs: &'a LambdaScalar) -> LambdaScalar {
        let mut out = LambdaScalar::zero();
        for (j1, c1) in &self.terms {
            for (j2, c2) in &rhs.terms {
                out.insert_add(j1 + j2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LambdaScalar {
    type Output = LambdaScalar;
    fn neg(self) -> LambdaScalar {
        LambdaScalar {
            terms: self.terms.iter().map(|(j, c)| (*j, -c)).collect(),
        }
    }
}

impl AddAssign<&LambdaScalar> for LambdaScalar {
    fn add_assign(&mut self, rhs: &LambdaScalar) {
        for (j, c) in &rhs.terms {
            self.insert_add(*j, c.clone());
        }
    }
}

impl Coeff for LambdaScalar {
    fn zero() -> Self {
        LambdaScalar::zero()
    }
    fn one() -> Self {
        LambdaScalar::one()
    }
    fn is_zero(&self) -> bool {
        LambdaScalar::is_zero(self)
    }
    fn from_rational(r: Rational) -> Self {
        LambdaScalar::from_rational(r)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn scale(&self, r: &Rational) -> Self {
        LambdaScalar::scale(self, r)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaTermJson {
    pub coeff: ScalarJson,
    pub lambda_pow: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaScalarJson {
    pub terms: Vec<LambdaTermJson>,
}

/// Volume of the unit ball in `R^k`: `π^{k/2} / Γ(1 + k/2)`.
///
/// The result always lies in `Q · π^{floor(k/2)}`.
pub fn omega(k: u32) -> Scalar {
    let m = k / 2;
    if k.is_even() {
        Scalar::term(big(BigInt::one()) / big(factorial(m)), m as i32)
    } else {
        // Γ(m + 3/2) = (2m+1)!! √π / 2^{m+1}
        let double_fact = (0..=m).fold(BigInt::one(), |acc, i| acc * BigInt::from(2 * i + 1));
        let two_pow = BigInt::one() << (m + 1);
        Scalar::term(BigRational::new(two_pow, double_fact), m as i32)
    }
}

/// Surface area of the unit sphere `S^k`: `(k+1) ω_{k+1}`.
pub fn alpha(k: u32) -> Scalar {
    omega(k + 1).scale(&int(k as i64 + 1))
}
