//! Sparse Laurent polynomials with exact rational coefficients.
//!
//! Exponents are stored in units of `q^{1/2}` ([`HalfExp`]), so factors such
//! as `q^{-n/2}` for odd `n` are represented exactly. Polynomials are kept in
//! canonical sparse form: a coefficient map with no stored zeros, which makes
//! structural equality coincide with polynomial equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rational(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical text form: `num/den`, or a plain integer when `den == 1`.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Parses the canonical text form. Non-canonical spellings (`2/4`, `3/1`,
/// `+1`, negative denominators) are rejected so that parsing followed by
/// formatting is the identity.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let parsed = match s.split_once('/') {
        None => Rational::from_integer(parse_bigint(s)?),
        Some((num, den)) => {
            let num = parse_bigint(num)?;
            let den = parse_bigint(den)?;
            if !den.is_positive() {
                return Err(Error::Parse(format!("denominator must be positive in {s:?}")));
            }
            Rational::new(num, den)
        }
    };
    if format_rational(&parsed) != s {
        return Err(Error::Parse(format!("rational {s:?} is not in lowest terms")));
    }
    Ok(parsed)
}

fn parse_bigint(s: &str) -> Result<BigInt> {
    s.parse::<BigInt>()
        .map_err(|e| Error::Parse(format!("bad integer {s:?}: {e}")))
}

/// Square root of a non-negative rational, if it is itself rational.
fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let num = x.numer().sqrt();
    let den = x.denom().sqrt();
    (&num * &num == *x.numer() && &den * &den == *x.denom()).then(|| Rational::new(num, den))
}

/// An exponent of `q` measured in half steps: `HalfExp::from_twice(3)` is `q^{3/2}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfExp(i64);

impl HalfExp {
    pub const ZERO: HalfExp = HalfExp(0);

    pub const fn from_twice(twice: i64) -> Self {
        HalfExp(twice)
    }

    /// The integral exponent `e`.
    pub const fn int(e: i64) -> Self {
        HalfExp(2 * e)
    }

    pub const fn twice(self) -> i64 {
        self.0
    }

    pub const fn is_integral(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn to_integer(self) -> Option<i64> {
        self.is_integral().then_some(self.0 / 2)
    }
}

impl Add for HalfExp {
    type Output = HalfExp;
    fn add(self, rhs: HalfExp) -> HalfExp {
        HalfExp(self.0 + rhs.0)
    }
}

impl Sub for HalfExp {
    type Output = HalfExp;
    fn sub(self, rhs: HalfExp) -> HalfExp {
        HalfExp(self.0 - rhs.0)
    }
}

impl Neg for HalfExp {
    type Output = HalfExp;
    fn neg(self) -> HalfExp {
        HalfExp(-self.0)
    }
}

impl Mul<i64> for HalfExp {
    type Output = HalfExp;
    fn mul(self, rhs: i64) -> HalfExp {
        HalfExp(self.0 * rhs)
    }
}

impl fmt::Display for HalfExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_integer() {
            Some(e) => write!(f, "{e}"),
            None => write!(f, "{}/2", self.0),
        }
    }
}

fn accumulate<K: Ord>(terms: &mut BTreeMap<K, Rational>, key: K, c: Rational) {
    if c.is_zero() {
        return;
    }
    match terms.entry(key) {
        std::collections::btree_map::Entry::Vacant(slot) => {
            slot.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut slot) => {
            *slot.get_mut() += c;
            if slot.get().is_zero() {
                slot.remove();
            }
        }
    }
}

/// A Laurent polynomial in `q^{1/2}` over the rationals.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<HalfExp, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, HalfExp::ZERO)
    }

    pub fn monomial(c: Rational, e: HalfExp) -> Self {
        Self::from_terms([(e, c)])
    }

    /// `q^e` with coefficient one.
    pub fn q_pow(e: HalfExp) -> Self {
        Self::monomial(Rational::one(), e)
    }

    /// Builds a polynomial from possibly repeated, possibly zero terms.
    pub fn from_terms<I: IntoIterator<Item = (HalfExp, Rational)>>(terms: I) -> Self {
        let mut out = BTreeMap::new();
        for (e, c) in terms {
            accumulate(&mut out, e, c);
        }
        LaurentPoly { terms: out }
    }

    /// Shorthand for integral exponents and coefficients: `[(exp, coeff), ...]`.
    pub fn from_int_terms(terms: &[(i64, i64)]) -> Self {
        Self::from_terms(terms.iter().map(|&(e, c)| (HalfExp::int(e), rational(c))))
    }

    /// `1 + q + ... + q^{len-1}`.
    pub fn geometric(len: u32) -> Self {
        Self::from_terms((0..i64::from(len)).map(|e| (HalfExp::int(e), Rational::one())))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (HalfExp, &Rational)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    /// Coefficient of `q^e`; exact zero when absent.
    pub fn coeff(&self, e: HalfExp) -> Rational {
        self.terms.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Option<HalfExp> {
        self.terms.keys().next_back().copied()
    }

    pub fn low_degree(&self) -> Option<HalfExp> {
        self.terms.keys().next().copied()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// Multiplication by `q^by`.
    pub fn shift(&self, by: HalfExp) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, v)| (*e + by, v.clone())).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// `q^center * a(1/q)`.
    pub fn reflect(&self, center: HalfExp) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, v)| (center - *e, v.clone())).collect(),
        }
    }

    /// True iff `a(q) = q^center * a(1/q)`.
    pub fn is_palindromic(&self, center: HalfExp) -> bool {
        self.terms
            .iter()
            .all(|(e, c)| self.terms.get(&(center - *e)) == Some(c))
    }

    /// Substitutes `q -> q^m`.
    pub fn dilate(&self, m: u32) -> Self {
        assert!(m > 0, "dilation factor must be positive");
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (*e * i64::from(m), v.clone()))
                .collect(),
        }
    }

    pub fn has_integral_exponents(&self) -> bool {
        self.terms.keys().all(|e| e.is_integral())
    }

    pub fn ensure_integral_exponents(&self, what: &str) -> Result<()> {
        match self.terms.keys().find(|e| !e.is_integral()) {
            None => Ok(()),
            Some(e) => Err(Error::ParityFailure(format!("{what} has a term q^{e}"))),
        }
    }

    /// Exact value at `q = x`.
    ///
    /// Half-integral exponents are evaluated through the rational square root
    /// of `x`, so `x` must be a non-negative rational square in that case.
    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        let Some(low) = self.low_degree() else {
            return Ok(Rational::zero());
        };
        if x.is_zero() {
            if low < HalfExp::ZERO {
                return Err(Error::Domain("q = 0 with a negative exponent".into()));
            }
            return Ok(self.coeff(HalfExp::ZERO));
        }
        let (base, step_of): (Rational, fn(HalfExp) -> i64) = if self.has_integral_exponents() {
            (x.clone(), |e| e.twice() / 2)
        } else {
            let root = rational_sqrt(x).ok_or_else(|| {
                Error::Domain(format!("q = {x} has no rational square root"))
            })?;
            (root, HalfExp::twice)
        };
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let k = i32::try_from(step_of(*e))
                .map_err(|_| Error::Domain(format!("exponent {e} out of range")))?;
            total += c * base.pow(k);
        }
        Ok(total)
    }

    /// Exact quotient `self / divisor` in the Laurent ring, failing when a
    /// nonzero remainder is left.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Result<Self> {
        let (Some(d_top), Some(d_low)) = (divisor.degree(), divisor.low_degree()) else {
            return Err(Error::DivisionFailure("division by zero".into()));
        };
        let Some(a_low) = self.low_degree() else {
            return Ok(Self::zero());
        };
        // Any exact quotient has its lowest term at a_low - d_low.
        let q_low = a_low - d_low;
        let lead = divisor.terms[&d_top].clone();
        let mut rem = self.clone();
        let mut quotient = BTreeMap::new();
        while let Some(r_top) = rem.degree() {
            let e = r_top - d_top;
            if e < q_low {
                return Err(Error::DivisionFailure(format!(
                    "({self}) is not divisible by ({divisor})"
                )));
            }
            let c = &rem.terms[&r_top] / &lead;
            for (de, dc) in &divisor.terms {
                accumulate(&mut rem.terms, *de + e, -(dc * &c));
            }
            quotient.insert(e, c);
        }
        Ok(LaurentPoly { terms: quotient })
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.terms.clone();
        for (e, c) in &rhs.terms {
            accumulate(&mut out, *e, c.clone());
        }
        LaurentPoly { terms: out }
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.terms.clone();
        for (e, c) in &rhs.terms {
            accumulate(&mut out, *e, -c.clone());
        }
        LaurentPoly { terms: out }
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                accumulate(&mut out, *ea + *eb, ca * cb);
            }
        }
        LaurentPoly { terms: out }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned_ops {
    ($ty:ty) => {
        impl Add for $ty {
            type Output = $ty;
            fn add(self, rhs: $ty) -> $ty {
                &self + &rhs
            }
        }
        impl Sub for $ty {
            type Output = $ty;
            fn sub(self, rhs: $ty) -> $ty {
                &self - &rhs
            }
        }
        impl Mul for $ty {
            type Output = $ty;
            fn mul(self, rhs: $ty) -> $ty {
                &self * &rhs
            }
        }
        impl Neg for $ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                -&self
            }
        }
    };
}

forward_owned_ops!(LaurentPoly);
forward_owned_ops!(BiLaurentPoly);

fn write_coeff(f: &mut fmt::Formatter<'_>, first: bool, c: &Rational, has_var: bool) -> fmt::Result {
    let sign = if c.is_negative() { "-" } else { "+" };
    if first {
        if c.is_negative() {
            f.write_str("-")?;
        }
    } else {
        write!(f, " {sign} ")?;
    }
    let abs = c.abs();
    if !(has_var && abs.is_one()) {
        write!(f, "{abs}")?;
    }
    Ok(())
}

fn write_var(f: &mut fmt::Formatter<'_>, var: char, e: HalfExp) -> fmt::Result {
    match e.to_integer() {
        Some(0) => Ok(()),
        Some(1) => write!(f, "{var}"),
        Some(k) => write!(f, "{var}^{k}"),
        None => write!(f, "{var}^({e})"),
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            write_coeff(f, i == 0, c, *e != HalfExp::ZERO)?;
            write_var(f, 'q', *e)?;
        }
        Ok(())
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            seq.serialize_element(&(e.twice(), format_rational(c)))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<(i64, String)> = Vec::deserialize(deserializer)?;
        let mut terms = BTreeMap::new();
        let mut prev: Option<i64> = None;
        for (twice, c) in raw {
            if prev.is_some_and(|p| p >= twice) {
                return Err(de::Error::custom("exponents must be strictly increasing"));
            }
            prev = Some(twice);
            let c = parse_rational(&c).map_err(de::Error::custom)?;
            if c.is_zero() {
                return Err(de::Error::custom("zero coefficients are not stored"));
            }
            terms.insert(HalfExp::from_twice(twice), c);
        }
        Ok(LaurentPoly { terms })
    }
}

/// A Laurent polynomial in two variables `u`, `v`, keyed by `(u-exp, v-exp)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BiLaurentPoly {
    terms: BTreeMap<(HalfExp, HalfExp), Rational>,
}

impl BiLaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Rational::one(), HalfExp::ZERO, HalfExp::ZERO)
    }

    pub fn monomial(c: Rational, u: HalfExp, v: HalfExp) -> Self {
        Self::from_terms([((u, v), c)])
    }

    pub fn from_terms<I: IntoIterator<Item = ((HalfExp, HalfExp), Rational)>>(terms: I) -> Self {
        let mut out = BTreeMap::new();
        for (key, c) in terms {
            accumulate(&mut out, key, c);
        }
        BiLaurentPoly { terms: out }
    }

    /// Embeds a one-variable polynomial as a polynomial in `u`.
    pub fn in_u(p: &LaurentPoly) -> Self {
        Self::from_terms(p.terms().map(|(e, c)| ((e, HalfExp::ZERO), c.clone())))
    }

    /// Embeds a one-variable polynomial as a polynomial in `v`.
    pub fn in_v(p: &LaurentPoly) -> Self {
        Self::from_terms(p.terms().map(|(e, c)| ((HalfExp::ZERO, e), c.clone())))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((HalfExp, HalfExp), &Rational)> + '_ {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn coeff(&self, u: HalfExp, v: HalfExp) -> Rational {
        self.terms.get(&(u, v)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, v)| (*k, v * c)))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Substitutes `u = v = q`.
    pub fn specialize_diagonal(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms.iter().map(|((u, v), c)| (*u + *v, c.clone())))
    }
}

impl<'a> Add<&'a BiLaurentPoly> for &'a BiLaurentPoly {
    type Output = BiLaurentPoly;
    fn add(self, rhs: &BiLaurentPoly) -> BiLaurentPoly {
        let mut out = self.terms.clone();
        for (k, c) in &rhs.terms {
            accumulate(&mut out, *k, c.clone());
        }
        BiLaurentPoly { terms: out }
    }
}

impl<'a> Sub<&'a BiLaurentPoly> for &'a BiLaurentPoly {
    type Output = BiLaurentPoly;
    fn sub(self, rhs: &BiLaurentPoly) -> BiLaurentPoly {
        let mut out = self.terms.clone();
        for (k, c) in &rhs.terms {
            accumulate(&mut out, *k, -c.clone());
        }
        BiLaurentPoly { terms: out }
    }
}

impl<'a> Mul<&'a BiLaurentPoly> for &'a BiLaurentPoly {
    type Output = BiLaurentPoly;
    fn mul(self, rhs: &BiLaurentPoly) -> BiLaurentPoly {
        let mut out = BTreeMap::new();
        for ((ua, va), ca) in &self.terms {
            for ((ub, vb), cb) in &rhs.terms {
                accumulate(&mut out, (*ua + *ub, *va + *vb), ca * cb);
            }
        }
        BiLaurentPoly { terms: out }
    }
}

impl Neg for &BiLaurentPoly {
    type Output = BiLaurentPoly;
    fn neg(self) -> BiLaurentPoly {
        BiLaurentPoly {
            terms: self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect(),
        }
    }
}

impl fmt::Display for BiLaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        // Highest u-degree first reads more naturally for mirror-symmetric data.
        for (i, ((u, v), c)) in self.terms.iter().rev().enumerate() {
            let has_var = *u != HalfExp::ZERO || *v != HalfExp::ZERO;
            write_coeff(f, i == 0, c, has_var)?;
            write_var(f, 'u', *u)?;
            write_var(f, 'v', *v)?;
        }
        Ok(())
    }
}

impl Serialize for BiLaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for ((u, v), c) in &self.terms {
            seq.serialize_element(&((u.twice(), v.twice()), format_rational(c)))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for BiLaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<((i64, i64), String)> = Vec::deserialize(deserializer)?;
        let mut terms = BTreeMap::new();
        let mut prev: Option<(i64, i64)> = None;
        for (key, c) in raw {
            if prev.is_some_and(|p| p >= key) {
                return Err(de::Error::custom("exponent pairs must be strictly increasing"));
            }
            prev = Some(key);
            let c = parse_rational(&c).map_err(de::Error::custom)?;
            if c.is_zero() {
                return Err(de::Error::custom("zero coefficients are not stored"));
            }
            terms.insert((HalfExp::from_twice(key.0), HalfExp::from_twice(key.1)), c);
        }
        Ok(BiLaurentPoly { terms })
    }
}
