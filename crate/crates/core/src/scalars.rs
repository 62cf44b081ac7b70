//! Exact parameter arithmetic.
//!
//! A [`Surd`] is an element of a real multi-quadratic field
//! `Q(sqrt d1, ..., sqrt dk)` stored as a map from squarefree radicand to
//! rational coefficient (radicand `1` is the rational part).  An
//! [`ExactScalar`] adds a rational-affine combination of opaque generic
//! symbols on top of a surd number part.  Generic symbols are jointly
//! transcendental: no lattice test involving one ever succeeds.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Trial-division bound used when splitting square factors off big radicands.
const TRIAL_BOUND: u64 = 1 << 21;

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn integer(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Writes `n = root^2 * d` with `d` squarefree.  Returns `None` when the
/// squarefree part does not fit a `u64` or cannot be certified.
fn split_square(n: &BigUint) -> Option<(BigUint, u64)> {
    if n.is_zero() {
        return Some((BigUint::zero(), 1));
    }
    let mut rest = n.clone();
    let mut root = BigUint::one();
    let mut free = BigUint::one();
    let mut p: u64 = 2;
    while p < TRIAL_BOUND {
        let pb = BigUint::from(p);
        if &pb * &pb * &pb > rest {
            break;
        }
        let mut e = 0u32;
        while (&rest % &pb).is_zero() {
            rest /= &pb;
            e += 1;
        }
        if e > 0 {
            root *= pb.pow(e / 2);
            if e % 2 == 1 {
                free *= &pb;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > BigUint::one() {
        // rest has no prime factor below p; if rest < p^3 it has at most two.
        let s = rest.sqrt();
        if &s * &s == rest {
            root *= s;
        } else {
            let pb = BigUint::from(p);
            if p >= TRIAL_BOUND && rest >= &pb * &pb * &pb {
                return None;
            }
            free *= rest;
        }
    }
    free.to_u64().map(|d| (root, d))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `sqrt(a) * sqrt(b) = factor * sqrt(radicand)` for squarefree `a`, `b`.
fn radicand_product(a: u64, b: u64) -> (u64, u64) {
    let g = a.gcd(&b);
    let radicand = (a / g)
        .checked_mul(b / g)
        .expect("radicand product exceeds u64");
    (g, radicand)
}

/// Element of a real multi-quadratic extension of the rationals.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Surd {
    terms: BTreeMap<u64, Rational>,
}

impl Surd {
    pub fn zero() -> Self {
        Surd::default()
    }

    pub fn one() -> Self {
        Surd::from_rational(Rational::one())
    }

    pub fn from_rational(q: Rational) -> Self {
        let mut s = Surd::zero();
        s.accumulate(1, q);
        s
    }

    pub fn from_integer(n: i64) -> Self {
        Surd::from_rational(integer(n))
    }

    /// `coefficient * sqrt(radicand)` for any positive integer radicand.
    pub fn sqrt_term(coefficient: Rational, radicand: u64) -> Self {
        assert!(radicand > 0, "radicand must be positive");
        let (root, free) = split_square(&BigUint::from(radicand)).expect("u64 radicand");
        let mut s = Surd::zero();
        s.accumulate(free, coefficient * Rational::from_integer(BigInt::from(root)));
        s
    }

    fn accumulate(&mut self, radicand: u64, q: Rational) {
        if q.is_zero() {
            return;
        }
        let entry = self.terms.entry(radicand).or_insert_with(Rational::zero);
        *entry += q;
        if entry.is_zero() {
            self.terms.remove(&radicand);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&1).is_some_and(|q| q.is_one())
    }

    pub fn is_rational(&self) -> bool {
        self.terms.keys().all(|&d| d == 1)
    }

    pub fn to_rational(&self) -> Option<Rational> {
        if self.is_rational() {
            Some(self.rational_part())
        } else {
            None
        }
    }

    pub fn rational_part(&self) -> Rational {
        self.terms.get(&1).cloned().unwrap_or_else(Rational::zero)
    }

    /// `(radicand, coefficient)` pairs in increasing radicand order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &Rational)> {
        self.terms.iter().map(|(d, q)| (*d, q))
    }

    pub fn scale(&self, q: &Rational) -> Surd {
        if q.is_zero() {
            return Surd::zero();
        }
        Surd {
            terms: self.terms.iter().map(|(d, c)| (*d, c * q)).collect(),
        }
    }

    /// Flips the sign of every term whose radicand is divisible by `p`.
    fn conjugate_at(&self, p: u64) -> Surd {
        Surd {
            terms: self
                .terms
                .iter()
                .map(|(d, c)| (*d, if d % p == 0 { -c.clone() } else { c.clone() }))
                .collect(),
        }
    }

    /// Multiplicative inverse by iterated conjugation over the primes
    /// dividing the radicands.
    pub fn inverse(&self) -> Option<Surd> {
        if self.is_zero() {
            return None;
        }
        let primes: BTreeSet<u64> = self
            .terms
            .keys()
            .flat_map(|&d| prime_factors(d))
            .collect();
        let mut numerator = Surd::one();
        let mut x = self.clone();
        for p in primes {
            let c = x.conjugate_at(p);
            numerator = &numerator * &c;
            x = &x * &c;
        }
        let r = x.to_rational().expect("conjugation clears every radicand");
        Some(numerator.scale(&r.recip()))
    }

    pub fn to_f64(&self) -> f64 {
        // smallest magnitudes summed first
        let mut parts: Vec<f64> = self
            .terms
            .iter()
            .map(|(d, q)| q.to_f64().unwrap_or(f64::NAN) * (*d as f64).sqrt())
            .collect();
        parts.sort_by(|a, b| b.abs().total_cmp(&a.abs()));
        parts.iter().rev().sum()
    }
}

impl Add<&Surd> for &Surd {
    type Output = Surd;
    fn add(self, rhs: &Surd) -> Surd {
        let mut out = self.clone();
        for (d, q) in &rhs.terms {
            out.accumulate(*d, q.clone());
        }
        out
    }
}

impl Sub<&Surd> for &Surd {
    type Output = Surd;
    fn sub(self, rhs: &Surd) -> Surd {
        let mut out = self.clone();
        for (d, q) in &rhs.terms {
            out.accumulate(*d, -q.clone());
        }
        out
    }
}

impl Neg for &Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd {
            terms: self.terms.iter().map(|(d, q)| (*d, -q.clone())).collect(),
        }
    }
}

impl Mul<&Surd> for &Surd {
    type Output = Surd;
    fn mul(self, rhs: &Surd) -> Surd {
        let mut out = Surd::zero();
        for (a, p) in &self.terms {
            for (b, q) in &rhs.terms {
                let (factor, radicand) = radicand_product(*a, *b);
                out.accumulate(radicand, p * q * integer(factor as i64));
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($ty:ty, $tr:ident, $method:ident) => {
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Surd, Add, add);
forward_owned!(Surd, Sub, sub);
forward_owned!(Surd, Mul, mul);

impl Neg for Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        -&self
    }
}

fn fmt_terms(f: &mut fmt::Formatter<'_>, terms: &[(Rational, Option<String>)]) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (i, (q, atom)) in terms.iter().enumerate() {
        let negative = q.is_negative();
        let mag = q.abs();
        if i == 0 {
            if negative {
                write!(f, "-")?;
            }
        } else if negative {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        match atom {
            None => write!(f, "{}", mag)?,
            Some(a) if mag.is_one() => write!(f, "{}", a)?,
            Some(a) => write!(f, "{}*{}", mag, a)?,
        }
    }
    Ok(())
}

impl Surd {
    fn display_terms(&self) -> Vec<(Rational, Option<String>)> {
        self.terms
            .iter()
            .map(|(d, q)| {
                let atom = if *d == 1 {
                    None
                } else {
                    Some(format!("sqrt({})", d))
                };
                (q.clone(), atom)
            })
            .collect()
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, &self.display_terms())
    }
}

/// Opaque transcendental constant.  Named symbols come from user input
/// (`@alpha`); derived symbols stand for the principal square root of an
/// expression that itself contains generics.
#[derive(Clone, Debug)]
pub struct Symbol {
    name: Arc<str>,
    radicand: Option<Arc<ExactScalar>>,
}

impl Symbol {
    pub fn named(name: &str) -> Self {
        Symbol {
            name: Arc::from(format!("@{}", name.trim_start_matches('@'))),
            radicand: None,
        }
    }

    fn sqrt_of(radicand: ExactScalar) -> Self {
        Symbol {
            name: Arc::from(format!("sqrt({})", radicand)),
            radicand: Some(Arc::new(radicand)),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// For derived square-root symbols, the value being rooted.
    pub fn radicand(&self) -> Option<&ExactScalar> {
        self.radicand.as_deref()
    }
}

impl PartialEq for Symbol {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
    }
}

impl Eq for Symbol {}

impl Hash for Symbol {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.name.hash(state)
    }
}

impl PartialOrd for Symbol {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Symbol {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.name.cmp(&other.name)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScalarKind {
    Number,
    Generic,
    GenericCombination,
}

/// A Painleve parameter: a surd number plus a rational-affine combination of
/// generic symbols.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ExactScalar {
    number: Surd,
    generic: BTreeMap<Symbol, Rational>,
}

impl ExactScalar {
    pub fn zero() -> Self {
        ExactScalar::default()
    }

    pub fn one() -> Self {
        ExactScalar::from(Surd::one())
    }

    pub fn from_rational(q: Rational) -> Self {
        ExactScalar::from(Surd::from_rational(q))
    }

    pub fn from_integer(n: i64) -> Self {
        ExactScalar::from_rational(integer(n))
    }

    pub fn generic(name: &str) -> Self {
        ExactScalar::from_symbol(Symbol::named(name))
    }

    pub fn from_symbol(symbol: Symbol) -> Self {
        let mut generic = BTreeMap::new();
        generic.insert(symbol, Rational::one());
        ExactScalar {
            number: Surd::zero(),
            generic,
        }
    }

    pub fn kind(&self) -> ScalarKind {
        if self.generic.is_empty() {
            ScalarKind::Number
        } else if self.number.is_zero()
            && self.generic.len() == 1
            && self.generic.values().all(|q| q.is_one())
        {
            ScalarKind::Generic
        } else {
            ScalarKind::GenericCombination
        }
    }

    pub fn number_part(&self) -> &Surd {
        &self.number
    }

    pub fn generic_terms(&self) -> impl Iterator<Item = (&Symbol, &Rational)> {
        self.generic.iter()
    }

    pub fn symbols(&self) -> impl Iterator<Item = &Symbol> {
        self.generic.keys()
    }

    pub fn has_generics(&self) -> bool {
        !self.generic.is_empty()
    }

    pub fn is_number(&self) -> bool {
        self.generic.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.generic.is_empty() && self.number.is_zero()
    }

    pub fn as_surd(&self) -> Option<&Surd> {
        self.is_number().then_some(&self.number)
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.as_surd().and_then(Surd::to_rational)
    }

    pub fn scale(&self, q: &Rational) -> ExactScalar {
        if q.is_zero() {
            return ExactScalar::zero();
        }
        ExactScalar {
            number: self.number.scale(q),
            generic: self.generic.iter().map(|(s, c)| (s.clone(), c * q)).collect(),
        }
    }

    fn accumulate_generic(&mut self, symbol: &Symbol, q: Rational) {
        if q.is_zero() {
            return;
        }
        let entry = self
            .generic
            .entry(symbol.clone())
            .or_insert_with(Rational::zero);
        *entry += q;
        if entry.is_zero() {
            self.generic.remove(symbol);
        }
    }

    /// Exact product.  At most one factor may contain generic symbols; a
    /// generic part can only be scaled by a rational.
    pub fn try_mul(&self, rhs: &ExactScalar) -> Result<ExactScalar> {
        match (self.has_generics(), rhs.has_generics()) {
            (false, false) => Ok(ExactScalar::from(&self.number * &rhs.number)),
            (true, true) => Err(Error::UnsupportedGenericProduct),
            (true, false) => self.times_number(&rhs.number),
            (false, true) => rhs.times_number(&self.number),
        }
    }

    fn times_number(&self, n: &Surd) -> Result<ExactScalar> {
        let number = &self.number * n;
        if self.generic.is_empty() {
            return Ok(ExactScalar::from(number));
        }
        let q = n.to_rational().ok_or(Error::UnsupportedGenericProduct)?;
        let mut out = self.scale(&q);
        out.number = number;
        Ok(out)
    }

    pub fn inverse(&self) -> Result<ExactScalar> {
        if self.has_generics() {
            return Err(Error::UnsupportedGenericProduct);
        }
        self.number
            .inverse()
            .map(ExactScalar::from)
            .ok_or(Error::DivisionByZero)
    }

    pub fn try_div(&self, rhs: &ExactScalar) -> Result<ExactScalar> {
        self.try_mul(&rhs.inverse()?)
    }

    /// True iff `self` is a plain rational `q` with `(q - offset) / modulus`
    /// an integer.  Any surd or generic content gives `false`.
    pub fn is_in_lattice(&self, offset: &Rational, modulus: u64) -> bool {
        assert!(modulus > 0, "lattice modulus must be positive");
        match self.as_rational() {
            Some(q) => ((q - offset) / integer(modulus as i64)).is_integer(),
            None => false,
        }
    }

    pub fn is_integer(&self) -> bool {
        self.is_in_lattice(&Rational::zero(), 1)
    }

    /// Principal square root, staying inside the representation:
    /// non-negative rationals give surds; expressions with generic content
    /// give a rational multiple of a derived square-root symbol.
    pub fn principal_sqrt(&self) -> Result<ExactScalar> {
        if self.is_number() {
            return match self.number.to_rational() {
                Some(q) => sqrt_rational(&q),
                None => Err(Error::UnsupportedRadicand(self.to_string())),
            };
        }
        // Split off the rational square factor of the leading generic
        // coefficient so that sqrt(8@a) and 2*sqrt(2@a) share a symbol.
        let lead = self.generic.values().next().expect("has generics").abs();
        let root = sqrt_rational(&lead)?;
        let square_free = root
            .number
            .terms()
            .next()
            .map(|(_, q)| q.clone())
            .expect("nonzero root");
        let inner = self.scale(&(square_free.clone() * &square_free).recip());
        Ok(ExactScalar::from_symbol(Symbol::sqrt_of(inner)).scale(&square_free))
    }

    /// `self * self`, also supported for `k*sqrt(P) + q` with a derived
    /// square-root symbol and rational `q`.
    pub fn square(&self) -> Result<ExactScalar> {
        if let Ok(sq) = self.try_mul(self) {
            return Ok(sq);
        }
        let mut terms = self.generic.iter();
        let (sym, k) = terms.next().expect("has generics");
        let radicand = match (terms.next(), sym.radicand()) {
            (None, Some(r)) => r,
            _ => return Err(Error::UnsupportedGenericProduct),
        };
        let q = self
            .number
            .to_rational()
            .ok_or(Error::UnsupportedGenericProduct)?;
        let linear = ExactScalar::from_symbol(sym.clone()).scale(&(k * &q * integer(2)));
        Ok(&(&radicand.scale(&(k * k)) + &linear) + &ExactScalar::from_rational(&q * &q))
    }

    pub fn to_f64(&self) -> Result<f64> {
        match self.generic.keys().next() {
            Some(s) => Err(Error::GenericParameter(s.to_string())),
            None => Ok(self.number.to_f64()),
        }
    }

    pub fn shares_symbol_with(&self, other: &ExactScalar) -> bool {
        self.generic.keys().any(|s| other.generic.contains_key(s))
    }

    /// Named symbols, including those under derived square roots.
    pub fn named_symbols(&self) -> BTreeSet<Symbol> {
        let mut out = BTreeSet::new();
        for s in self.generic.keys() {
            match s.radicand() {
                Some(r) => out.extend(r.named_symbols()),
                None => {
                    out.insert(s.clone());
                }
            }
        }
        out
    }

    /// Replaces named symbols by the given values; derived square roots
    /// become principal roots of their specialized radicands.
    pub fn specialize(&self, values: &BTreeMap<Symbol, ExactScalar>) -> Result<ExactScalar> {
        let mut out = ExactScalar::from(self.number.clone());
        for (s, q) in &self.generic {
            let value = match (s.radicand(), values.get(s)) {
                (Some(r), _) => r.specialize(values)?.principal_sqrt()?,
                (None, Some(v)) => v.clone(),
                (None, None) => ExactScalar::from_symbol(s.clone()),
            };
            out = &out + &value.scale(q);
        }
        Ok(out)
    }
}

/// Exact principal square root of a non-negative rational:
/// `q = (a/b)^2 * d` gives `(a/b) * sqrt(d)`.
pub fn sqrt_rational(q: &Rational) -> Result<ExactScalar> {
    if q.is_negative() {
        return Err(Error::NegativeRadicand(q.to_string()));
    }
    if q.is_zero() {
        return Ok(ExactScalar::zero());
    }
    let num = q.numer().to_biguint().expect("non-negative");
    let den = q.denom().to_biguint().expect("positive");
    // sqrt(n/m) = sqrt(n*m)/m
    let (root, free) =
        split_square(&(&num * &den)).ok_or_else(|| Error::UnsupportedRadicand(q.to_string()))?;
    let coefficient = Rational::new(
        BigInt::from_biguint(Sign::Plus, root),
        BigInt::from_biguint(Sign::Plus, den),
    );
    let mut s = Surd::zero();
    s.accumulate(free, coefficient);
    Ok(ExactScalar::from(s))
}

impl From<Surd> for ExactScalar {
    fn from(number: Surd) -> Self {
        ExactScalar {
            number,
            generic: BTreeMap::new(),
        }
    }
}

impl From<Rational> for ExactScalar {
    fn from(q: Rational) -> Self {
        ExactScalar::from_rational(q)
    }
}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        ExactScalar::from_integer(n)
    }
}

impl Add<&ExactScalar> for &ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &ExactScalar) -> ExactScalar {
        let mut out = ExactScalar {
            number: &self.number + &rhs.number,
            generic: self.generic.clone(),
        };
        for (s, q) in &rhs.generic {
            out.accumulate_generic(s, q.clone());
        }
        out
    }
}

impl Sub<&ExactScalar> for &ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: &ExactScalar) -> ExactScalar {
        self + &(-rhs)
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar {
            number: -&self.number,
            generic: self
                .generic
                .iter()
                .map(|(s, q)| (s.clone(), -q.clone()))
                .collect(),
        }
    }
}

forward_owned!(ExactScalar, Add, add);
forward_owned!(ExactScalar, Sub, sub);

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -&self
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(Rational, Option<String>)> = self
            .generic
            .iter()
            .map(|(s, q)| (q.clone(), Some(s.to_string())))
            .collect();
        terms.extend(self.number.display_terms());
        fmt_terms(f, &terms)
    }
}

impl FromStr for ExactScalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        crate::parse::parse_scalar(s)
    }
}

impl serde::Serialize for ExactScalar {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for ExactScalar {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}
