//! Multivariate rational functions with exact total differentiation.
//!
//! Polynomials are sparse maps from monomial to [`Surd`] coefficient under
//! graded-lexicographic order.  Generic parameters appear as ordinary
//! polynomial variables ([`Var::Param`]), so the coefficient ring is always
//! a field and GCDs are computed by the recursive primitive subresultant
//! PRS.  A [`DiffRatFunc`] is kept reduced with a monic denominator, which
//! makes structural equality coincide with equality of rational functions.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::Zero;

use crate::equations::PainleveEquation;
use crate::error::{Error, Result};
use crate::scalars::{integer, ExactScalar, Rational, Surd, Symbol};

/// A differential indeterminate.  `t` is the independent variable, `Dep`
/// is the `order`-th derivative of a dependent variable, and `Param` is a
/// generic parameter (a constant).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    T,
    Dep { name: Arc<str>, order: u32 },
    Param(Symbol),
}

impl Var {
    pub fn dep(name: &str, order: u32) -> Var {
        Var::Dep {
            name: Arc::from(name),
            order,
        }
    }

    pub fn order_of(&self, dependent: &str) -> Option<u32> {
        match self {
            Var::Dep { name, order } if &**name == dependent => Some(*order),
            _ => None,
        }
    }

    /// `d/dt` of this variable.
    fn derivative(&self) -> VarDerivative {
        match self {
            Var::T => VarDerivative::One,
            Var::Dep { name, order } => VarDerivative::Var(Var::Dep {
                name: name.clone(),
                order: order + 1,
            }),
            Var::Param(_) => VarDerivative::Zero,
        }
    }
}

enum VarDerivative {
    Zero,
    One,
    Var(Var),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::T => write!(f, "t"),
            Var::Dep { name, order } => {
                write!(f, "{}", name)?;
                for _ in 0..*order {
                    write!(f, "'")?;
                }
                Ok(())
            }
            Var::Param(s) => write!(f, "{}", s),
        }
    }
}

/// Power product with exponents sorted by variable.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var, e: u32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(v, e)])
        }
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn degree_in(&self, v: &Var) -> u32 {
        self.0
            .binary_search_by(|(w, _)| w.cmp(v))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    fn merge<F: Fn(u32, u32) -> u32>(&self, other: &Monomial, op: F) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            let ord = match (self.0.get(i), other.0.get(j)) {
                (Some(a), Some(b)) => a.0.cmp(&b.0),
                (Some(_), None) => Ordering::Less,
                (None, _) => Ordering::Greater,
            };
            let (v, e) = match ord {
                Ordering::Less => {
                    i += 1;
                    (self.0[i - 1].0.clone(), op(self.0[i - 1].1, 0))
                }
                Ordering::Greater => {
                    j += 1;
                    (other.0[j - 1].0.clone(), op(0, other.0[j - 1].1))
                }
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                    (self.0[i - 1].0.clone(), op(self.0[i - 1].1, other.0[j - 1].1))
                }
            };
            if e > 0 {
                out.push((v, e));
            }
        }
        Monomial(out)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.merge(other, |a, b| a + b)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().all(|(v, e)| other.degree_in(v) >= *e)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(self.merge(other, |a, b| a - b))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        self.merge(other, |a, b| a.min(b))
    }

    fn without(&self, v: &Var) -> Monomial {
        Monomial(self.0.iter().filter(|(w, _)| w != v).cloned().collect())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Graded lexicographic; earlier variables (in `Var` order) weigh more.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), other.0.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(a), Some(b)) => match a.0.cmp(&b.0) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match a.1.cmp(&b.1) {
                        Ordering::Equal => {
                            i += 1;
                            j += 1;
                        }
                        ord => return ord,
                    },
                },
            }
        }
    }
}

/// Sparse multivariate polynomial over the surd field.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<Monomial, Surd>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Surd::one())
    }

    pub fn constant(c: Surd) -> Self {
        Poly::term(Monomial::one(), c)
    }

    pub fn term(m: Monomial, c: Surd) -> Self {
        let mut p = Poly::zero();
        p.accumulate(m, c);
        p
    }

    pub fn var(v: Var) -> Self {
        Poly::term(Monomial::var(v, 1), Surd::one())
    }

    fn accumulate(&mut self, m: Monomial, c: Surd) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing = &*existing + &c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
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

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Surd)> {
        self.terms.iter()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn as_constant(&self) -> Option<Surd> {
        if self.is_zero() {
            Some(Surd::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn leading(&self) -> Option<(&Monomial, &Surd)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().map(|(v, _)| v.clone()))
            .collect()
    }

    pub fn degree_in(&self, v: &Var) -> u32 {
        self.terms.keys().map(|m| m.degree_in(v)).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Surd) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                out = &out * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        out
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.inverse().expect("nonzero")),
        }
    }

    /// Coefficients with respect to `v`, as polynomials free of `v`.
    pub fn coefficients_in(&self, v: &Var) -> BTreeMap<u32, Poly> {
        let mut out: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.degree_in(v);
            out.entry(e).or_default().accumulate(m.without(v), c.clone());
        }
        out
    }

    fn leading_coefficient_in(&self, v: &Var) -> (u32, Poly) {
        let d = self.degree_in(v);
        let mut lc = Poly::zero();
        for (m, c) in &self.terms {
            if m.degree_in(v) == d {
                lc.accumulate(m.without(v), c.clone());
            }
        }
        (d, lc)
    }

    /// Exact quotient `self / divisor`, `None` if the division leaves a
    /// remainder.
    pub fn exact_div(&self, divisor: &Poly) -> Option<Poly> {
        let (lm, lc) = divisor.leading()?;
        if let Some(c) = divisor.as_constant() {
            return Some(self.scale(&c.inverse()?));
        }
        let lc_inv = lc.inverse()?;
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((rm, rc)) = rem.leading() {
            let m = rm.div(lm)?;
            let c = rc * &lc_inv;
            rem = &rem - &divisor.mul_monomial(&m).scale(&c);
            quot.accumulate(m, c);
        }
        Some(quot)
    }

    /// GCD of the coefficients with respect to `v`.
    pub fn content_in(&self, v: &Var) -> Poly {
        let mut g = Poly::zero();
        for c in self.coefficients_in(v).into_values() {
            g = gcd(&g, &c);
            if g.is_constant() {
                return Poly::one();
            }
        }
        g
    }

    /// `d/dt` with the chain rule over dependent-variable derivatives.
    pub fn total_derivative(&self) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            for (i, (v, e)) in m.0.iter().enumerate() {
                let dv = v.derivative();
                if let VarDerivative::Zero = dv {
                    continue;
                }
                let mut rest = m.0.clone();
                if *e == 1 {
                    rest.remove(i);
                } else {
                    rest[i].1 -= 1;
                }
                let mut mono = Monomial(rest);
                if let VarDerivative::Var(next) = dv {
                    mono = mono.mul(&Monomial::var(next, 1));
                }
                out.accumulate(mono, c.scale(&integer(*e as i64)));
            }
        }
        out
    }

    pub fn partial(&self, v: &Var) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.degree_in(v);
            if e == 0 {
                continue;
            }
            let mono = m
                .div(&Monomial::var(v.clone(), 1))
                .expect("variable present");
            out.accumulate(mono, c.scale(&integer(e as i64)));
        }
        out
    }

    /// Substitutes `v = num/den`; returns `(N, k)` with `self = N / den^k`.
    fn substitute(&self, v: &Var, num: &Poly, den: &Poly) -> (Poly, u32) {
        let coeffs = self.coefficients_in(v);
        let k = coeffs.keys().copied().max().unwrap_or(0);
        let mut num_pows = vec![Poly::one()];
        let mut den_pows = vec![Poly::one()];
        for i in 1..=k as usize {
            num_pows.push(&num_pows[i - 1] * num);
            den_pows.push(&den_pows[i - 1] * den);
        }
        let mut out = Poly::zero();
        for (e, c) in coeffs {
            let e = e as usize;
            out = &out + &(&c * &(&num_pows[e] * &den_pows[k as usize - e]));
        }
        (out, k)
    }

    /// Exact evaluation; variables missing from `point` make this `None`.
    pub fn eval<F: Fn(&Var) -> Option<Surd>>(&self, point: &F) -> Option<Surd> {
        let mut cache: BTreeMap<&Var, Surd> = BTreeMap::new();
        let mut total = Surd::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (v, e) in &m.0 {
                if !cache.contains_key(v) {
                    cache.insert(v, point(v)?);
                }
                let x = &cache[v];
                for _ in 0..*e {
                    term = &term * x;
                }
            }
            total = &total + &term;
        }
        Some(total)
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (mut out, other) = if self.len() >= rhs.len() {
            (self.clone(), rhs)
        } else {
            (rhs.clone(), self)
        };
        for (m, c) in &other.terms {
            out.accumulate(m.clone(), c.clone());
        }
        out
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.accumulate(m.clone(), -c);
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (a, p) in &self.terms {
            for (b, q) in &rhs.terms {
                out.accumulate(a.mul(b), p * q);
            }
        }
        out
    }
}

/// Pseudo-remainder of `a` by `b` with respect to `v`.
fn pseudo_remainder(a: &Poly, b: &Poly, v: &Var) -> Poly {
    let (db, lb) = b.leading_coefficient_in(v);
    let da = a.degree_in(v);
    let mut rem = a.clone();
    let mut e = da + 1 - db;
    while !rem.is_zero() {
        let (dr, lr) = rem.leading_coefficient_in(v);
        if dr < db {
            break;
        }
        let shift = Poly::term(Monomial::var(v.clone(), dr - db), Surd::one());
        rem = &(&lb * &rem) - &(&(&lr * &shift) * b);
        e -= 1;
    }
    &rem * &lb.pow(e)
}

fn primitive_part_in(p: &Poly, v: &Var) -> Poly {
    let c = p.content_in(v);
    p.exact_div(&c).expect("content divides")
}

/// GCD of two polynomials primitive in `v`, both of positive degree in `v`.
fn subresultant_gcd(a: Poly, b: Poly, v: &Var) -> Poly {
    let (mut a, mut b) = if a.degree_in(v) >= b.degree_in(v) {
        (a, b)
    } else {
        (b, a)
    };
    let mut g = Poly::one();
    let mut h = Poly::one();
    loop {
        let delta = a.degree_in(v) - b.degree_in(v);
        let r = pseudo_remainder(&a, &b, v);
        if r.is_zero() {
            return primitive_part_in(&b, v);
        }
        if r.degree_in(v) == 0 {
            return Poly::one();
        }
        let divisor = &g * &h.pow(delta);
        a = b;
        b = r.exact_div(&divisor).expect("subresultant division is exact");
        g = a.leading_coefficient_in(v).1;
        h = match delta {
            0 => h,
            1 => g.clone(),
            d => g
                .pow(d)
                .exact_div(&h.pow(d - 1))
                .expect("subresultant division is exact"),
        };
    }
}

/// Monic greatest common divisor.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a.len() == 1 || b.len() == 1 {
        let mut m = a.leading().expect("nonzero").0.clone();
        for k in a.terms.keys().chain(b.terms.keys()) {
            m = m.gcd(k);
            if m.is_one() {
                break;
            }
        }
        return Poly::term(m, Surd::one());
    }
    if a == b {
        return a.monic();
    }
    let (small, large) = if a.total_degree() <= b.total_degree() {
        (a, b)
    } else {
        (b, a)
    };
    if large.exact_div(small).is_some() {
        return small.monic();
    }
    let va = a.vars();
    let vb = b.vars();
    if let Some(v) = va.difference(&vb).next() {
        return gcd(&a.content_in(v), b);
    }
    if let Some(v) = vb.difference(&va).next() {
        return gcd(a, &b.content_in(v));
    }
    let v = va
        .iter()
        .min_by_key(|v| a.degree_in(v).max(b.degree_in(v)))
        .expect("non-constant")
        .clone();
    let ca = a.content_in(&v);
    let cb = b.content_in(&v);
    let pa = a.exact_div(&ca).expect("content divides");
    let pb = b.exact_div(&cb).expect("content divides");
    let c = gcd(&ca, &cb);
    (&c * &subresultant_gcd(pa, pb, &v)).monic()
}

/// Reduced quotient of polynomials with a monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiffRatFunc {
    num: Poly,
    den: Poly,
}

impl Default for DiffRatFunc {
    fn default() -> Self {
        DiffRatFunc::zero()
    }
}

impl DiffRatFunc {
    pub fn zero() -> Self {
        DiffRatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        DiffRatFunc::from_poly(Poly::one())
    }

    pub fn from_poly(p: Poly) -> Self {
        DiffRatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn var(v: Var) -> Self {
        DiffRatFunc::from_poly(Poly::var(v))
    }

    pub fn t() -> Self {
        DiffRatFunc::var(Var::T)
    }

    pub fn dep(name: &str, order: u32) -> Self {
        DiffRatFunc::var(Var::dep(name, order))
    }

    pub fn rational(q: Rational) -> Self {
        DiffRatFunc::from_poly(Poly::constant(Surd::from_rational(q)))
    }

    pub fn integer(n: i64) -> Self {
        DiffRatFunc::rational(integer(n))
    }

    /// Embeds a parameter; generic symbols become polynomial variables.
    pub fn scalar(x: &ExactScalar) -> Self {
        let mut p = Poly::constant(x.number_part().clone());
        for (s, q) in x.generic_terms() {
            p.accumulate(
                Monomial::var(Var::Param(s.clone()), 1),
                Surd::from_rational(q.clone()),
            );
        }
        DiffRatFunc::from_poly(p)
    }

    /// Builds and reduces `num / den`.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZeroFunction);
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd divides"),
                den.exact_div(&g).expect("gcd divides"),
            )
        };
        Ok(DiffRatFunc::normalized(num, den))
    }

    /// Makes the denominator monic; assumes coprime inputs.
    fn normalized(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return DiffRatFunc::zero();
        }
        let lc = den.leading().expect("nonzero denominator").1.clone();
        if lc.is_one() {
            return DiffRatFunc { num, den };
        }
        let inv = lc.inverse().expect("nonzero");
        DiffRatFunc {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut v = self.num.vars();
        v.extend(self.den.vars());
        v
    }

    /// Highest derivative order of `dependent` present, if any.
    pub fn max_order(&self, dependent: &str) -> Option<u32> {
        self.vars().iter().filter_map(|v| v.order_of(dependent)).max()
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let k = e.unsigned_abs();
        Ok(DiffRatFunc {
            num: base.num.pow(k),
            den: base.den.pow(k),
        })
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZeroFunction);
        }
        Ok(DiffRatFunc::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &DiffRatFunc) -> Result<Self> {
        Ok(self * &rhs.recip()?)
    }

    pub fn scale(&self, c: &Surd) -> Self {
        if c.is_zero() {
            return DiffRatFunc::zero();
        }
        DiffRatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Total derivative `d/dt`; coefficients and parameters are constants.
    pub fn total_derivative(&self) -> Self {
        if self.den.is_constant() {
            return DiffRatFunc {
                num: self.num.total_derivative(),
                den: self.den.clone(),
            };
        }
        let dden = self.den.total_derivative();
        if self.den.vars().iter().any(|v| matches!(v, Var::Param(_))) {
            let num = &(&self.num.total_derivative() * &self.den) - &(&self.num * &dden);
            return DiffRatFunc::new(num, self.den.pow(2)).expect("nonzero denominator");
        }
        // (N' D/g - N D'/g) / (D D/g) with g = gcd(D, D') is reduced here
        let g = gcd(&self.den, &dden);
        let (d1, dd1) = if g.is_constant() {
            (self.den.clone(), dden)
        } else {
            (
                self.den.exact_div(&g).expect("gcd divides"),
                dden.exact_div(&g).expect("gcd divides"),
            )
        };
        let num = &(&self.num.total_derivative() * &d1) - &(&self.num * &dd1);
        DiffRatFunc::normalized(num, &self.den * &d1)
    }

    /// Partial derivative with respect to one variable.
    pub fn partial(&self, v: &Var) -> Self {
        if self.den.is_constant() {
            return DiffRatFunc {
                num: self.num.partial(v),
                den: self.den.clone(),
            };
        }
        let num = &(&self.num.partial(v) * &self.den) - &(&self.num * &self.den.partial(v));
        DiffRatFunc::new(num, self.den.pow(2)).expect("nonzero denominator")
    }

    /// Replaces `v` by `value` everywhere.
    pub fn substitute(&self, v: &Var, value: &DiffRatFunc) -> Result<Self> {
        if !self.vars().contains(v) {
            return Ok(self.clone());
        }
        let (n, kn) = self.num.substitute(v, &value.num, &value.den);
        let (d, kd) = self.den.substitute(v, &value.num, &value.den);
        let (n, d) = match kn.cmp(&kd) {
            Ordering::Equal => (n, d),
            Ordering::Greater => (n, &d * &value.den.pow(kn - kd)),
            Ordering::Less => (&n * &value.den.pow(kd - kn), d),
        };
        DiffRatFunc::new(n, d)
    }

    /// Substitutes several variables at once (values must not mention the
    /// substituted variables).
    pub fn substitute_all(&self, subs: &[(Var, DiffRatFunc)]) -> Result<Self> {
        subs.iter()
            .try_fold(self.clone(), |acc, (v, value)| acc.substitute(v, value))
    }

    /// Renames a dependent variable, keeping derivative orders.
    pub fn rename_dependent(&self, from: &str, to: &str) -> Self {
        let rename = |p: &Poly| {
            let mut out = Poly::zero();
            for (m, c) in &p.terms {
                let mut factors: Vec<(Var, u32)> = m
                    .0
                    .iter()
                    .map(|(v, e)| match v {
                        Var::Dep { name, order } if &**name == from => (Var::dep(to, *order), *e),
                        _ => (v.clone(), *e),
                    })
                    .collect();
                factors.sort_by(|a, b| a.0.cmp(&b.0));
                let mono = factors
                    .into_iter()
                    .fold(Monomial::one(), |acc, (v, e)| acc.mul(&Monomial::var(v, e)));
                out.accumulate(mono, c.clone());
            }
            out
        };
        // Renaming can change the monomial order, so renormalize.
        DiffRatFunc::normalized(rename(&self.num), rename(&self.den))
    }

    /// Exact value at a point; `None` if a variable is unassigned or the
    /// denominator vanishes.
    pub fn eval<F: Fn(&Var) -> Option<Surd>>(&self, point: &F) -> Option<Surd> {
        let d = self.den.eval(point)?;
        let n = self.num.eval(point)?;
        Some(&n * &d.inverse()?)
    }

    /// Back to a scalar when this is a constant, affine in the parameters.
    pub fn to_scalar(&self) -> Option<ExactScalar> {
        let den = self.den.as_constant()?;
        let inv = den.inverse()?;
        let mut out = ExactScalar::zero();
        for (m, c) in self.num.terms() {
            let c = c * &inv;
            match m.factors() {
                [] => out = &out + &ExactScalar::from(c),
                [(Var::Param(s), 1)] => {
                    let q = c.to_rational()?;
                    out = &out + &ExactScalar::from_symbol(s.clone()).scale(&q);
                }
                _ => return None,
            }
        }
        Some(out)
    }

    /// Numerical evaluator over a fixed variable layout.
    pub fn compile(&self, layout: &[Var]) -> Result<CompiledRatFunc> {
        Ok(CompiledRatFunc {
            num: CompiledPoly::new(&self.num, layout)?,
            den: CompiledPoly::new(&self.den, layout)?,
        })
    }
}

impl Add<&DiffRatFunc> for &DiffRatFunc {
    type Output = DiffRatFunc;
    fn add(self, rhs: &DiffRatFunc) -> DiffRatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return DiffRatFunc::new(&self.num + &rhs.num, self.den.clone()).expect("nonzero");
        }
        let g = gcd(&self.den, &rhs.den);
        let left = rhs.den.exact_div(&g).expect("gcd divides");
        let right = self.den.exact_div(&g).expect("gcd divides");
        let num = &(&self.num * &left) + &(&rhs.num * &right);
        let den = &self.den * &left;
        if g.is_constant() {
            return DiffRatFunc::normalized(num, den);
        }
        // gcd(num, den) divides g when both inputs are reduced
        let h = gcd(&num, &g);
        if h.is_constant() {
            DiffRatFunc::normalized(num, den)
        } else {
            DiffRatFunc::normalized(
                num.exact_div(&h).expect("gcd divides"),
                den.exact_div(&h).expect("gcd divides"),
            )
        }
    }
}

impl Neg for &DiffRatFunc {
    type Output = DiffRatFunc;
    fn neg(self) -> DiffRatFunc {
        DiffRatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Sub<&DiffRatFunc> for &DiffRatFunc {
    type Output = DiffRatFunc;
    fn sub(self, rhs: &DiffRatFunc) -> DiffRatFunc {
        self + &(-rhs)
    }
}

impl Mul<&DiffRatFunc> for &DiffRatFunc {
    type Output = DiffRatFunc;
    fn mul(self, rhs: &DiffRatFunc) -> DiffRatFunc {
        if self.is_zero() || rhs.is_zero() {
            return DiffRatFunc::zero();
        }
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let cancel = |p: &Poly, g: &Poly| {
            if g.is_constant() {
                p.clone()
            } else {
                p.exact_div(g).expect("gcd divides")
            }
        };
        let num = &cancel(&self.num, &g1) * &cancel(&rhs.num, &g2);
        let den = &cancel(&self.den, &g2) * &cancel(&rhs.den, &g1);
        DiffRatFunc::normalized(num, den)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<DiffRatFunc> for DiffRatFunc {
            type Output = DiffRatFunc;
            fn $method(self, rhs: DiffRatFunc) -> DiffRatFunc {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for DiffRatFunc {
    type Output = DiffRatFunc;
    fn neg(self) -> DiffRatFunc {
        -&self
    }
}

fn fmt_coefficient(c: &Surd) -> (bool, String) {
    if let Some(q) = c.to_rational() {
        let negative = q < Rational::zero();
        let mag = if negative { -q } else { q };
        (negative, mag.to_string())
    } else if c.terms().count() == 1 {
        let (negative, mag) = {
            let (_, q) = c.terms().next().expect("one term");
            let negative = q < &Rational::zero();
            (negative, if negative { -c } else { c.clone() })
        };
        (negative, mag.to_string())
    } else {
        (false, format!("({})", c))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let (negative, mag) = fmt_coefficient(c);
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut parts = Vec::new();
            if m.is_one() || mag != "1" {
                parts.push(mag);
            }
            for (v, e) in &m.0 {
                if *e == 1 {
                    parts.push(v.to_string());
                } else {
                    parts.push(format!("{}^{}", v, e));
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Display for DiffRatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &Poly| {
            if p.len() > 1 || p.terms().next().is_some_and(|(_, c)| c.to_rational().is_none() || c.to_rational() < Some(Rational::zero())) {
                format!("({})", p)
            } else {
                p.to_string()
            }
        };
        if self.den.is_one_poly() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

impl Poly {
    fn is_one_poly(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }
}

/// Reduces `a` modulo `y'' = f` for the dependent variable `var`: every
/// derivative of order two or more is eliminated, leaving `var`, `var'`
/// and `t`.
pub fn reduce_mod_rhs(a: &DiffRatFunc, var: &str, rhs: &DiffRatFunc) -> Result<DiffRatFunc> {
    let Some(top) = a.max_order(var) else {
        return Ok(a.clone());
    };
    if top < 2 {
        return Ok(a.clone());
    }
    // substitution for order k, computed bottom-up from order 2
    let mut subs: Vec<(Var, DiffRatFunc)> = vec![(Var::dep(var, 2), rhs.clone())];
    for k in 3..=top {
        let prev = &subs.last().expect("non-empty").1;
        let next = prev
            .total_derivative()
            .substitute(&Var::dep(var, 2), rhs)?;
        subs.push((Var::dep(var, k), next));
    }
    subs.reverse();
    a.substitute_all(&subs)
}

/// Reduces `a` modulo the second-order equation `eq` written in the
/// dependent variable `var`.
pub fn reduce_mod_equation(a: &DiffRatFunc, eq: &PainleveEquation, var: &str) -> Result<DiffRatFunc> {
    let rhs = eq.rhs_in(var)?;
    reduce_mod_rhs(a, var, &rhs)
}

#[derive(Clone, Debug)]
struct CompiledPoly {
    terms: Vec<(f64, Vec<(usize, i32)>)>,
}

impl CompiledPoly {
    fn new(p: &Poly, layout: &[Var]) -> Result<Self> {
        let mut terms = Vec::with_capacity(p.len());
        for (m, c) in p.terms() {
            let mut factors = Vec::new();
            for (v, e) in m.factors() {
                let slot = match layout.iter().position(|w| w == v) {
                    Some(i) => i,
                    None => {
                        return Err(match v {
                            Var::Param(s) => Error::GenericParameter(s.to_string()),
                            other => Error::Invalid(format!("variable {} has no numeric slot", other)),
                        })
                    }
                };
                factors.push((slot, *e as i32));
            }
            terms.push((c.to_f64(), factors));
        }
        Ok(CompiledPoly { terms })
    }

    fn eval(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(c, fs)| fs.iter().fold(*c, |acc, (i, e)| acc * x[*i].powi(*e)))
            .sum()
    }
}

/// Floating-point evaluator for a [`DiffRatFunc`].
#[derive(Clone, Debug)]
pub struct CompiledRatFunc {
    num: CompiledPoly,
    den: CompiledPoly,
}

impl CompiledRatFunc {
    pub fn eval(&self, x: &[f64]) -> f64 {
        self.num.eval(x) / self.den.eval(x)
    }

    pub fn eval_denominator(&self, x: &[f64]) -> f64 {
        self.den.eval(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equations::{Family, PainleveEquation};
    use crate::parse::parse_expr;

    fn e(text: &str) -> DiffRatFunc {
        parse_expr(text).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&e("y/t") * &e("t/y"), DiffRatFunc::one());
        assert_eq!(&e("y'") + &DiffRatFunc::zero(), e("y'"));
        assert_eq!(e("(y^2 - 1)/(y - 1)"), e("y + 1"));
        assert_eq!(e("y").checked_div(&DiffRatFunc::zero()), Err(Error::DivisionByZeroFunction));
    }

    #[test]
    fn gcd_examples() {
        let a = e("(y + t)^3*(y - 1)").numerator().clone();
        let b = e("(y + t)^2*(y + 2)*t").numerator().clone();
        assert_eq!(gcd(&a, &b), e("(y + t)^2").numerator().clone());
        let c = e("(@a*y + 1)*(y' + y^2 + t/2)").numerator().clone();
        let d = e("(y' + y^2 + t/2)^2").numerator().clone();
        assert_eq!(gcd(&c, &d), e("y' + y^2 + t/2").numerator().clone());
        let coprime = gcd(&e("y^2 + 1").numerator().clone(), &e("y^2 - 2").numerator().clone());
        assert_eq!(coprime, Poly::one());
    }

    #[test]
    fn surd_coefficients_reduce() {
        assert_eq!(e("(y^2 - 2)/(y - sqrt(2))"), e("y + sqrt(2)"));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(e("y^2").total_derivative(), e("2*y*y'"));
        assert_eq!(e("t").total_derivative(), DiffRatFunc::one());
        assert_eq!(
            e("z' + z^2 + t/2").total_derivative(),
            e("z'' + 2*z*z' + 1/2")
        );
        assert_eq!(e("@a*y").total_derivative(), e("@a*y'"));
        assert_eq!(e("1/y").total_derivative(), e("-y'/y^2"));
    }

    #[test]
    fn reduction_examples() {
        let p1 = PainleveEquation::build(Family::I, &Default::default()).unwrap();
        assert_eq!(reduce_mod_equation(&e("y''"), &p1, "y").unwrap(), e("6*y^2 + t"));
        assert_eq!(reduce_mod_equation(&e("y'"), &p1, "y").unwrap(), e("y'"));
        assert_eq!(reduce_mod_equation(&e("y'''"), &p1, "y").unwrap(), e("12*y*y' + 1"));
        assert_eq!(
            reduce_mod_equation(&e("y''''"), &p1, "y").unwrap(),
            e("12*y'^2 + 12*y*(6*y^2 + t)")
        );
    }

    #[test]
    fn partial_and_substitute() {
        let g = e("-y^2 - t/2");
        assert_eq!(g.partial(&Var::dep("y", 0)), e("-2*y"));
        assert_eq!(g.partial(&Var::T), e("-1/2"));
        let s = e("y^2 + 1/y").substitute(&Var::dep("y", 0), &e("t/(t+1)")).unwrap();
        assert_eq!(s, e("t^2/(t+1)^2 + (t+1)/t"));
    }

    #[test]
    fn scalar_roundtrip() {
        let x: ExactScalar = "3/2*@a - sqrt(3) + 1".parse().unwrap();
        assert_eq!(DiffRatFunc::scalar(&x).to_scalar(), Some(x));
        assert_eq!(e("@a*@b").to_scalar(), None);
    }

    #[test]
    fn display_is_parseable() {
        for text in ["-z - (@a + 1/2)/(z' + z^2 + t/2)", "2*y^3 + t*y - 1/2", "sqrt(2)*y/t"] {
            let f = e(text);
            assert_eq!(e(&f.to_string()), f, "{}", f);
        }
    }

    #[test]
    fn compiled_matches_exact() {
        let f = e("(y'^2)/y - y'/t + 3*y^3");
        let layout = [Var::T, Var::dep("y", 0), Var::dep("y", 1)];
        let c = f.compile(&layout).unwrap();
        let got = c.eval(&[0.5, 2.0, -1.0]);
        assert!((got - (0.5 + 2.0 + 24.0)).abs() < 1e-12);
        assert!(matches!(e("@a*y").compile(&layout), Err(Error::GenericParameter(_))));
    }

    #[test]
    fn monomial_order_is_multiplicative() {
        let a = Monomial::var(Var::T, 2);
        let b = Monomial::var(Var::dep("y", 0), 1).mul(&Monomial::var(Var::T, 1));
        let c = Monomial::var(Var::dep("y", 1), 3);
        assert_eq!(a.cmp(&b), a.mul(&c).cmp(&b.mul(&c)));
    }
}
