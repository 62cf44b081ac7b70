//! Backlund transformations between Painleve equations, the `P_II` Weyl
//! group action on parameters, and Riccati subvarieties.
//!
//! A transformation is a rational map `w = phi(z, z', t)` from solutions of
//! a source equation (in `z`) to solutions of a target equation (in `w`).
//! It is verified by pushing the map through the source equation and
//! checking that the target residual vanishes identically.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

use crate::diffpoly::{reduce_mod_equation, DiffRatFunc, Var};
use crate::equations::{EquationSpec, Family, PainleveEquation, Params};
use crate::error::{Error, Result};
use crate::numeric::{integrate, map_trajectory, residual_fd, InitialCondition, IntegrateOptions};
use crate::parse::parse_expr;
use crate::scalars::{integer, rational, ExactScalar, Rational, Surd, Symbol};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BacklundTransform {
    name: String,
    source: PainleveEquation,
    target: PainleveEquation,
    map: DiffRatFunc,
    degenerate: bool,
}

fn check_scalar(eq: &PainleveEquation) -> Result<()> {
    if eq.family().is_system() {
        Err(Error::UnsupportedFamily(
            "transformations act on scalar second-order equations; P_VI is a system".into(),
        ))
    } else {
        Ok(())
    }
}

impl BacklundTransform {
    /// `map` may only mention `z`, `z'`, `t` and parameter symbols.
    pub fn new(
        name: &str,
        source: PainleveEquation,
        target: PainleveEquation,
        map: DiffRatFunc,
    ) -> Result<Self> {
        check_scalar(&source)?;
        check_scalar(&target)?;
        for v in map.vars() {
            match &v {
                Var::T | Var::Param(_) => {}
                Var::Dep { name, order } if &**name == "z" && *order <= 1 => {}
                other => {
                    return Err(Error::Invalid(format!(
                        "map may only use z, z' and t, found {}",
                        other
                    )))
                }
            }
        }
        Ok(BacklundTransform {
            name: name.to_string(),
            source,
            target,
            map,
            degenerate: false,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &PainleveEquation {
        &self.source
    }

    pub fn target(&self) -> &PainleveEquation {
        &self.target
    }

    pub fn map(&self) -> &DiffRatFunc {
        &self.map
    }

    /// True for `P_II` maps whose pole term vanished at a singular
    /// parameter, leaving `w = -z`.
    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    /// Zero set of the map's denominator, if the map has one.
    pub fn singular_locus(&self) -> Option<String> {
        let den = self.map.denominator();
        if den.is_constant() {
            None
        } else {
            Some(format!("{} = 0", den))
        }
    }

    /// `w'` as a function of `(z, z', t)`.
    pub fn derivative_map(&self) -> Result<DiffRatFunc> {
        reduce_mod_equation(&self.map.total_derivative(), &self.source, "z")
    }

    /// Applies `self` then `next`: the composite maps `self.source` to
    /// `next.target`.
    pub fn then(&self, next: &BacklundTransform) -> Result<BacklundTransform> {
        if self.target != next.source {
            return Err(Error::Invalid(format!(
                "cannot compose: {} targets {} but {} starts from {}",
                self.name, self.target, next.name, next.source
            )));
        }
        let w = self.map.clone();
        let dw = self.derivative_map()?;
        // rename next's variables out of the way before substituting
        let outer = next.map.rename_dependent("z", "u");
        let composite = outer.substitute_all(&[(Var::dep("u", 0), w), (Var::dep("u", 1), dw)])?;
        BacklundTransform::new(
            &format!("{} {}", self.name, next.name),
            self.source.clone(),
            next.target.clone(),
            composite,
        )
    }

    /// Named generic symbols in the parameters and the map.
    pub fn named_symbols(&self) -> BTreeSet<Symbol> {
        let mut out = BTreeSet::new();
        for eq in [&self.source, &self.target] {
            for v in eq.params().values() {
                out.extend(v.named_symbols());
            }
        }
        for v in self.map.vars() {
            if let Var::Param(sym) = v {
                out.extend(ExactScalar::from_symbol(sym).named_symbols());
            }
        }
        out
    }

    /// The same transformation with named symbols replaced by values.
    pub fn specialize(&self, values: &BTreeMap<Symbol, ExactScalar>) -> Result<BacklundTransform> {
        let eq = |e: &PainleveEquation| -> Result<PainleveEquation> {
            let params = e
                .params()
                .iter()
                .map(|(k, v)| Ok((k.clone(), v.specialize(values)?)))
                .collect::<Result<Params>>()?;
            PainleveEquation::build(e.family(), &params)
        };
        let mut subs = Vec::new();
        for v in self.map.vars() {
            if let Var::Param(sym) = &v {
                let value = ExactScalar::from_symbol(sym.clone()).specialize(values)?;
                subs.push((v.clone(), DiffRatFunc::scalar(&value)));
            }
        }
        let mut out = BacklundTransform::new(&self.name, eq(&self.source)?, eq(&self.target)?, self.map.substitute_all(&subs)?)?;
        out.degenerate = self.degenerate;
        Ok(out)
    }

    pub fn to_spec(&self) -> TransformSpec {
        TransformSpec {
            name: self.name.clone(),
            source: self.source.to_spec(),
            target: self.target.to_spec(),
            map: self.map.to_string(),
        }
    }
}

/// Transformation definition file:
/// `{"name": .., "source": <equation>, "target": <equation>, "map": ".."}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransformSpec {
    pub name: String,
    pub source: EquationSpec,
    pub target: EquationSpec,
    pub map: String,
}

impl TransformSpec {
    pub fn build(&self) -> Result<BacklundTransform> {
        BacklundTransform::new(
            &self.name,
            self.source.build()?,
            self.target.build()?,
            parse_expr(&self.map)?,
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PiiKind {
    S,
    TPlus,
    TMinus,
}

impl PiiKind {
    pub const ALL: [PiiKind; 3] = [PiiKind::S, PiiKind::TPlus, PiiKind::TMinus];

    fn shift(self, alpha: &ExactScalar) -> ExactScalar {
        match self {
            PiiKind::S => -alpha,
            PiiKind::TPlus => alpha + &ExactScalar::one(),
            PiiKind::TMinus => alpha - &ExactScalar::one(),
        }
    }
}

impl fmt::Display for PiiKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PiiKind::S => "S",
            PiiKind::TPlus => "T+",
            PiiKind::TMinus => "T-",
        })
    }
}

impl FromStr for PiiKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "S" | "s" => Ok(PiiKind::S),
            "T+" | "T₊" | "tplus" | "Tplus" => Ok(PiiKind::TPlus),
            "T-" | "T₋" | "tminus" | "Tminus" => Ok(PiiKind::TMinus),
            other => Err(Error::Invalid(format!("unknown transformation {:?}; use S, T+ or T-", other))),
        }
    }
}

fn p2(alpha: &ExactScalar) -> PainleveEquation {
    PainleveEquation::with_values(Family::II, std::slice::from_ref(alpha))
        .expect("P_II takes one parameter")
}

/// The `P_II` transformations
///
/// ```text
/// S(z)  = -z
/// T+(z) = -z - (alpha + 1/2) / (z' + z^2 + t/2)
/// T-(z) = -z + (alpha - 1/2) / (z' - z^2 - t/2)
/// ```
///
/// with source `P_II(alpha)` and targets `P_II(-alpha)`, `P_II(alpha + 1)`
/// and `P_II(alpha - 1)`.
pub fn builtin_pii(kind: PiiKind, alpha: &ExactScalar) -> BacklundTransform {
    let z = DiffRatFunc::dep("z", 0);
    let zp = DiffRatFunc::dep("z", 1);
    let half_t = DiffRatFunc::t().scale(&Surd::from_rational(rational(1, 2)));
    let z2 = &z * &z;
    let half = ExactScalar::from_rational(rational(1, 2));
    let (numerator, pole) = match kind {
        PiiKind::S => (ExactScalar::zero(), None),
        PiiKind::TPlus => (-(alpha + &half), Some(zp + z2 + half_t)),
        PiiKind::TMinus => (alpha - &half, Some(zp - z2 - half_t)),
    };
    let mut map = -z;
    let degenerate = pole.is_some() && numerator.is_zero();
    if let Some(pole) = pole.filter(|_| !numerator.is_zero()) {
        let term = DiffRatFunc::scalar(&numerator)
            .checked_div(&pole)
            .expect("pole denominator is a nonzero polynomial");
        map = map + term;
    }
    BacklundTransform {
        name: kind.to_string(),
        source: p2(alpha),
        target: p2(&kind.shift(alpha)),
        map,
        degenerate,
    }
}

/// Evidence that a transformation's residual reduced to zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProofToken {
    pub transform: String,
    pub source: String,
    pub target: String,
    pub reduced_residual: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verification {
    Verified(ProofToken),
    Refuted { residual: DiffRatFunc },
}

impl Verification {
    pub fn is_verified(&self) -> bool {
        matches!(self, Verification::Verified(_))
    }

    pub fn residual(&self) -> Option<&DiffRatFunc> {
        match self {
            Verification::Verified(_) => None,
            Verification::Refuted { residual } => Some(residual),
        }
    }
}

/// Target residual `w'' - f_target(w, w', t)` as a function of
/// `(z, z', t)`, with `z''` and `z'''` eliminated through the source.
pub fn symbolic_residual(t: &BacklundTransform) -> Result<DiffRatFunc> {
    if t.map.denominator().is_zero() {
        return Err(Error::DivisionByZeroFunction);
    }
    let w = t.map.clone();
    let w1 = t.derivative_map()?;
    let w2 = reduce_mod_equation(&w1.total_derivative(), &t.source, "z")?;
    let f = t.target.rhs_in("y")?;
    let f_at = f.substitute_all(&[(Var::dep("y", 0), w), (Var::dep("y", 1), w1)])?;
    Ok(w2 - f_at)
}

pub fn verify_symbolic(t: &BacklundTransform) -> Result<Verification> {
    let residual = symbolic_residual(t)?;
    if residual.is_zero() {
        Ok(Verification::Verified(ProofToken {
            transform: t.name.clone(),
            source: t.source.to_string(),
            target: t.target.to_string(),
            reduced_residual: residual.to_string(),
        }))
    } else {
        Ok(Verification::Refuted { residual })
    }
}

/// JSON report of a verification run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub name: String,
    pub source: String,
    pub target: String,
    pub map: String,
    pub status: String,
    pub residual: Option<String>,
    pub singular_locus: Option<String>,
    pub degenerate: bool,
    pub proof: Option<ProofToken>,
}

impl VerificationReport {
    pub fn new(t: &BacklundTransform, outcome: &Verification) -> Self {
        let (status, residual, proof) = match outcome {
            Verification::Verified(token) => ("verified", None, Some(token.clone())),
            Verification::Refuted { residual } => ("refuted", Some(residual.to_string()), None),
        };
        VerificationReport {
            name: t.name.clone(),
            source: t.source.to_string(),
            target: t.target.to_string(),
            map: t.map.to_string(),
            status: status.to_string(),
            residual,
            singular_locus: t.singular_locus(),
            degenerate: t.degenerate,
            proof,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WeylLetter {
    S,
    TPlus,
    TMinus,
}

impl WeylLetter {
    pub const ALL: [WeylLetter; 3] = [WeylLetter::S, WeylLetter::TPlus, WeylLetter::TMinus];

    pub fn act(self, alpha: &ExactScalar) -> ExactScalar {
        match self {
            WeylLetter::S => -alpha,
            WeylLetter::TPlus => alpha + &ExactScalar::one(),
            WeylLetter::TMinus => alpha - &ExactScalar::one(),
        }
    }

    pub fn kind(self) -> PiiKind {
        match self {
            WeylLetter::S => PiiKind::S,
            WeylLetter::TPlus => PiiKind::TPlus,
            WeylLetter::TMinus => PiiKind::TMinus,
        }
    }
}

/// A word over `{S, T+, T-}`, read left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeylWord(pub Vec<WeylLetter>);

impl WeylWord {
    pub fn letters(&self) -> &[WeylLetter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The chain of builtin transformations realizing the word from
    /// `P_II(alpha)`.
    pub fn transforms(&self, alpha: &ExactScalar) -> Vec<BacklundTransform> {
        let mut a = alpha.clone();
        self.0
            .iter()
            .map(|l| {
                let t = builtin_pii(l.kind(), &a);
                a = l.act(&a);
                t
            })
            .collect()
    }
}

impl fmt::Display for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("id");
        }
        for l in &self.0 {
            f.write_str(match l {
                WeylLetter::S => "S",
                WeylLetter::TPlus => "T+",
                WeylLetter::TMinus => "T-",
            })?;
        }
        Ok(())
    }
}

impl FromStr for WeylWord {
    type Err = Error;

    /// Accepts `S`, `T+`, `T-` (or `T₊`, `T₋`) with optional separators.
    fn from_str(s: &str) -> Result<Self> {
        let mut letters = Vec::new();
        let mut chars = s.trim().chars().peekable();
        if s.trim() == "id" {
            return Ok(WeylWord::default());
        }
        while let Some(c) = chars.next() {
            match c {
                ' ' | ',' | '.' | '*' => {}
                'S' => letters.push(WeylLetter::S),
                'T' => match chars.next() {
                    Some('+') | Some('₊') => letters.push(WeylLetter::TPlus),
                    Some('-') | Some('₋') => letters.push(WeylLetter::TMinus),
                    _ => return Err(Error::Invalid(format!("bad Weyl word {:?}: T must be followed by + or -", s))),
                },
                other => return Err(Error::Invalid(format!("bad Weyl word {:?}: unexpected {:?}", s, other))),
            }
        }
        Ok(WeylWord(letters))
    }
}

pub fn weyl_apply(word: &WeylWord, alpha: &ExactScalar) -> ExactScalar {
    word.0.iter().fold(alpha.clone(), |a, l| l.act(&a))
}

fn integer_value(x: &ExactScalar) -> Option<Rational> {
    x.as_rational().filter(|q| q.is_integer())
}

fn shift_word(prefix: Vec<WeylLetter>, k: &Rational) -> WeylWord {
    let n: i64 = k.to_integer().try_into().expect("orbit shift fits in i64");
    let letter = if n >= 0 { WeylLetter::TPlus } else { WeylLetter::TMinus };
    let mut letters = prefix;
    letters.extend(std::iter::repeat(letter).take(n.unsigned_abs() as usize));
    WeylWord(letters)
}

/// Decides whether `beta` lies in `{+-alpha + k : k in Z}` and returns a
/// word taking `alpha` to `beta`.
pub fn weyl_orbit_member(alpha: &ExactScalar, beta: &ExactScalar) -> Option<WeylWord> {
    if let Some(k) = integer_value(&(beta - alpha)) {
        return Some(shift_word(Vec::new(), &k));
    }
    integer_value(&(beta + alpha)).map(|k| shift_word(vec![WeylLetter::S], &k))
}

/// A first-order equation `y' = g(y, t)` proposed as a subvariety of a
/// second-order equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RiccatiCandidate {
    g: DiffRatFunc,
    target: PainleveEquation,
}

impl RiccatiCandidate {
    pub fn new(g: DiffRatFunc, target: PainleveEquation) -> Result<Self> {
        check_scalar(&target)?;
        for v in g.vars() {
            if let Var::Dep { name, order } = &v {
                if &**name != "y" || *order > 0 {
                    return Err(Error::Invalid(format!(
                        "g may only use y and t, found {}",
                        v
                    )));
                }
            }
        }
        Ok(RiccatiCandidate { g, target })
    }

    pub fn g(&self) -> &DiffRatFunc {
        &self.g
    }

    pub fn target(&self) -> &PainleveEquation {
        &self.target
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RiccatiOutcome {
    Subvariety,
    NotSubvariety { residual: DiffRatFunc },
}

/// `y'' = dg/dt + dg/dy * g` compared against `f(y, g, t)`.
pub fn riccati_check(c: &RiccatiCandidate) -> Result<RiccatiOutcome> {
    let y = Var::dep("y", 0);
    let ypp = &c.g.partial(&Var::T) + &(&c.g.partial(&y) * &c.g);
    let f = c.target.rhs_in("y")?;
    let f_at = f.substitute(&Var::dep("y", 1), &c.g)?;
    let residual = ypp - f_at;
    Ok(if residual.is_zero() {
        RiccatiOutcome::Subvariety
    } else {
        RiccatiOutcome::NotSubvariety { residual }
    })
}

/// Outcome at one grid point of a numerical consistency check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NumericPoint {
    pub t0: f64,
    pub z0: f64,
    pub dz0: f64,
    pub residual: f64,
    pub dropped: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct NumericReport {
    pub points: Vec<NumericPoint>,
    pub max_residual: f64,
    /// Values substituted for generic symbols before integrating.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub specialization: BTreeMap<String, String>,
}

/// Settings for [`verify_numeric_consistency`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NumericCheck {
    pub span: f64,
    pub spacing: f64,
    pub rtol: f64,
    pub atol: f64,
}

impl Default for NumericCheck {
    fn default() -> Self {
        NumericCheck {
            span: 0.2,
            spacing: 1e-3,
            rtol: 1e-10,
            atol: 1e-12,
        }
    }
}

/// Integrates the source from each grid point over `span`, maps the
/// trajectory, and measures the target residual by finite differences.
pub fn verify_numeric_consistency(
    t: &BacklundTransform,
    grid: &[(f64, f64, f64)],
    check: &NumericCheck,
) -> Result<NumericReport> {
    let opts = IntegrateOptions::tolerances(check.rtol, check.atol).with_output_step(check.spacing);
    let mut report = NumericReport::default();
    for &(t0, z0, dz0) in grid {
        let traj = integrate(&t.source, InitialCondition::new(t0, z0, dz0), t0 + check.span, &opts)?;
        let mapped = map_trajectory(t, &traj)?;
        let residual = residual_fd(&t.target, &mapped)?;
        report.max_residual = report.max_residual.max(residual);
        report.points.push(NumericPoint {
            t0,
            z0,
            dz0,
            residual,
            dropped: mapped.dropped.len(),
        });
    }
    Ok(report)
}

/// Append-only store of transformations shared between readers.
#[derive(Debug, Default)]
pub struct Registry {
    entries: RwLock<Vec<Arc<BacklundTransform>>>,
}

impl Registry {
    pub fn new() -> Self {
        Registry::default()
    }

    /// Registry preloaded with `S`, `T+` and `T-` at `alpha`.
    pub fn with_pii(alpha: &ExactScalar) -> Self {
        let r = Registry::new();
        for kind in PiiKind::ALL {
            r.register(builtin_pii(kind, alpha));
        }
        r
    }

    pub fn register(&self, t: BacklundTransform) -> Arc<BacklundTransform> {
        let t = Arc::new(t);
        self.entries.write().expect("registry lock").push(t.clone());
        t
    }

    pub fn get(&self, name: &str) -> Option<Arc<BacklundTransform>> {
        self.entries
            .read()
            .expect("registry lock")
            .iter()
            .find(|t| t.name == name)
            .cloned()
    }

    pub fn snapshot(&self) -> Vec<Arc<BacklundTransform>> {
        self.entries.read().expect("registry lock").clone()
    }

    pub fn len(&self) -> usize {
        self.entries.read().expect("registry lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Transformation `P_II(alpha) -> P_II(alpha + shift)` given by an
/// arbitrary map; used for deliberately wrong candidates.
pub fn pii_candidate(name: &str, alpha: &ExactScalar, shift: i64, map: DiffRatFunc) -> Result<BacklundTransform> {
    let target = alpha + &ExactScalar::from_rational(integer(shift));
    let mut params = Params::new();
    params.insert("alpha".into(), target);
    BacklundTransform::new(name, p2(alpha), PainleveEquation::build(Family::II, &params)?, map)
}
