//! The six Painleve families as exact right-hand sides.
//!
//! Scalar families are stored as `y'' = f(y, y', t)`.  `P_III` and `P_V`
//! exist only in their reduced forms (two-parameter `P_III`, `P_V` with
//! `delta = -1/2`), and `P_VI` only as its Hamiltonian first-order system in
//! `(y, x)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::diffpoly::{DiffRatFunc, Var};
use crate::error::{Error, Result};
use crate::scalars::{integer, rational, ExactScalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    I,
    II,
    III2p,
    IV,
    V3p,
    VI,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::I,
        Family::II,
        Family::III2p,
        Family::IV,
        Family::V3p,
        Family::VI,
    ];

    /// Canonical parameter names, in order.
    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            Family::I => &[],
            Family::II => &["alpha"],
            Family::III2p => &["v1", "v2"],
            Family::IV => &["alpha", "beta"],
            Family::V3p => &["alpha", "beta", "gamma"],
            Family::VI => &["alpha0", "alpha1", "alpha2", "alpha3", "alpha4"],
        }
    }

    pub fn is_system(self) -> bool {
        self == Family::VI
    }

    /// Fixed singular points of the equation in `t`.
    pub fn singular_times(self) -> &'static [f64] {
        match self {
            Family::III2p | Family::V3p => &[0.0],
            Family::VI => &[0.0, 1.0],
            _ => &[],
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Family::I => "I",
            Family::II => "II",
            Family::III2p => "III2p",
            Family::IV => "IV",
            Family::V3p => "V3p",
            Family::VI => "VI",
        };
        f.write_str(name)
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "I" => Ok(Family::I),
            "II" => Ok(Family::II),
            "III2p" => Ok(Family::III2p),
            "IV" => Ok(Family::IV),
            "V3p" => Ok(Family::V3p),
            "VI" => Ok(Family::VI),
            "III" => Err(Error::UnsupportedFamily(
                "the four-parameter P_III is not supported; use the two-parameter form III2p (v1, v2)".into(),
            )),
            "V" => Err(Error::UnsupportedFamily(
                "the four-parameter P_V is not supported; use V3p (alpha, beta, gamma) with delta = -1/2".into(),
            )),
            other => Err(Error::UnsupportedFamily(format!("unknown family '{}'", other))),
        }
    }
}

pub type Params = BTreeMap<String, ExactScalar>;

/// Right-hand side of an equation: a scalar `y'' = f` or the `P_VI`
/// system `(y', x') = (f, g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rhs {
    Scalar(DiffRatFunc),
    System { y: DiffRatFunc, x: DiffRatFunc },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PainleveEquation {
    family: Family,
    params: Params,
    rhs: Rhs,
}

fn y() -> DiffRatFunc {
    DiffRatFunc::dep("y", 0)
}

fn yp() -> DiffRatFunc {
    DiffRatFunc::dep("y", 1)
}

fn t() -> DiffRatFunc {
    DiffRatFunc::t()
}

fn c(n: i64) -> DiffRatFunc {
    DiffRatFunc::integer(n)
}

fn q(n: i64, d: i64) -> DiffRatFunc {
    DiffRatFunc::rational(rational(n, d))
}

fn p(x: &ExactScalar) -> DiffRatFunc {
    DiffRatFunc::scalar(x)
}

fn inv(f: DiffRatFunc) -> DiffRatFunc {
    f.recip().expect("template denominators are nonzero")
}

fn pw(f: DiffRatFunc, e: i32) -> DiffRatFunc {
    f.pow(e).expect("template powers are of nonzero functions")
}

fn template(family: Family, params: &Params) -> Rhs {
    let get = |name: &str| &params[name];
    match family {
        Family::I => Rhs::Scalar(c(6) * pw(y(), 2) + t()),
        Family::II => Rhs::Scalar(c(2) * pw(y(), 3) + t() * y() + p(get("alpha"))),
        Family::III2p => {
            let (v1, v2) = (p(get("v1")), p(get("v2")));
            Rhs::Scalar(
                pw(yp(), 2) * inv(y()) - yp() * inv(t())
                    + c(4) * inv(t()) * (v1 + c(1) - v2 * pw(y(), 2))
                    + c(4) * pw(y(), 3)
                    - c(4) * inv(y()),
            )
        }
        Family::IV => {
            let (alpha, beta) = (p(get("alpha")), p(get("beta")));
            Rhs::Scalar(
                pw(yp(), 2) * inv(c(2) * y())
                    + q(3, 2) * pw(y(), 3)
                    + c(4) * t() * pw(y(), 2)
                    + c(2) * (pw(t(), 2) - alpha) * y()
                    + beta * inv(y()),
            )
        }
        Family::V3p => {
            let (alpha, beta, gamma) = (p(get("alpha")), p(get("beta")), p(get("gamma")));
            Rhs::Scalar(
                (inv(c(2) * y()) + inv(y() - c(1))) * pw(yp(), 2) - yp() * inv(t())
                    + pw(y() - c(1), 2) * inv(pw(t(), 2)) * (alpha * y() + beta * inv(y()))
                    + gamma * y() * inv(t())
                    - q(1, 2) * y() * (y() + c(1)) * inv(y() - c(1)),
            )
        }
        Family::VI => {
            let a = |i: usize| p(get(&format!("alpha{}", i)));
            let x = DiffRatFunc::dep("x", 0);
            let pre = inv(t() * (t() - c(1)));
            let dy = pre.clone()
                * (c(2) * x.clone() * y() * (y() - c(1)) * (y() - t())
                    - (a(4) * (y() - c(1)) * (y() - t())
                        + a(3) * y() * (y() - t())
                        + (a(0) - c(1)) * y() * (y() - c(1))));
            let dx = pre
                * (-(pw(x.clone(), 2) * (c(3) * pw(y(), 2) - c(2) * (c(1) + t()) * y() + t()))
                    + x * (c(2) * (a(0) + a(3) + a(4) - c(1)) * y()
                        - a(4) * (c(1) + t())
                        - a(3) * t()
                        - a(0)
                        + c(1))
                    - a(2) * (a(1) + a(2)));
            Rhs::System { y: dy, x: dx }
        }
    }
}

impl PainleveEquation {
    /// Instantiates the family template.  For `VI`, `alpha2` may be omitted
    /// and is then solved from `alpha0 + alpha1 + 2 alpha2 + alpha3 + alpha4 = 1`.
    pub fn build(family: Family, params: &Params) -> Result<Self> {
        let names = family.param_names();
        let arity_error = || Error::ArityMismatch {
            family: family.to_string(),
            expected: if names.is_empty() {
                "none".to_string()
            } else {
                names.join(", ")
            },
        };
        let mut params = params.clone();
        if params.keys().any(|k| !names.contains(&k.as_str())) {
            return Err(arity_error());
        }
        if family == Family::VI {
            let others = ["alpha0", "alpha1", "alpha3", "alpha4"];
            let mut sum = ExactScalar::zero();
            for name in others {
                sum = &sum + params.get(name).ok_or_else(arity_error)?;
            }
            let implied = (&ExactScalar::one() - &sum).scale(&rational(1, 2));
            match params.get("alpha2") {
                None => {
                    params.insert("alpha2".into(), implied);
                }
                Some(given) if *given == implied => {}
                Some(given) => {
                    let total = &sum + &given.scale(&integer(2));
                    return Err(Error::ConstraintViolation(format!(
                        "alpha0 + alpha1 + 2 alpha2 + alpha3 + alpha4 = {} (must be 1)",
                        total
                    )));
                }
            }
        }
        if params.len() != names.len() {
            return Err(arity_error());
        }
        let rhs = template(family, &params);
        Ok(PainleveEquation {
            family,
            params,
            rhs,
        })
    }

    /// Builds from positional parameters in canonical order.
    pub fn with_values(family: Family, values: &[ExactScalar]) -> Result<Self> {
        let names = family.param_names();
        let names: Vec<&str> = if family == Family::VI && values.len() == 4 {
            vec!["alpha0", "alpha1", "alpha3", "alpha4"]
        } else {
            names.to_vec()
        };
        if names.len() != values.len() {
            return Err(Error::ArityMismatch {
                family: family.to_string(),
                expected: family.param_names().join(", "),
            });
        }
        let params = names
            .iter()
            .map(|n| n.to_string())
            .zip(values.iter().cloned())
            .collect();
        PainleveEquation::build(family, &params)
    }

    /// Accepts a user-supplied right-hand side only if it equals the family
    /// template with these parameters.
    pub fn from_rhs(family: Family, params: &Params, rhs: Rhs) -> Result<Self> {
        let eq = PainleveEquation::build(family, params)?;
        if eq.rhs != rhs {
            return Err(Error::Invalid(format!(
                "right-hand side does not match the {} template",
                family
            )));
        }
        Ok(eq)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn param(&self, name: &str) -> &ExactScalar {
        &self.params[name]
    }

    /// Parameters in canonical order.
    pub fn param_values(&self) -> Vec<&ExactScalar> {
        self.family
            .param_names()
            .iter()
            .map(|n| &self.params[*n])
            .collect()
    }

    pub fn rhs(&self) -> &Rhs {
        &self.rhs
    }

    /// Scalar right-hand side written in the dependent variable `var`.
    pub fn rhs_in(&self, var: &str) -> Result<DiffRatFunc> {
        match &self.rhs {
            Rhs::Scalar(f) if var == "y" => Ok(f.clone()),
            Rhs::Scalar(f) => Ok(f.rename_dependent("y", var)),
            Rhs::System { .. } => Err(Error::UnsupportedFamily(
                "P_VI is a first-order system, not a scalar second-order equation".into(),
            )),
        }
    }

    /// Variable layout used for numerical evaluation of the right-hand side.
    pub fn numeric_layout(&self) -> [Var; 3] {
        match self.rhs {
            Rhs::Scalar(_) => [Var::T, Var::dep("y", 0), Var::dep("y", 1)],
            Rhs::System { .. } => [Var::T, Var::dep("y", 0), Var::dep("x", 0)],
        }
    }

    pub fn has_generic_params(&self) -> bool {
        self.params.values().any(ExactScalar::has_generics)
    }

    pub fn to_spec(&self) -> EquationSpec {
        EquationSpec {
            family: self.family.to_string(),
            params: self
                .params
                .iter()
                .map(|(k, v)| (k.clone(), v.to_string()))
                .collect(),
        }
    }
}

impl fmt::Display for PainleveEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P_{}(", self.family)?;
        let values: Vec<String> = self.param_values().iter().map(|v| v.to_string()).collect();
        write!(f, "{})", values.join(", "))
    }
}

/// JSON form of an equation: `{"family": "II", "params": {"alpha": "1/2"}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquationSpec {
    pub family: String,
    #[serde(default)]
    pub params: BTreeMap<String, String>,
}

impl EquationSpec {
    pub fn build(&self) -> Result<PainleveEquation> {
        let family: Family = self.family.parse()?;
        let mut params = Params::new();
        for (k, v) in &self.params {
            params.insert(k.clone(), v.parse()?);
        }
        PainleveEquation::build(family, &params)
    }
}

/// One branch of the change of variables from `(alpha, beta[, gamma])` to
/// the `v` coordinates of `P_IV` or `P_V`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParamDecomposition {
    pub family: Family,
    pub v: Vec<ExactScalar>,
    pub sign_choice: Vec<i8>,
    /// Set when a root of an expression with generic content was taken,
    /// represented by a derived generic symbol.
    pub symbolic: bool,
}

impl ParamDecomposition {
    /// `(i, j, v_i - v_j)` for `i < j`, 1-based indices.
    pub fn pairwise_differences(&self) -> Vec<(usize, usize, ExactScalar)> {
        let mut out = Vec::new();
        for i in 0..self.v.len() {
            for j in i + 1..self.v.len() {
                out.push((i + 1, j + 1, &self.v[i] - &self.v[j]));
            }
        }
        out
    }

    pub fn sum(&self) -> ExactScalar {
        self.v.iter().fold(ExactScalar::zero(), |acc, x| &acc + x)
    }

    /// Applies the forward formulas, returning `(alpha, beta)` for `IV` and
    /// `(alpha, beta, gamma)` for `V3p`.
    pub fn reconstruct(&self) -> Result<Vec<ExactScalar>> {
        let v = &self.v;
        match self.family {
            Family::IV => Ok(vec![
                &v[2].scale(&integer(3)) + &ExactScalar::one(),
                (&v[1] - &v[0]).square()?.scale(&integer(-2)),
            ]),
            Family::V3p => Ok(vec![
                (&v[2] - &v[3]).square()?.scale(&rational(1, 2)),
                (&v[1] - &v[0]).square()?.scale(&rational(-1, 2)),
                &(&v[0] + &v[1]).scale(&integer(2)) - &ExactScalar::one(),
            ]),
            other => Err(Error::UnsupportedFamily(format!(
                "no parameter decomposition for P_{}",
                other
            ))),
        }
    }
}

fn root(radicand: &ExactScalar, what: &str) -> Result<ExactScalar> {
    radicand.principal_sqrt().map_err(|e| {
        Error::UnsupportedParameterField(format!("{} = {}: {}", what, radicand, e))
    })
}

/// Signed roots `+r` and `-r`, merged when `r = 0`.
fn signed(r: &ExactScalar) -> Vec<(i8, ExactScalar)> {
    if r.is_zero() {
        vec![(1, r.clone())]
    } else {
        vec![(1, r.clone()), (-1, -r)]
    }
}

/// Every decomposition reachable by the sign choices in the root
/// extractions: two branches for `IV`, four for `V3p`.
pub fn decompositions(family: Family, params: &Params) -> Result<Vec<ParamDecomposition>> {
    let half = rational(1, 2);
    let get = |name: &str| {
        params.get(name).ok_or_else(|| Error::ArityMismatch {
            family: family.to_string(),
            expected: family.param_names().join(", "),
        })
    };
    match family {
        Family::IV => {
            let (alpha, beta) = (get("alpha")?, get("beta")?);
            let v3 = (alpha - &ExactScalar::one()).scale(&rational(1, 3));
            let r = root(&beta.scale(&rational(-1, 2)), "-beta/2")?;
            let symbolic = r.has_generics();
            Ok(signed(&r)
                .into_iter()
                .map(|(sign, d)| ParamDecomposition {
                    family,
                    v: vec![
                        (&-&v3 - &d).scale(&half),
                        (&-&v3 + &d).scale(&half),
                        v3.clone(),
                    ],
                    sign_choice: vec![sign],
                    symbolic,
                })
                .collect())
        }
        Family::V3p => {
            let (alpha, beta, gamma) = (get("alpha")?, get("beta")?, get("gamma")?);
            let r = root(&alpha.scale(&integer(2)), "2 alpha")?;
            let s = root(&beta.scale(&integer(-2)), "-2 beta")?;
            let symbolic = r.has_generics() || s.has_generics();
            let sigma = (gamma + &ExactScalar::one()).scale(&half);
            let mut out = Vec::new();
            for (p, d34) in signed(&r) {
                for (q, d21) in signed(&s) {
                    out.push(ParamDecomposition {
                        family,
                        v: vec![
                            (&sigma - &d21).scale(&half),
                            (&sigma + &d21).scale(&half),
                            (&-&sigma + &d34).scale(&half),
                            (&-&sigma - &d34).scale(&half),
                        ],
                        sign_choice: vec![p, q],
                        symbolic,
                    });
                }
            }
            Ok(out)
        }
        other => Err(Error::UnsupportedFamily(format!(
            "no parameter decomposition for P_{}",
            other
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_expr;

    fn params(pairs: &[(&str, &str)]) -> Params {
        pairs
            .iter()
            .map(|(k, v)| (k.to_string(), v.parse().unwrap()))
            .collect()
    }

    fn scalar_rhs(eq: &PainleveEquation) -> DiffRatFunc {
        eq.rhs_in("y").unwrap()
    }

    #[test]
    fn build_examples() {
        let p2 = PainleveEquation::build(Family::II, &params(&[("alpha", "0")])).unwrap();
        assert_eq!(scalar_rhs(&p2), parse_expr("2*y^3 + t*y").unwrap());
        let p1 = PainleveEquation::build(Family::I, &Params::new()).unwrap();
        assert_eq!(scalar_rhs(&p1), parse_expr("6*y^2 + t").unwrap());
        let p6 = PainleveEquation::build(
            Family::VI,
            &params(&[("alpha0", "1"), ("alpha1", "0"), ("alpha2", "0"), ("alpha3", "0"), ("alpha4", "0")]),
        )
        .unwrap();
        match p6.rhs() {
            Rhs::System { y, x } => {
                assert_eq!(*y, parse_expr("2*x*y*(y-1)*(y-t)/(t*(t-1))").unwrap());
                assert_eq!(
                    *x,
                    parse_expr("(-x^2*(3*y^2 - 2*(1+t)*y + t))/(t*(t-1))").unwrap()
                );
            }
            _ => panic!("VI is a system"),
        }
    }

    #[test]
    fn reduced_templates_match_displays() {
        let p3 = PainleveEquation::build(Family::III2p, &params(&[("v1", "@a"), ("v2", "@b")])).unwrap();
        assert_eq!(
            scalar_rhs(&p3),
            parse_expr("y'^2/y - y'/t + 4/t*(@a + 1 - @b*y^2) + 4*y^3 - 4/y").unwrap()
        );
        let p4 = PainleveEquation::build(Family::IV, &params(&[("alpha", "@a"), ("beta", "@b")])).unwrap();
        assert_eq!(
            scalar_rhs(&p4),
            parse_expr("y'^2/(2*y) + 3/2*y^3 + 4*t*y^2 + 2*(t^2 - @a)*y + @b/y").unwrap()
        );
        let p5 = PainleveEquation::build(
            Family::V3p,
            &params(&[("alpha", "@a"), ("beta", "@b"), ("gamma", "@c")]),
        )
        .unwrap();
        assert_eq!(
            scalar_rhs(&p5),
            parse_expr(
                "(1/(2*y) + 1/(y-1))*y'^2 - y'/t + (y-1)^2/t^2*(@a*y + @b/y) + @c*y/t - 1/2*y*(y+1)/(y-1)"
            )
            .unwrap()
        );
    }

    #[test]
    fn build_errors() {
        assert!(matches!(
            PainleveEquation::build(Family::II, &Params::new()),
            Err(Error::ArityMismatch { .. })
        ));
        assert!(matches!(
            PainleveEquation::build(Family::I, &params(&[("alpha", "1")])),
            Err(Error::ArityMismatch { .. })
        ));
        let bad = params(&[("alpha0", "1"), ("alpha1", "1"), ("alpha2", "0"), ("alpha3", "0"), ("alpha4", "0")]);
        assert!(matches!(
            PainleveEquation::build(Family::VI, &bad),
            Err(Error::ConstraintViolation(_))
        ));
        assert!(matches!("III".parse::<Family>(), Err(Error::UnsupportedFamily(_))));
        assert!(matches!("V".parse::<Family>(), Err(Error::UnsupportedFamily(_))));
    }

    #[test]
    fn vi_derives_alpha2() {
        let eq = PainleveEquation::build(
            Family::VI,
            &params(&[("alpha0", "@a"), ("alpha1", "1/2"), ("alpha3", "0"), ("alpha4", "0")]),
        )
        .unwrap();
        assert_eq!(eq.param("alpha2").to_string(), "-1/2*@a + 1/4");
    }

    #[test]
    fn from_rhs_checks_template() {
        let ps = params(&[("alpha", "1")]);
        let good = Rhs::Scalar(parse_expr("2*y^3 + t*y + 1").unwrap());
        assert!(PainleveEquation::from_rhs(Family::II, &ps, good).is_ok());
        let bad = Rhs::Scalar(parse_expr("2*y^3 + t*y").unwrap());
        assert!(PainleveEquation::from_rhs(Family::II, &ps, bad).is_err());
    }

    #[test]
    fn spec_json() {
        let spec: EquationSpec = serde_json::from_str(r#"{"family": "II", "params": {"alpha": "1/2"}}"#).unwrap();
        let eq = spec.build().unwrap();
        assert_eq!(eq.param("alpha").to_string(), "1/2");
        assert_eq!(eq.to_spec(), spec);
        let four: EquationSpec = serde_json::from_str(r#"{"family": "III", "params": {}}"#).unwrap();
        assert!(matches!(four.build(), Err(Error::UnsupportedFamily(_))));
    }

    #[test]
    fn iv_decomposition_examples() {
        let ds = decompositions(Family::IV, &params(&[("alpha", "0"), ("beta", "-2")])).unwrap();
        assert_eq!(ds.len(), 2);
        let plus = &ds[0];
        let expect: Vec<ExactScalar> = ["-1/3", "2/3", "-1/3"].iter().map(|s| s.parse().unwrap()).collect();
        assert_eq!(plus.v, expect);
        for d in &ds {
            assert!(d.pairwise_differences().iter().all(|(_, _, x)| x.is_integer()));
        }
        let ds = decompositions(Family::IV, &params(&[("alpha", "1"), ("beta", "-2")])).unwrap();
        for d in &ds {
            assert_eq!(d.v[2], ExactScalar::zero());
            let d23 = (&d.v[1] - &d.v[2]).as_rational().unwrap();
            assert!(d23 == rational(1, 2) || d23 == rational(-1, 2));
        }
    }

    #[test]
    fn v_decomposition_example() {
        let ds = decompositions(
            Family::V3p,
            &params(&[("alpha", "1/2"), ("beta", "-1/2"), ("gamma", "@g")]),
        )
        .unwrap();
        assert_eq!(ds.len(), 4);
        for d in &ds {
            let d12 = &d.v[0] - &d.v[1];
            assert!(d12 == ExactScalar::from(1) || d12 == ExactScalar::from(-1));
            assert_eq!(
                &d.v[0] + &d.v[1],
                "(@g + 1)/2".parse::<ExactScalar>().unwrap()
            );
        }
    }

    #[test]
    fn zero_radicand_collapses_branches() {
        let ds = decompositions(Family::IV, &params(&[("alpha", "1"), ("beta", "0")])).unwrap();
        assert_eq!(ds.len(), 1);
        let ds = decompositions(
            Family::V3p,
            &params(&[("alpha", "0"), ("beta", "-1/2"), ("gamma", "0")]),
        )
        .unwrap();
        assert_eq!(ds.len(), 2);
    }

    #[test]
    fn negative_radicand_is_unsupported() {
        let err = decompositions(Family::IV, &params(&[("alpha", "0"), ("beta", "2")])).unwrap_err();
        assert!(matches!(err, Error::UnsupportedParameterField(_)));
        let err = decompositions(
            Family::V3p,
            &params(&[("alpha", "sqrt(2)"), ("beta", "0"), ("gamma", "0")]),
        )
        .unwrap_err();
        assert!(matches!(err, Error::UnsupportedParameterField(_)));
    }

    #[test]
    fn generic_decomposition_roundtrips() {
        let ps = params(&[("alpha", "@a"), ("beta", "@b"), ("gamma", "@c")]);
        for d in decompositions(Family::V3p, &ps).unwrap() {
            assert!(d.symbolic);
            assert!(d.sum().is_zero());
            let back = d.reconstruct().unwrap();
            assert_eq!(back, vec![ps["alpha"].clone(), ps["beta"].clone(), ps["gamma"].clone()]);
        }
    }
}
