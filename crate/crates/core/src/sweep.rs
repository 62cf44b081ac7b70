//! Parameter sweeps: classification over a Cartesian grid of exact values.

use std::collections::BTreeMap;
use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::classify::{classify, ClassificationReport};
use crate::equations::{Family, Params};
use crate::error::{Error, Result};
use crate::scalars::{integer, ExactScalar};

/// Parses a range of exact values.
///
/// * `""` is the empty range;
/// * `a,b,c` is a list;
/// * `lo:step:hi` is the inclusive arithmetic progression, e.g. `-4:1/2:4`.
pub fn parse_range(text: &str) -> Result<Vec<ExactScalar>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    let parts: Vec<&str> = text.split(':').collect();
    match parts.len() {
        1 => text.split(',').map(|p| p.trim().parse()).collect(),
        3 => {
            let lo: ExactScalar = parts[0].trim().parse()?;
            let step: ExactScalar = parts[1].trim().parse()?;
            let hi: ExactScalar = parts[2].trim().parse()?;
            let (Some(l), Some(s), Some(h)) = (lo.as_rational(), step.as_rational(), hi.as_rational()) else {
                return Err(Error::Invalid(format!("range {:?} needs rational bounds and step", text)));
            };
            if s <= integer(0) {
                return Err(Error::Invalid(format!("range {:?} needs a positive step", text)));
            }
            let mut out = Vec::new();
            let mut x = l;
            while x <= h {
                out.push(ExactScalar::from_rational(x.clone()));
                x += &s;
                if out.len() > 1_000_000 {
                    return Err(Error::Invalid(format!("range {:?} is too long", text)));
                }
            }
            Ok(out)
        }
        _ => Err(Error::Invalid(format!("cannot read range {:?}; use a,b,c or lo:step:hi", text))),
    }
}

/// Parameters a sweep varies; `alpha2` of `P_VI` is derived.
pub fn sweep_params(family: Family) -> Vec<&'static str> {
    family
        .param_names()
        .iter()
        .copied()
        .filter(|n| !(family == Family::VI && *n == "alpha2"))
        .collect()
}

#[derive(Clone, Debug)]
pub struct SweepRow {
    pub params: Params,
    pub outcome: Result<ClassificationReport>,
}

/// Classifies every tuple of the product of `ranges` (one per sweep
/// parameter).  Rows come back in input order: the last parameter varies
/// fastest.
pub fn sweep(family: Family, ranges: &BTreeMap<String, Vec<ExactScalar>>) -> Result<Vec<SweepRow>> {
    let names = sweep_params(family);
    for k in ranges.keys() {
        if !names.contains(&k.as_str()) {
            return Err(Error::Invalid(format!("P_{} has no sweep parameter {}", family, k)));
        }
    }
    let mut axes = Vec::new();
    for n in &names {
        let values = ranges
            .get(*n)
            .ok_or_else(|| Error::Invalid(format!("missing range for {}", n)))?;
        axes.push((n.to_string(), values.clone()));
    }
    let total: usize = axes.iter().map(|(_, v)| v.len()).product();
    let tuples: Vec<Params> = (0..total)
        .map(|mut index| {
            let mut p = Params::new();
            for (name, values) in axes.iter().rev() {
                p.insert(name.clone(), values[index % values.len()].clone());
                index /= values.len();
            }
            p
        })
        .collect();
    Ok(tuples
        .into_par_iter()
        .map(|params| {
            let outcome = classify(family, &params);
            SweepRow { params, outcome }
        })
        .collect())
}

/// Verdict tallies: column name to value to count.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub rows: usize,
    pub errors: usize,
    pub counts: BTreeMap<String, BTreeMap<String, usize>>,
}

pub fn summarize(rows: &[SweepRow]) -> SweepSummary {
    let mut s = SweepSummary {
        rows: rows.len(),
        ..Default::default()
    };
    for row in rows {
        match &row.outcome {
            Ok(r) => {
                for (col, val) in [
                    ("strongly_minimal", r.strongly_minimal.to_string()),
                    ("algebraic_solutions", r.algebraic_solutions.to_string()),
                    ("irreducible", r.irreducible.to_string()),
                    ("geometric_structure", r.geometric_structure.to_string()),
                ] {
                    *s.counts.entry(col.to_string()).or_default().entry(val).or_default() += 1;
                }
            }
            Err(_) => s.errors += 1,
        }
    }
    s
}

pub fn write_csv<W: Write>(family: Family, rows: &[SweepRow], out: W) -> Result<()> {
    let io = |e: csv::Error| Error::Invalid(format!("writing CSV: {}", e));
    let names = sweep_params(family);
    let mut w = csv::Writer::from_writer(out);
    let mut header: Vec<String> = vec!["family".into()];
    header.extend(names.iter().map(|n| n.to_string()));
    header.extend(
        ["strongly_minimal", "algebraic_solutions", "irreducible", "geometric_structure", "error"]
            .iter()
            .map(|s| s.to_string()),
    );
    w.write_record(&header).map_err(io)?;
    for row in rows {
        let mut rec: Vec<String> = vec![family.to_string()];
        rec.extend(names.iter().map(|n| row.params[*n].to_string()));
        match &row.outcome {
            Ok(r) => rec.extend([
                r.strongly_minimal.to_string(),
                r.algebraic_solutions.to_string(),
                r.irreducible.to_string(),
                r.geometric_structure.to_string(),
                String::new(),
            ]),
            Err(e) => {
                rec.extend(std::iter::repeat("error".to_string()).take(4));
                rec.push(e.to_string());
            }
        }
        w.write_record(&rec).map_err(io)?;
    }
    w.flush().map_err(|e| Error::Invalid(format!("writing CSV: {}", e)))?;
    Ok(())
}
