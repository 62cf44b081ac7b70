//! Model-theoretic classification of each Painlevé family.
//!
//! cargo run --example classify_families

use painleve::classify::classify;
use painleve::equations::{Family, Params};
use painleve::scalars::ExactScalar;

fn params(pairs: &[(&str, &str)]) -> Params {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.parse::<ExactScalar>().unwrap()))
        .collect()
}

fn main() -> painleve::Result<()> {
    let cases: Vec<(Family, Params)> = vec![
        (Family::I, params(&[])),
        (Family::II, params(&[("alpha", "1/2")])),
        (Family::II, params(&[("alpha", "@a")])),
        (Family::III2p, params(&[("v1", "1"), ("v2", "0")])),
        (Family::IV, params(&[("alpha", "0"), ("beta", "-2")])),
        (Family::V3p, params(&[("alpha", "1/8"), ("beta", "-1/8"), ("gamma", "@g")])),
        (
            Family::VI,
            params(&[("alpha0", "1/2"), ("alpha1", "1/2"), ("alpha3", "1/2"), ("alpha4", "1/2")]),
        ),
    ];
    for (family, p) in cases {
        let r = classify(family, &p)?;
        let shown: Vec<String> = r.params.iter().map(|(k, v)| format!("{}={}", k, v)).collect();
        println!(
            "P_{:<5} {:<40} sm={:<8} count={:<9} irreducible={:<8} {}",
            family.to_string(),
            shown.join(" "),
            r.strongly_minimal.to_string(),
            r.algebraic_solutions.to_string(),
            r.irreducible.to_string(),
            r.geometric_structure,
        );
    }

    let full = classify(Family::IV, &params(&[("alpha", "@a"), ("beta", "-2/9")]))?;
    println!("\n{}", serde_json::to_string_pretty(&full).unwrap());
    Ok(())
}
