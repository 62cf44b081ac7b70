//! Riccati subvarieties: the Airy-type solutions of P_II.
//!
//! cargo run --example riccati

use painleve::backlund::{riccati_check, RiccatiCandidate, RiccatiOutcome};
use painleve::equations::{Family, PainleveEquation};
use painleve::parse::parse_expr;

fn main() -> painleve::Result<()> {
    let g = parse_expr("-y^2 - t/2")?;
    for alpha in ["-1/2", "0", "1/2"] {
        let eq = PainleveEquation::with_values(Family::II, &[alpha.parse()?])?;
        let candidate = RiccatiCandidate::new(g.clone(), eq.clone())?;
        match riccati_check(&candidate)? {
            RiccatiOutcome::Subvariety => println!("y' = {} lies on {}", g, eq),
            RiccatiOutcome::NotSubvariety { residual } => {
                println!("y' = {} leaves {} (residual {})", g, eq, residual)
            }
        }
    }
    let plus = parse_expr("y^2 + t/2")?;
    let eq = PainleveEquation::with_values(Family::II, &["1/2".parse()?])?;
    println!("y' = {} on {}: {:?}", plus, eq, riccati_check(&RiccatiCandidate::new(plus.clone(), eq.clone())?)?);
    Ok(())
}
