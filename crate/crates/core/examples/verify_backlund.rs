//! Symbolic verification of the P_II Bäcklund transformations, and a
//! refuted candidate.
//!
//! cargo run --example verify_backlund

use painleve::backlund::{builtin_pii, pii_candidate, verify_symbolic, PiiKind, Verification};
use painleve::parse::parse_expr;
use painleve::scalars::ExactScalar;

fn main() -> painleve::Result<()> {
    let alpha = ExactScalar::generic("alpha");
    for kind in PiiKind::ALL {
        let t = builtin_pii(kind, &alpha);
        let outcome = verify_symbolic(&t)?;
        println!("{}: {} -> {}", kind, t.source(), t.target());
        println!("    w = {}", t.map());
        println!("    verified: {}", outcome.is_verified());
        if let Some(locus) = t.singular_locus() {
            println!("    undefined on {}", locus);
        }
    }

    // w = z sends P_II(alpha) to P_II(alpha + 1) only if the residual vanishes
    let wrong = pii_candidate("naive shift", &alpha, 1, parse_expr("z")?)?;
    if let Verification::Refuted { residual } = verify_symbolic(&wrong)? {
        println!("naive shift refuted, residual {}", residual);
    }

    // composing T+ with T- is the identity on P_II(alpha)
    let up = builtin_pii(PiiKind::TPlus, &alpha);
    let down = builtin_pii(PiiKind::TMinus, up.target().param("alpha"));
    let round = up.then(&down)?;
    println!("T- after T+: w = {}", round.map());
    Ok(())
}
