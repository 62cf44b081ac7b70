//! The affine Weyl group acting on the P_II parameter.
//!
//! cargo run --example weyl_orbit

use painleve::backlund::{weyl_apply, weyl_orbit_member, WeylWord};
use painleve::scalars::ExactScalar;

fn main() -> painleve::Result<()> {
    let alpha: ExactScalar = "1/3".parse()?;
    for word in ["S", "T+T+", "S T-", "T+ S T+"] {
        let w: WeylWord = word.parse()?;
        println!("{:>8} . {} = {}", w.to_string(), alpha, weyl_apply(&w, &alpha));
    }

    for (a, b) in [("0", "3"), ("1/3", "-4/3"), ("1/3", "1/2"), ("@a", "@a + 2")] {
        let (a, b): (ExactScalar, ExactScalar) = (a.parse()?, b.parse()?);
        match weyl_orbit_member(&a, &b) {
            Some(w) => println!("{} ~ {} via {}", a, b, w),
            None => println!("{} and {} lie in different orbits", a, b),
        }
    }

    // each word realizes a chain of verified transformations
    let w: WeylWord = "T+T+".parse()?;
    for t in w.transforms(&alpha) {
        println!("  {}: {} -> {}", t.name(), t.source(), t.target());
    }
    Ok(())
}
