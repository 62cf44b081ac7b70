//! Exact parameters: rationals, surds and generic symbols.
//!
//! cargo run --example exact_scalars

use painleve::scalars::{rational, ExactScalar};

fn main() -> painleve::Result<()> {
    let half: ExactScalar = "1/2".parse()?;
    let r = "9/8".parse::<ExactScalar>()?.principal_sqrt()?;
    println!("sqrt(9/8) = {}  ~ {:.12}", r, r.to_f64()?);
    println!("(sqrt(9/8))^2 = {}", r.square()?);

    let s: ExactScalar = "1/2 + 3*sqrt(2)".parse()?;
    let inv = s.inverse()?;
    println!("1/({}) = {}", s, inv);
    println!("check: {}", s.try_mul(&inv)?);

    // lattice tests: 1/2 + Z
    for x in ["3/2", "-5/2", "1", "sqrt(2)"] {
        let v: ExactScalar = x.parse()?;
        println!("{:>8} in 1/2 + Z: {}", x, v.is_in_lattice(&rational(1, 2), 1));
    }

    // a generic symbol never lands in a lattice
    let g = &ExactScalar::generic("a") + &half;
    println!("{} is generic: {}, in Z: {}", g, g.has_generics(), g.is_integer());
    Ok(())
}
