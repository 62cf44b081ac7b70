//! Differential rational functions: total derivatives and reduction
//! modulo an equation.
//!
//! cargo run --example reduce_derivatives

use painleve::diffpoly::{reduce_mod_equation, Var};
use painleve::equations::{Family, PainleveEquation};
use painleve::parse::parse_expr;
use painleve::scalars::Surd;

fn main() -> painleve::Result<()> {
    let p2 = PainleveEquation::with_values(Family::II, &["@alpha".parse()?])?;
    let a = parse_expr("y'^2 - y^4 - t*y^2 - 2*@alpha*y")?;
    println!("a        = {}", a);
    let da = a.total_derivative();
    println!("a'       = {}", da);
    println!("a' mod P_II = {}", reduce_mod_equation(&da, &p2, "y")?);

    let q = parse_expr("(y'' + y)/(y^2 + t)")?;
    let p1 = PainleveEquation::with_values(Family::I, &[])?;
    let r = reduce_mod_equation(&q, &p1, "y")?;
    println!("q mod P_I = {}", r);
    let at = |v: &Var| match v.order_of("y") {
        Some(0) => Some(Surd::from_integer(2)),
        Some(1) => Some(Surd::from_integer(-1)),
        _ if *v == Var::T => Some(Surd::from_integer(1)),
        _ => None,
    };
    println!("at t = 1, y = 2, y' = -1: {}", r.eval(&at).unwrap());
    Ok(())
}
