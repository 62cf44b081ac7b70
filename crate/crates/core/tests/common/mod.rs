#![allow(dead_code)]

use painleve::diffpoly::{DiffRatFunc, Var};
use painleve::scalars::{rational, Surd};
use rand::rngs::StdRng;
use rand::Rng;

fn random_atom(rng: &mut StdRng, max_order: u32) -> DiffRatFunc {
    match rng.gen_range(0..4) {
        0 => DiffRatFunc::rational(rational(rng.gen_range(-5..=5), rng.gen_range(1..=3))),
        1 => DiffRatFunc::t(),
        _ => DiffRatFunc::dep("y", rng.gen_range(0..=max_order)),
    }
}

/// Random rational expression in `y, y', y'', t` of bounded size: at most
/// `2^depth` leaves, and every divisor is `c + x^2` for an atom `x` and
/// rational `c > 0`.
pub fn random_expr(rng: &mut StdRng, depth: u32, max_order: u32) -> DiffRatFunc {
    if depth == 0 || rng.gen_bool(0.3) {
        return random_atom(rng, max_order);
    }
    let a = random_expr(rng, depth - 1, max_order);
    match rng.gen_range(0..7) {
        0 | 1 => a + random_expr(rng, depth - 1, max_order),
        2 => a - random_expr(rng, depth - 1, max_order),
        3 | 4 => a * random_expr(rng, depth - 1, max_order),
        5 => {
            let x = random_atom(rng, max_order);
            let c = DiffRatFunc::rational(rational(rng.gen_range(1..=4), rng.gen_range(1..=3)));
            a.checked_div(&(c + x.clone() * x)).expect("nonzero denominator")
        }
        _ => -a,
    }
}

pub fn random_rational_surd(rng: &mut StdRng) -> Surd {
    Surd::from_rational(rational(rng.gen_range(-9..=9), rng.gen_range(1..=4)))
}

/// Point assignment `t, y, y'` for exact evaluation.
pub fn point(t: Surd, y: Surd, yp: Surd) -> impl Fn(&Var) -> Option<Surd> {
    move |v: &Var| match v {
        Var::T => Some(t.clone()),
        v if v.order_of("y") == Some(0) => Some(y.clone()),
        v if v.order_of("y") == Some(1) => Some(yp.clone()),
        _ => None,
    }
}
