//! Numerical cross-check of a symbolically verified transformation: map a
//! P_II(alpha) trajectory through T+ and test it against P_II(alpha + 1).
//!
//! cargo run --example cross_validate

use painleve::backlund::{builtin_pii, verify_numeric_consistency, verify_symbolic, NumericCheck, PiiKind};
use painleve::numeric::{integrate, map_trajectory, InitialCondition, IntegrateOptions};

fn main() -> painleve::Result<()> {
    let t = builtin_pii(PiiKind::TPlus, &"1/4".parse()?);
    assert!(verify_symbolic(&t)?.is_verified());

    let opts = IntegrateOptions::tolerances(1e-10, 1e-12).with_output_step(0.05);
    let source = integrate(t.source(), InitialCondition::new(1.0, 0.1, -0.2), 1.2, &opts)?;
    let mapped = map_trajectory(&t, &source)?;
    println!("{:>6} {:>14} {:>14}", "t", "z", "w");
    for (s, m) in source.samples.iter().zip(&mapped.samples) {
        println!("{:>6.3} {:>14.8} {:>14.8}", s.t, s.state[0], m.state[0]);
    }

    let grid = [(1.0, 0.1, -0.2), (1.2, -0.15, -0.2), (1.4, 0.2, 0.0)];
    let report = verify_numeric_consistency(&t, &grid, &NumericCheck::default())?;
    for p in &report.points {
        println!("from ({}, {}, {}): residual {:.2e}", p.t0, p.z0, p.dz0, p.residual);
    }
    println!("max residual {:.2e}", report.max_residual);
    Ok(())
}
