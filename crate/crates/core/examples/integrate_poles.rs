//! Adaptive integration with movable-pole detection.
//!
//! cargo run --example integrate_poles

use painleve::equations::{Family, PainleveEquation};
use painleve::numeric::{integrate, residual_fd, InitialCondition, IntegrateOptions, Status};

fn main() -> painleve::Result<()> {
    let p1 = PainleveEquation::with_values(Family::I, &[])?;
    let opts = IntegrateOptions::tolerances(1e-10, 1e-12);
    let traj = integrate(&p1, InitialCondition::new(0.0, 0.0, 0.0), 0.1, &opts)?;
    let end = traj.last().unwrap();
    println!("P_I: y(0.1) = {:.10e}  (t^3/6 = {:.10e})", end.state[0], 0.1f64.powi(3) / 6.0);

    for (eq, y0) in [(p1.clone(), 1.0), (PainleveEquation::with_values(Family::II, &["0".parse()?])?, 1.0)] {
        let traj = integrate(&eq, InitialCondition::new(0.0, y0, 0.0), 10.0, &opts)?;
        match traj.status {
            Status::PoleDetected { t_est, order } => {
                println!("{}: pole of order {} near t = {:.6} after {} samples", eq, order, t_est, traj.samples.len())
            }
            Status::Completed => println!("{}: no pole on [0, 10]", eq),
        }
    }

    let grid = IntegrateOptions::tolerances(1e-10, 1e-12).with_output_step(1e-3);
    let smooth = integrate(&p1, InitialCondition::new(0.0, 0.1, 0.2), 0.5, &grid)?;
    println!("finite-difference residual on a 1e-3 grid: {:.2e}", residual_fd(&p1, &smooth)?);
    Ok(())
}
