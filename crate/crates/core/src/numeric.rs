//! Adaptive integration of the Painleve equations with blow-up detection.
//!
//! Scalar equations are integrated as the first-order system
//! `(y, y')' = (y', f(y, y', t))`; `P_VI` is integrated directly as its
//! Hamiltonian system in `(y, x)`.  The stepper is the Dormand-Prince 5(4)
//! pair with a PI step-size controller.  Movable poles are detected when the
//! state exceeds a threshold, and the pole location is estimated by fitting
//! `|y| ~ c / |t - t_pole|^k` for `k = 1` and `k = 2`.

use std::collections::VecDeque;
use std::io::Write;

use serde::Serialize;

use crate::backlund::BacklundTransform;
use crate::diffpoly::{reduce_mod_equation, CompiledRatFunc, DiffRatFunc, Var};
use crate::equations::{PainleveEquation, Rhs};
use crate::error::{Error, Result};

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

// fifth-order weights minus embedded fourth-order weights
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

const SAFETY: f64 = 0.9;
const FAC_MIN: f64 = 0.2;
const FAC_MAX: f64 = 10.0;
const PI_BETA: f64 = 0.04;

/// Map denominators smaller than this in magnitude drop the sample.
pub const DENOMINATOR_FLOOR: f64 = 1e-8;

type State = [f64; 2];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IntegrateOptions {
    pub rtol: f64,
    pub atol: f64,
    /// Blow-up threshold on `max(|u1|, |u2|)`.
    pub blowup_threshold: f64,
    /// When set, steps are clipped to land on a uniform output grid and only
    /// grid points are recorded.
    pub output_step: Option<f64>,
    pub max_steps: usize,
}

impl Default for IntegrateOptions {
    fn default() -> Self {
        IntegrateOptions {
            rtol: 1e-8,
            atol: 1e-10,
            blowup_threshold: 1e8,
            output_step: None,
            max_steps: 1_000_000,
        }
    }
}

impl IntegrateOptions {
    pub fn tolerances(rtol: f64, atol: f64) -> Self {
        IntegrateOptions {
            rtol,
            atol,
            ..Default::default()
        }
    }

    pub fn with_output_step(mut self, h: f64) -> Self {
        self.output_step = Some(h);
        self
    }

    pub fn with_threshold(mut self, threshold: f64) -> Self {
        self.blowup_threshold = threshold;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Status {
    Completed,
    /// `order` is the pole order of the better-fitting ansatz; the choice
    /// between 1 and 2 is empirical.
    PoleDetected { t_est: f64, order: u32 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Sample {
    pub t: f64,
    /// `(y, y')` for scalar equations, `(y, x)` for `P_VI`.
    pub state: State,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Trajectory {
    pub samples: Vec<Sample>,
    pub status: Status,
    pub rtol: f64,
    pub atol: f64,
    /// Column names of the state, e.g. `["y", "y'"]`.
    pub columns: [String; 2],
    /// Times of samples removed by [`map_trajectory`].
    pub dropped: Vec<f64>,
}

impl Trajectory {
    pub fn last(&self) -> Option<&Sample> {
        self.samples.last()
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "t,{},{}", self.columns[0], self.columns[1])?;
        for s in &self.samples {
            writeln!(out, "{},{},{}", s.t, s.state[0], s.state[1])?;
        }
        Ok(())
    }

    /// Builds a trajectory from given samples (for tests and fixtures).
    pub fn from_samples(samples: Vec<Sample>, columns: [&str; 2]) -> Self {
        Trajectory {
            samples,
            status: Status::Completed,
            rtol: 0.0,
            atol: 0.0,
            columns: [columns[0].to_string(), columns[1].to_string()],
            dropped: Vec::new(),
        }
    }
}

/// Floating-point right-hand side of the first-order system.
struct System {
    first: Option<CompiledRatFunc>,
    second: CompiledRatFunc,
}

impl System {
    fn new(eq: &PainleveEquation) -> Result<Self> {
        if let Some((_, sym)) = eq
            .params()
            .iter()
            .find_map(|(k, v)| v.symbols().next().map(|s| (k, s)))
        {
            return Err(Error::GenericParameter(sym.to_string()));
        }
        let layout = eq.numeric_layout();
        Ok(match eq.rhs() {
            Rhs::Scalar(f) => System {
                first: None,
                second: f.compile(&layout)?,
            },
            Rhs::System { y, x } => System {
                first: Some(y.compile(&layout)?),
                second: x.compile(&layout)?,
            },
        })
    }

    fn eval(&self, t: f64, u: &State) -> State {
        let args = [t, u[0], u[1]];
        match &self.first {
            None => [u[1], self.second.eval(&args)],
            Some(first) => [first.eval(&args), self.second.eval(&args)],
        }
    }
}

fn axpy(u: &State, h: f64, terms: &[(f64, &State)]) -> State {
    let mut out = *u;
    for (c, k) in terms {
        out[0] += h * c * k[0];
        out[1] += h * c * k[1];
    }
    out
}

struct Step {
    next: State,
    k7: State,
    err: f64,
}

/// One Dormand-Prince step; `k1` is the derivative at `(t, u)`.
fn dopri_step(sys: &System, t: f64, u: &State, k1: &State, h: f64, opts: &IntegrateOptions) -> Step {
    let k2 = sys.eval(t + C2 * h, &axpy(u, h, &[(A21, k1)]));
    let k3 = sys.eval(t + C3 * h, &axpy(u, h, &[(A31, k1), (A32, &k2)]));
    let k4 = sys.eval(t + C4 * h, &axpy(u, h, &[(A41, k1), (A42, &k2), (A43, &k3)]));
    let k5 = sys.eval(
        t + C5 * h,
        &axpy(u, h, &[(A51, k1), (A52, &k2), (A53, &k3), (A54, &k4)]),
    );
    let k6 = sys.eval(
        t + h,
        &axpy(u, h, &[(A61, k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)]),
    );
    let next = axpy(u, h, &[(A71, k1), (A73, &k3), (A74, &k4), (A75, &k5), (A76, &k6)]);
    let k7 = sys.eval(t + h, &next);
    let mut sum = 0.0;
    for i in 0..2 {
        let e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
        let scale = opts.atol + opts.rtol * u[i].abs().max(next[i].abs());
        sum += (e / scale).powi(2);
    }
    let err = (sum / 2.0).sqrt();
    let finite = next.iter().chain(k7.iter()).all(|x| x.is_finite());
    Step {
        next,
        k7,
        err: if finite && err.is_finite() { err } else { f64::INFINITY },
    }
}

fn initial_step(sys: &System, t: f64, u: &State, k1: &State, dir: f64, opts: &IntegrateOptions) -> f64 {
    let scale = |i: usize| opts.atol + opts.rtol * u[i].abs();
    let d0 = ((u[0] / scale(0)).powi(2) + (u[1] / scale(1)).powi(2)).sqrt() / 2f64.sqrt();
    let d1 = ((k1[0] / scale(0)).powi(2) + (k1[1] / scale(1)).powi(2)).sqrt() / 2f64.sqrt();
    let h0 = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
    let u1 = axpy(u, dir * h0, &[(1.0, k1)]);
    let k2 = sys.eval(t + dir * h0, &u1);
    let d2 = (((k2[0] - k1[0]) / scale(0)).powi(2) + ((k2[1] - k1[1]) / scale(1)).powi(2)).sqrt()
        / 2f64.sqrt()
        / h0;
    let h1 = if d1.max(d2) <= 1e-15 {
        (h0 * 1e-3).max(1e-6)
    } else {
        (0.01 / d1.max(d2)).powf(0.2)
    };
    let h = (100.0 * h0).min(h1);
    if h.is_finite() && h > 0.0 {
        h
    } else {
        1e-6
    }
}

/// Least-squares fit of `|y|^(-1/k)` against `t` over the recent history;
/// returns `(t_pole, relative residual)`.
fn fit_pole(history: &VecDeque<(f64, f64)>, k: u32) -> Option<(f64, f64)> {
    let pts: Vec<(f64, f64)> = history
        .iter()
        .filter(|(_, y)| y.abs() > 0.0)
        .map(|(t, y)| (*t, y.abs().powf(-1.0 / k as f64)))
        .collect();
    if pts.len() < 3 {
        return None;
    }
    let n = pts.len() as f64;
    let mt = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let mu = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let stt: f64 = pts.iter().map(|p| (p.0 - mt).powi(2)).sum();
    let stu: f64 = pts.iter().map(|p| (p.0 - mt) * (p.1 - mu)).sum();
    if stt == 0.0 || stu == 0.0 {
        return None;
    }
    let slope = stu / stt;
    let intercept = mu - slope * mt;
    let spread = pts.iter().map(|p| p.1.abs()).fold(0.0, f64::max);
    let resid = pts
        .iter()
        .map(|p| (p.1 - (intercept + slope * p.0)).powi(2))
        .sum::<f64>()
        .sqrt()
        / spread.max(f64::MIN_POSITIVE);
    Some((-intercept / slope, resid))
}

fn estimate_pole(history: &VecDeque<(f64, f64)>) -> (f64, u32) {
    let fits = [(1u32, fit_pole(history, 1)), (2u32, fit_pole(history, 2))];
    let best = fits
        .iter()
        .filter_map(|(k, f)| f.map(|(tp, r)| (*k, tp, r)))
        .min_by(|a, b| a.2.total_cmp(&b.2));
    match best {
        Some((k, tp, _)) => (tp, k),
        None => (history.back().map(|p| p.0).unwrap_or(f64::NAN), 0),
    }
}

/// Initial data: `(t0, y0, y0')` for scalar equations, `(t0, y0, x0)` for
/// `P_VI`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct InitialCondition {
    pub t0: f64,
    pub state: State,
}

impl InitialCondition {
    pub fn new(t0: f64, u1: f64, u2: f64) -> Self {
        InitialCondition {
            t0,
            state: [u1, u2],
        }
    }
}

/// Integrates `eq` from `init` to `t_end` (either direction).
pub fn integrate(
    eq: &PainleveEquation,
    init: InitialCondition,
    t_end: f64,
    opts: &IntegrateOptions,
) -> Result<Trajectory> {
    let t0 = init.t0;
    if eq
        .family()
        .singular_times()
        .iter()
        .any(|s| (t0 - s).abs() <= 1e-12 * (1.0 + s.abs()))
    {
        return Err(Error::SingularInitialPoint(t0));
    }
    let sys = System::new(eq)?;
    let columns = match eq.rhs() {
        Rhs::Scalar(_) => ["y".to_string(), "y'".to_string()],
        Rhs::System { .. } => ["y".to_string(), "x".to_string()],
    };
    let mut traj = Trajectory {
        samples: vec![Sample {
            t: t0,
            state: init.state,
        }],
        status: Status::Completed,
        rtol: opts.rtol,
        atol: opts.atol,
        columns,
        dropped: Vec::new(),
    };
    if t_end == t0 {
        return Ok(traj);
    }
    let dir = (t_end - t0).signum();
    let span = (t_end - t0).abs();
    let mut t = t0;
    let mut u = init.state;
    let mut k1 = sys.eval(t, &u);
    if !k1.iter().all(|x| x.is_finite()) {
        return Err(Error::SingularInitialPoint(t0));
    }
    let mut h = initial_step(&sys, t, &u, &k1, dir, opts).min(span);
    if let Some(dt) = opts.output_step {
        h = h.min(dt);
    }
    let mut err_old = 1e-4f64;
    let mut history: VecDeque<(f64, f64)> = VecDeque::with_capacity(8);
    history.push_back((t, u[0]));
    let mut grid_index = 1usize;
    let mut steps = 0usize;
    let mut last_rejected = false;

    loop {
        let remaining = (t_end - t) * dir;
        if remaining <= 1e-14 * span {
            break;
        }
        steps += 1;
        if steps > opts.max_steps {
            return Err(Error::StepFailure { t, h });
        }
        let h_min = 1e-14 * t.abs().max(1.0);
        if h < h_min {
            return Err(Error::StepFailure { t, h });
        }
        // clip to the end point and the next output grid point
        let mut target = remaining;
        let mut on_grid = false;
        if let Some(dt) = opts.output_step {
            let next_grid = grid_index as f64 * dt;
            if next_grid <= span * (1.0 + 1e-12) && next_grid - (t - t0) * dir <= target {
                target = next_grid - (t - t0) * dir;
                on_grid = true;
            }
        }
        let mut hs = h;
        let clipped = hs >= target * (1.0 - 1e-12);
        if clipped {
            hs = target;
        }
        let step = dopri_step(&sys, t, &u, &k1, dir * hs, opts);
        if step.err <= 1.0 {
            t = if clipped && on_grid {
                t0 + dir * grid_index as f64 * opts.output_step.expect("grid")
            } else if clipped && !on_grid {
                t_end
            } else {
                t + dir * hs
            };
            u = step.next;
            k1 = step.k7;
            if history.len() == 6 {
                history.pop_front();
            }
            history.push_back((t, u[0]));
            let exploded = u[0].abs().max(u[1].abs()) > opts.blowup_threshold;
            if opts.output_step.is_none() || (clipped && on_grid) || exploded {
                traj.samples.push(Sample { t, state: u });
            }
            if clipped && on_grid {
                grid_index += 1;
            }
            if exploded {
                let (t_est, order) = estimate_pole(&history);
                traj.status = Status::PoleDetected { t_est, order };
                return Ok(traj);
            }
            let err = step.err.max(1e-10);
            let mut fac = SAFETY * err.powf(-(0.2 - 0.75 * PI_BETA)) * err_old.powf(PI_BETA);
            fac = fac.clamp(FAC_MIN, FAC_MAX);
            if last_rejected {
                fac = fac.min(1.0);
            }
            err_old = err;
            // keep the natural step size when the step was only clipped
            h = (if clipped { h.max(hs) } else { hs }) * fac;
            last_rejected = false;
        } else {
            let fac = if step.err.is_finite() {
                (SAFETY * step.err.powf(-0.2)).max(FAC_MIN)
            } else {
                FAC_MIN
            };
            h = hs * fac;
            last_rejected = true;
        }
    }
    if opts.output_step.is_some() {
        if let Some(last) = traj.samples.last() {
            if (last.t - t).abs() > 1e-12 * span {
                traj.samples.push(Sample { t, state: u });
            }
        }
    }
    Ok(traj)
}

/// Centres of uniformly spaced windows of five consecutive samples, with
/// their spacing.
fn uniform_windows(samples: &[Sample]) -> Vec<(usize, f64)> {
    let mut out = Vec::new();
    for i in 2..samples.len().saturating_sub(2) {
        let h = 0.25 * (samples[i + 2].t - samples[i - 2].t);
        let uniform = h != 0.0
            && (i - 2..i + 2).all(|j| (((samples[j + 1].t - samples[j].t) - h) / h).abs() <= 1e-6);
        if uniform {
            out.push((i, h));
        }
    }
    out
}

/// Maximum over interior points of `|u''_fd - f| / (1 + |f|)` with
/// five-point central differences (first derivatives for `P_VI`).  Only
/// uniformly spaced windows of consecutive samples are used.
pub fn residual_fd(eq: &PainleveEquation, traj: &Trajectory) -> Result<f64> {
    let sys = System::new(eq)?;
    let windows = uniform_windows(&traj.samples);
    if windows.is_empty() {
        let got = traj.samples.len().min(4);
        return Err(Error::InsufficientSamples { needed: 5, got });
    }
    let s = &traj.samples;
    let d1 = |i: usize, k: usize, h: f64| {
        (s[i - 2].state[k] - 8.0 * s[i - 1].state[k] + 8.0 * s[i + 1].state[k] - s[i + 2].state[k]) / (12.0 * h)
    };
    let mut worst = 0.0f64;
    for (i, h) in windows {
        let t = s[i].t;
        let r = match eq.rhs() {
            Rhs::Scalar(_) => {
                let u = |j: usize| s[j].state[0];
                let y = u(i);
                let d2y = (-u(i - 2) + 16.0 * u(i - 1) - 30.0 * y + 16.0 * u(i + 1) - u(i + 2)) / (12.0 * h * h);
                let f = sys.eval(t, &[y, d1(i, 0, h)])[1];
                (d2y - f).abs() / (1.0 + f.abs())
            }
            Rhs::System { .. } => {
                let f = sys.eval(t, &s[i].state);
                (0..2)
                    .map(|k| (d1(i, k, h) - f[k]).abs() / (1.0 + f[k].abs()))
                    .fold(0.0, f64::max)
            }
        };
        worst = if r.is_nan() { f64::INFINITY } else { worst.max(r) };
    }
    Ok(worst)
}

/// Pushes a solution of the transform's source through the map: `w` from
/// the map and `w'` from its total derivative reduced modulo the source.
pub fn map_trajectory(transform: &BacklundTransform, traj: &Trajectory) -> Result<Trajectory> {
    let layout = [Var::T, Var::dep("z", 0), Var::dep("z", 1)];
    let map = transform.map();
    let dmap = reduce_mod_equation(&map.total_derivative(), transform.source(), "z")?;
    let w = map.compile(&layout)?;
    let dw = dmap.compile(&layout)?;
    let denominators: Vec<CompiledRatFunc> = vec![w.clone(), dw.clone()];
    let mut out = Trajectory {
        samples: Vec::with_capacity(traj.samples.len()),
        status: traj.status,
        rtol: traj.rtol,
        atol: traj.atol,
        columns: ["w".to_string(), "w'".to_string()],
        dropped: Vec::new(),
    };
    for s in &traj.samples {
        let args = [s.t, s.state[0], s.state[1]];
        let singular = denominators
            .iter()
            .any(|f| f.eval_denominator(&args).abs() < DENOMINATOR_FLOOR);
        let value = [w.eval(&args), dw.eval(&args)];
        if singular || !value.iter().all(|x| x.is_finite()) {
            out.dropped.push(s.t);
        } else {
            out.samples.push(Sample { t: s.t, state: value });
        }
    }
    let total = traj.samples.len();
    if out.dropped.len() * 2 > total {
        return Err(Error::DenominatorBlowup {
            dropped: out.dropped.len(),
            total,
        });
    }
    Ok(out)
}

/// Numerical derivative helper kept for callers that want `f` at a sample.
pub fn eval_rhs(eq: &PainleveEquation, t: f64, state: [f64; 2]) -> Result<[f64; 2]> {
    Ok(System::new(eq)?.eval(t, &state))
}

/// Evaluates an expression in `(t, z, z')` at floating-point arguments.
pub fn eval_expr(f: &DiffRatFunc, layout: &[Var], args: &[f64]) -> Result<f64> {
    Ok(f.compile(layout)?.eval(args))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equations::{Family, Params};

    fn eq(family: Family, values: &[&str]) -> PainleveEquation {
        let vals: Vec<_> = values.iter().map(|v| v.parse().unwrap()).collect();
        PainleveEquation::with_values(family, &vals).unwrap()
    }

    #[test]
    fn p1_taylor_oracle() {
        let p1 = eq(Family::I, &[]);
        let traj = integrate(&p1, InitialCondition::new(0.0, 0.0, 0.0), 0.1, &IntegrateOptions::tolerances(1e-10, 1e-12)).unwrap();
        let end = traj.last().unwrap();
        assert_eq!(end.t, 0.1);
        // y = t^3/6 + t^8/336 + ...
        let oracle = 0.1f64.powi(3) / 6.0 + 0.1f64.powi(8) / 336.0;
        assert!((end.state[0] - oracle).abs() < 1e-12, "{}", end.state[0]);
    }

    #[test]
    fn p2_zero_is_fixed() {
        let p2 = eq(Family::II, &["0"]);
        let traj = integrate(&p2, InitialCondition::new(0.0, 0.0, 0.0), 2.0, &IntegrateOptions::default()).unwrap();
        assert!(traj.samples.iter().all(|s| s.state == [0.0, 0.0]));
    }

    #[test]
    fn p1_blows_up() {
        let p1 = eq(Family::I, &[]);
        let traj = integrate(&p1, InitialCondition::new(0.0, 1.0, 0.0), 10.0, &IntegrateOptions::default()).unwrap();
        match traj.status {
            Status::PoleDetected { t_est, order } => {
                assert!(t_est.is_finite() && t_est > 0.0 && t_est < 10.0);
                assert_eq!(order, 2);
                let last = traj.last().unwrap();
                assert!(last.state[0].abs().max(last.state[1].abs()) > 1e8);
            }
            other => panic!("expected a pole, got {:?}", other),
        }
    }

    #[test]
    fn p2_pole_is_simple() {
        let p2 = eq(Family::II, &["0"]);
        let traj = integrate(&p2, InitialCondition::new(0.0, 1.0, 1.0), 10.0, &IntegrateOptions::default()).unwrap();
        assert!(matches!(traj.status, Status::PoleDetected { order: 1, .. }), "{:?}", traj.status);
    }

    #[test]
    fn rejects_bad_inputs() {
        let p3 = eq(Family::III2p, &["1/3", "1/5"]);
        assert_eq!(
            integrate(&p3, InitialCondition::new(0.0, 1.0, 0.0), 1.0, &IntegrateOptions::default()),
            Err(Error::SingularInitialPoint(0.0))
        );
        let generic = eq(Family::II, &["@a"]);
        assert!(matches!(
            integrate(&generic, InitialCondition::new(0.0, 1.0, 0.0), 1.0, &IntegrateOptions::default()),
            Err(Error::GenericParameter(_))
        ));
        let p6 = PainleveEquation::build(Family::VI, &Params::from([
            ("alpha0".to_string(), "1/3".parse().unwrap()),
            ("alpha1".to_string(), "1/5".parse().unwrap()),
            ("alpha3".to_string(), "1/7".parse().unwrap()),
            ("alpha4".to_string(), "1/11".parse().unwrap()),
        ])).unwrap();
        assert!(matches!(
            integrate(&p6, InitialCondition::new(1.0, 0.3, 0.1), 2.0, &IntegrateOptions::default()),
            Err(Error::SingularInitialPoint(_))
        ));
        assert!(integrate(&p6, InitialCondition::new(0.3, 0.5, 0.1), 0.6, &IntegrateOptions::default()).is_ok());
    }

    #[test]
    fn output_grid_is_uniform() {
        let p2 = eq(Family::II, &["1/4"]);
        let opts = IntegrateOptions::tolerances(1e-10, 1e-12).with_output_step(1e-3);
        let traj = integrate(&p2, InitialCondition::new(0.0, 0.1, 0.2), 0.05, &opts).unwrap();
        assert_eq!(traj.samples.len(), 51);
        for (i, s) in traj.samples.iter().enumerate() {
            assert!((s.t - i as f64 * 1e-3).abs() < 1e-15);
        }
    }

    #[test]
    fn residual_examples() {
        let p1 = eq(Family::I, &[]);
        let opts = IntegrateOptions::tolerances(1e-10, 1e-12).with_output_step(1e-3);
        let traj = integrate(&p1, InitialCondition::new(0.0, 0.0, 0.0), 0.5, &opts).unwrap();
        assert!(residual_fd(&p1, &traj).unwrap() < 1e-4);

        let fake = Trajectory::from_samples(
            (0..20).map(|i| Sample { t: i as f64 * 0.01, state: [1.0, 0.0] }).collect(),
            ["y", "y'"],
        );
        // y'' = 0 against 6 + t
        let r = residual_fd(&p1, &fake).unwrap();
        let expected = (6.0 + 0.17) / (1.0 + 6.0 + 0.17);
        assert!((r - expected).abs() < 1e-12, "{}", r);

        let p2 = eq(Family::II, &["0"]);
        let zero = Trajectory::from_samples(
            (0..10).map(|i| Sample { t: i as f64 * 0.1, state: [0.0, 0.0] }).collect(),
            ["y", "y'"],
        );
        assert_eq!(residual_fd(&p2, &zero).unwrap(), 0.0);

        let short = Trajectory::from_samples(zero.samples[..4].to_vec(), ["y", "y'"]);
        assert!(matches!(residual_fd(&p2, &short), Err(Error::InsufficientSamples { .. })));
    }
}
