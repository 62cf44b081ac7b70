use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use painleve::backlund::{
    riccati_check, verify_numeric_consistency, verify_symbolic, weyl_apply, weyl_orbit_member,
    NumericCheck, RiccatiCandidate, RiccatiOutcome, TransformSpec, Verification, VerificationReport,
};
use painleve::classify::classify;
use painleve::equations::{Family, PainleveEquation, Params};
use painleve::manifest::RunManifest;
use painleve::numeric::{integrate, InitialCondition, IntegrateOptions, Status};
use painleve::parse::parse_expr;
use painleve::scalars::{rational, ExactScalar, Symbol};
use painleve::sweep::{parse_range, summarize, sweep, sweep_params, write_csv};
use painleve::Error;

#[derive(Parser)]
#[command(name = "painleve", version, about = "Painleve equations: classification, Backlund transformations, integration")]
struct Cli {
    /// Emit JSON instead of text or CSV.
    #[arg(long, global = true)]
    json: bool,
    /// Write the main output here (a run manifest goes to <path>.manifest.json).
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Seed for randomized test grids.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

/// Parameter values as exact scalars, e.g. `1/2`, `@a`, `3*sqrt(2)`.
#[derive(Args, Clone, Debug, Default, Serialize)]
struct ParamArgs {
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    gamma: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    v1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    v2: Option<String>,
    #[arg(long, alias = "a0", allow_hyphen_values = true)]
    alpha0: Option<String>,
    #[arg(long, alias = "a1", allow_hyphen_values = true)]
    alpha1: Option<String>,
    #[arg(long, alias = "a2", allow_hyphen_values = true)]
    alpha2: Option<String>,
    #[arg(long, alias = "a3", allow_hyphen_values = true)]
    alpha3: Option<String>,
    #[arg(long, alias = "a4", allow_hyphen_values = true)]
    alpha4: Option<String>,
}

impl ParamArgs {
    fn raw(&self) -> BTreeMap<String, String> {
        [
            ("alpha", &self.alpha),
            ("beta", &self.beta),
            ("gamma", &self.gamma),
            ("v1", &self.v1),
            ("v2", &self.v2),
            ("alpha0", &self.alpha0),
            ("alpha1", &self.alpha1),
            ("alpha2", &self.alpha2),
            ("alpha3", &self.alpha3),
            ("alpha4", &self.alpha4),
        ]
        .into_iter()
        .filter_map(|(k, v)| v.clone().map(|v| (k.to_string(), v)))
        .collect()
    }

    fn exact(&self) -> Result<Params, Error> {
        self.raw()
            .into_iter()
            .map(|(k, v)| Ok((k, v.parse()?)))
            .collect()
    }
}

#[derive(Subcommand)]
enum Command {
    /// Classify one parameter tuple (JSON report).
    Classify {
        family: Family,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Verify a transformation definition file symbolically.
    Verify {
        file: PathBuf,
        /// Also cross-check numerically on a random grid.
        #[arg(long)]
        numeric: bool,
        #[arg(long, default_value_t = 3)]
        grid_size: usize,
    },
    /// Classify a grid of parameters; ranges are `a,b,c` or `lo:step:hi`.
    Sweep {
        family: Family,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Integrate an equation, writing the trajectory as CSV.
    Integrate {
        family: Family,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, allow_hyphen_values = true)]
        t0: f64,
        #[arg(long, allow_hyphen_values = true)]
        y0: f64,
        /// y'(t0) for scalar equations.
        #[arg(long, allow_hyphen_values = true)]
        dy0: Option<f64>,
        /// x(t0) for the P_VI system.
        #[arg(long, allow_hyphen_values = true)]
        x0: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        t_end: f64,
        #[arg(long, default_value_t = 1e-10)]
        rtol: f64,
        #[arg(long, default_value_t = 1e-12)]
        atol: f64,
        #[arg(long, default_value_t = 1e8)]
        threshold: f64,
        /// Uniform output spacing; every accepted step is written otherwise.
        #[arg(long)]
        step: Option<f64>,
    },
    /// Decide whether beta is in the P_II Weyl orbit of alpha.
    Orbit {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
    },
    /// Check whether y' = g(y, t) is a subvariety of the target equation.
    Riccati {
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[arg(long)]
        target: Family,
        #[command(flatten)]
        params: ParamArgs,
    },
}

struct Out {
    path: Option<PathBuf>,
}

impl Out {
    fn write(&self, text: &str) -> Result<(), Error> {
        match &self.path {
            Some(p) => fs::write(p, text).map_err(|e| Error::Invalid(format!("writing {}: {}", p.display(), e))),
            None => io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| Error::Invalid(format!("writing stdout: {}", e))),
        }
    }

    fn finish(&self, mut manifest: RunManifest) -> Result<(), Error> {
        if let Some(p) = &self.path {
            manifest.output(p);
            let mut name = p.as_os_str().to_owned();
            name.push(".manifest.json");
            manifest.finish(Path::new(&name))?;
        }
        Ok(())
    }
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize") + "\n"
}

fn run(cli: Cli) -> Result<u8, Error> {
    let out = Out { path: cli.output.clone() };
    match cli.command {
        Command::Classify { family, params } => {
            let mut manifest = RunManifest::start("classify");
            manifest.input("family", family);
            manifest.input("params", params.raw());
            let report = classify(family, &params.exact()?)?;
            out.write(&json(&report))?;
            out.finish(manifest)?;
            Ok(0)
        }
        Command::Verify { file, numeric, grid_size } => {
            let mut manifest = RunManifest::start("verify");
            manifest.input("file", file.display().to_string());
            let text = fs::read_to_string(&file)
                .map_err(|e| Error::Invalid(format!("reading {}: {}", file.display(), e)))?;
            let spec: TransformSpec = serde_json::from_str(&text)
                .map_err(|e| Error::Invalid(format!("{}: {}", file.display(), e)))?;
            let t = spec.build()?;
            let outcome = verify_symbolic(&t)?;
            let report = VerificationReport::new(&t, &outcome);
            let numeric_report = if numeric {
                manifest.input("seed", cli.seed);
                let mut rng = StdRng::seed_from_u64(cli.seed);
                let grid: Vec<(f64, f64, f64)> = (0..grid_size)
                    .map(|_| (rng.gen_range(1.0..1.4), rng.gen_range(-0.2..0.2), rng.gen_range(-0.3..-0.1)))
                    .collect();
                manifest.input("grid", &grid);
                let values: BTreeMap<Symbol, ExactScalar> = t
                    .named_symbols()
                    .into_iter()
                    .map(|s| (s, ExactScalar::from_rational(rational(rng.gen_range(-16..=16), 8))))
                    .collect();
                let concrete = t.specialize(&values)?;
                let mut n = verify_numeric_consistency(&concrete, &grid, &NumericCheck::default())?;
                n.specialization = values.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
                Some(n)
            } else {
                None
            };
            if cli.json {
                #[derive(Serialize)]
                struct Full<'a> {
                    #[serde(flatten)]
                    report: &'a VerificationReport,
                    #[serde(skip_serializing_if = "Option::is_none")]
                    numeric: Option<&'a painleve::backlund::NumericReport>,
                }
                out.write(&json(&Full { report: &report, numeric: numeric_report.as_ref() }))?;
            } else {
                let mut text = format!("{}: {} -> {}\n  map: {}\n  {}\n", report.name, report.source, report.target, report.map, report.status);
                if let Some(r) = &report.residual {
                    text += &format!("  residual: {}\n", r);
                }
                if let Some(l) = &report.singular_locus {
                    text += &format!("  singular locus: {}\n", l);
                }
                if report.degenerate {
                    text += "  degenerate: the pole term vanishes at this parameter\n";
                }
                if let Some(n) = &numeric_report {
                    text += &format!("  numeric max residual: {:e} over {} points\n", n.max_residual, n.points.len());
                    for (k, v) in &n.specialization {
                        text += &format!("  numeric check used {} = {}\n", k, v);
                    }
                }
                out.write(&text)?;
            }
            manifest.result("status", &report.status);
            out.finish(manifest)?;
            Ok(match outcome {
                Verification::Verified(_) => 0,
                Verification::Refuted { .. } => 1,
            })
        }
        Command::Sweep { family, params } => {
            let mut manifest = RunManifest::start("sweep");
            manifest.input("family", family);
            manifest.input("ranges", params.raw());
            let mut ranges = BTreeMap::new();
            for (k, v) in params.raw() {
                ranges.insert(k, parse_range(&v)?);
            }
            let missing: Vec<&str> = sweep_params(family).into_iter().filter(|n| !ranges.contains_key(*n)).collect();
            if !missing.is_empty() {
                return Err(Error::Invalid(format!("missing ranges for {}", missing.join(", "))));
            }
            let rows = sweep(family, &ranges)?;
            let summary = summarize(&rows);
            if cli.json {
                #[derive(Serialize)]
                struct Row {
                    params: BTreeMap<String, String>,
                    #[serde(skip_serializing_if = "Option::is_none")]
                    report: Option<painleve::classify::ClassificationReport>,
                    #[serde(skip_serializing_if = "Option::is_none")]
                    error: Option<String>,
                }
                let rows: Vec<Row> = rows
                    .iter()
                    .map(|r| Row {
                        params: r.params.iter().map(|(k, v)| (k.clone(), v.to_string())).collect(),
                        report: r.outcome.as_ref().ok().cloned(),
                        error: r.outcome.as_ref().err().map(|e| e.to_string()),
                    })
                    .collect();
                out.write(&json(&serde_json::json!({ "rows": rows, "summary": summary })))?;
            } else {
                let mut buf = Vec::new();
                write_csv(family, &rows, &mut buf)?;
                out.write(&String::from_utf8(buf).expect("CSV is UTF-8"))?;
                eprintln!("{}", serde_json::to_string(&summary).expect("summary serializes"));
            }
            manifest.result("summary", &summary);
            out.finish(manifest)?;
            Ok(0)
        }
        Command::Integrate { family, params, t0, y0, dy0, x0, t_end, rtol, atol, threshold, step } => {
            let mut manifest = RunManifest::start("integrate");
            manifest.input("family", family);
            manifest.input("params", params.raw());
            let eq = PainleveEquation::build(family, &params.exact()?)?;
            let second = if family.is_system() {
                x0.ok_or_else(|| Error::Invalid("P_VI needs --x0".into()))?
            } else {
                dy0.ok_or_else(|| Error::Invalid("scalar equations need --dy0".into()))?
            };
            let mut opts = IntegrateOptions::tolerances(rtol, atol).with_threshold(threshold);
            opts.output_step = step;
            manifest.input("initial", [t0, y0, second]);
            manifest.input("t_end", t_end);
            manifest.input("options", &opts);
            let traj = integrate(&eq, InitialCondition::new(t0, y0, second), t_end, &opts)?;
            if cli.json {
                out.write(&json(&traj))?;
            } else {
                let mut buf = Vec::new();
                traj.write_csv(&mut buf).map_err(|e| Error::Invalid(e.to_string()))?;
                out.write(&String::from_utf8(buf).expect("CSV is UTF-8"))?;
                match traj.status {
                    Status::Completed => eprintln!("completed, {} samples", traj.samples.len()),
                    Status::PoleDetected { t_est, order } => eprintln!(
                        "pole detected near t = {} (fitted pole order {}, empirical), {} samples",
                        t_est,
                        order,
                        traj.samples.len()
                    ),
                }
            }
            manifest.result("status", traj.status);
            manifest.result("tolerances", [rtol, atol]);
            out.finish(manifest)?;
            Ok(0)
        }
        Command::Orbit { alpha, beta } => {
            let mut manifest = RunManifest::start("orbit");
            manifest.input("alpha", &alpha);
            manifest.input("beta", &beta);
            let (a, b): (ExactScalar, ExactScalar) = (alpha.parse()?, beta.parse()?);
            let word = weyl_orbit_member(&a, &b);
            if let Some(w) = &word {
                debug_assert_eq!(weyl_apply(w, &a), b);
            }
            if cli.json {
                out.write(&json(&serde_json::json!({
                    "alpha": a.to_string(),
                    "beta": b.to_string(),
                    "member": word.is_some(),
                    "word": word.as_ref().map(|w| w.to_string()),
                })))?;
            } else {
                out.write(&match &word {
                    Some(w) => format!("yes, word {}\n", w),
                    None => "no\n".to_string(),
                })?;
            }
            manifest.result("member", word.is_some());
            out.finish(manifest)?;
            Ok(0)
        }
        Command::Riccati { g, target, params } => {
            let mut manifest = RunManifest::start("riccati");
            manifest.input("g", &g);
            manifest.input("target", target);
            manifest.input("params", params.raw());
            let eq = PainleveEquation::build(target, &params.exact()?)?;
            let cand = RiccatiCandidate::new(parse_expr(&g)?, eq)?;
            let outcome = riccati_check(&cand)?;
            let (status, residual) = match &outcome {
                RiccatiOutcome::Subvariety => ("subvariety", None),
                RiccatiOutcome::NotSubvariety { residual } => ("not-subvariety", Some(residual.to_string())),
            };
            if cli.json {
                out.write(&json(&serde_json::json!({
                    "g": cand.g().to_string(),
                    "target": cand.target().to_string(),
                    "status": status,
                    "residual": residual,
                })))?;
            } else {
                let mut text = format!("{}\n", status);
                if let Some(r) = &residual {
                    text += &format!("residual: {}\n", r);
                }
                out.write(&text)?;
            }
            manifest.result("status", status);
            out.finish(manifest)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(2)
        }
    }
}
