mod config;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use twr_mec::oracle::validate_with;
use twr_mec::sweep::{trial_channels, write_csv};
use twr_mec::{
    check_feasible, evaluate_schedule, run_sweep, solve, Error, OracleConfig, Scheme, SweepConfig, ValidationReport,
};

const EXIT_INFEASIBLE: u8 = 1;
const EXIT_VALIDATION: u8 = 2;
const EXIT_CONFIG: u8 = 3;

#[derive(Parser)]
#[command(name = "twr-mec", version, about = "Energy-optimal scheduling for two-way relay edge computing")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Output {
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one instance and print a JSON report.
    Solve {
        #[arg(long)]
        config: Option<PathBuf>,
        /// Draws the channels from this seed unless the config fixes them.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_parser = parse_scheme)]
        scheme: Option<Scheme>,
        #[arg(long, value_enum, default_value = "json")]
        output: Output,
    },
    /// Average energy against the deadline over Rayleigh fading draws; writes CSV.
    Sweep {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        t_min: Option<f64>,
        #[arg(long)]
        t_max: Option<f64>,
        #[arg(long)]
        t_points: Option<usize>,
        /// CSV path; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the solver against brute force on seeded instances.
    Validate {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value_t = 50)]
        instances: usize,
        #[arg(long, default_value_t = 0.01)]
        tol: f64,
    },
}

fn parse_scheme(s: &str) -> Result<Scheme, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Error carrying the process exit code.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl From<anyhow::Error> for Failure {
    fn from(error: anyhow::Error) -> Self {
        Failure {
            code: EXIT_CONFIG,
            error,
        }
    }
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        anyhow::Error::from(error).into()
    }
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn run_solve(config: Option<PathBuf>, seed: Option<u64>, scheme: Option<Scheme>) -> Result<(), Failure> {
    let mut map = config::load(config.as_deref())?;
    config::set(&mut map, "seed", seed);
    config::set(&mut map, "scheme", scheme.map(|s| s.as_str()));
    let resolved = config::resolve(map)?;
    let params = resolved.params();
    let sweep = &resolved.sweep;
    let (chan, seed) = match resolved.channels {
        Some(c) if seed.is_none() => (c, None),
        _ => (
            trial_channels(sweep.seed, 0, sweep.avg_power_loss, params.noise_power),
            Some(sweep.seed),
        ),
    };
    let solution = match solve(&params, &chan, &sweep.search) {
        Ok(s) => s,
        Err(Error::Infeasible(reason)) => {
            print_json(&json!({
                "status": "infeasible",
                "scheme": sweep.search.scheme,
                "deadline_T": params.deadline,
                "seed": seed,
                "channels": chan,
                "error": reason,
            }))?;
            return Err(Failure {
                code: EXIT_INFEASIBLE,
                error: anyhow::anyhow!("instance is infeasible"),
            });
        }
        Err(e) => return Err(e.into()),
    };
    let reevaluated = evaluate_schedule(&params, &chan, &solution.schedule)?;
    let verdict = check_feasible(&params, &chan, &solution.schedule, 1e-9 * params.deadline);
    print_json(&json!({
        "status": "ok",
        "scheme": solution.scheme,
        "candidate_label": solution.candidate_label,
        "seed": seed,
        "params": params,
        "channels": chan,
        "schedule": solution.schedule,
        "energy": solution.energy,
        "reevaluated_total": reevaluated.total,
        "feasibility": {
            "feasible": verdict.is_feasible(),
            "violations": verdict.violations,
            "duration_total": solution.schedule.total_duration(),
        },
    }))?;
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn run_sweep_cmd(
    config: Option<PathBuf>,
    seed: Option<u64>,
    trials: Option<usize>,
    t_min: Option<f64>,
    t_max: Option<f64>,
    t_points: Option<usize>,
    out: Option<PathBuf>,
) -> Result<(), Failure> {
    let mut map = config::load(config.as_deref())?;
    config::set(&mut map, "seed", seed);
    config::set(&mut map, "n_trials", trials);
    config::set(&mut map, "t_min", t_min);
    config::set(&mut map, "t_max", t_max);
    config::set(&mut map, "t_points", t_points);
    let resolved = config::resolve(map)?;
    let result = run_sweep(&resolved.sweep)?;
    match out {
        Some(path) => {
            let file = File::create(&path).with_context(|| format!("creating {}", path.display()))?;
            let mut w = BufWriter::new(file);
            write_csv(&result.records, &mut w)
                .and_then(|_| w.flush())
                .with_context(|| format!("writing {}", path.display()))?;
        }
        None => write_csv(&result.records, io::stdout().lock()).context("writing CSV to stdout")?,
    }
    Ok(())
}

#[derive(Serialize)]
struct InstanceOutcome {
    trial: u64,
    #[serde(rename = "deadline_T")]
    deadline: f64,
    #[serde(flatten)]
    report: Option<ValidationReport>,
    note: Option<String>,
}

fn run_validate(config: Option<PathBuf>, instances: usize, tol: f64) -> Result<(), Failure> {
    if tol.is_nan() || tol < 0.0 {
        return Err(anyhow::anyhow!("--tol must be >= 0, got {tol}").into());
    }
    let resolved = config::resolve(config::load(config.as_deref())?)?;
    let sweep = &resolved.sweep;
    let deadlines = SweepConfig { t_points: 5, ..*sweep }.deadlines();
    let oracle = OracleConfig::default();
    let mut outcomes = Vec::new();
    let mut failures = 0usize;
    let mut max_gap = f64::NEG_INFINITY;
    for trial in 0..instances as u64 {
        let chan = trial_channels(sweep.seed, trial, sweep.avg_power_loss, sweep.params.noise_power);
        for &t in &deadlines {
            let params = sweep.params.with_deadline(t);
            let (report, note) = match validate_with(&params, &chan, tol, &sweep.search, &oracle) {
                Ok(r) => {
                    max_gap = max_gap.max(r.gap);
                    if !r.passed {
                        failures += 1;
                    }
                    (Some(r), None)
                }
                // Both solvers finding nothing is agreement.
                Err(Error::Infeasible(msg)) => {
                    let oracle_found = twr_mec::brute_force(&params, &chan, &oracle).is_ok();
                    if oracle_found {
                        failures += 1;
                    }
                    (None, Some(msg))
                }
                Err(e) => return Err(e.into()),
            };
            outcomes.push(InstanceOutcome {
                trial,
                deadline: t,
                report,
                note,
            });
        }
    }
    let passed = failures == 0;
    print_json(&json!({
        "passed": passed,
        "instances": instances,
        "deadlines": deadlines,
        "seed": sweep.seed,
        "rel_tol": tol,
        "checked": outcomes.len(),
        "failures": failures,
        "max_gap": if max_gap.is_finite() { Some(max_gap) } else { None },
        "results": outcomes,
    }))?;
    if passed {
        Ok(())
    } else {
        Err(Failure {
            code: EXIT_VALIDATION,
            error: anyhow::anyhow!("{failures} instance(s) exceeded the tolerance"),
        })
    }
}

fn main() -> ExitCode {
    // Usage errors share the configuration exit code; 2 means a failed validation.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_CONFIG) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Solve {
            config,
            seed,
            scheme,
            output: Output::Json,
        } => run_solve(config, seed, scheme),
        Command::Sweep {
            config,
            seed,
            trials,
            t_min,
            t_max,
            t_points,
            out,
        } => run_sweep_cmd(config, seed, trials, t_min, t_max, t_points, out),
        Command::Validate { config, instances, tol } => run_validate(config, instances, tol),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}
