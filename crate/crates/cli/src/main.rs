//! `sumbound` command-line front end.
//!
//! Exit codes: 0 success, 1 verification found a violation, 2 invalid input.

mod csv;
mod files;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use sumbound::bounds::{bound_report, BoundKind, BoundReport, Relation};
use sumbound::families::FamilyName;
use sumbound::sweep::{find_saturation, sweep, SweepSpec, ThetaRange};
use sumbound::verify::{random_verify, PropertyStats, VerifyConfig, Violation};

use crate::files::{ObservableFile, StateFile};

#[derive(Parser)]
#[command(name = "sumbound", version, about = "Sum uncertainty bounds for N quantum observables")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate every bound for an observable file and a state file.
    Bound {
        #[arg(long)]
        observables: PathBuf,
        #[arg(long)]
        state: PathBuf,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep a state family and emit `theta,lhs,cb_bound,tb_bound` CSV.
    Sweep {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 1000)]
        points: usize,
        #[command(flatten)]
        range: RangeArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the angles where the uncertainty sum meets a bound.
    Saturate {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_parser = parse_with::<BoundKind>)]
        bound: BoundKind,
        #[command(flatten)]
        range: RangeArgs,
    },
    /// Randomized verification of every inequality.
    Verify {
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Comma-separated matrix dimensions.
        #[arg(long, value_delimiter = ',', default_value = "2,3,4,8")]
        dims: Vec<usize>,
        /// Number of observables per instance, `LO..HI` (inclusive) or `N`.
        #[arg(long, default_value = "2..6", value_parser = parse_n_range)]
        n_obs: (usize, usize),
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
        /// Fraction of trials using a mixed state.
        #[arg(long, default_value_t = 0.3)]
        mixed_frac: f64,
        /// Fraction of trials built on a common eigenstate.
        #[arg(long, default_value_t = 0.0)]
        eigen_frac: f64,
        /// Worker threads (default: all cores). Output does not depend on it.
        #[arg(long)]
        threads: Option<usize>,
        /// Violations listed in the printed summary.
        #[arg(long, default_value_t = 20)]
        max_violations: usize,
    },
    /// Write a family's observables (and optionally its state at one angle) as files.
    Export {
        #[arg(long, value_parser = parse_with::<FamilyName>)]
        family: FamilyName,
        #[arg(long)]
        observables: PathBuf,
        #[arg(long, requires = "theta")]
        state: Option<PathBuf>,
        #[arg(long, allow_negative_numbers = true)]
        theta: Option<f64>,
        #[arg(long)]
        degrees: bool,
    },
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long, value_parser = parse_with::<FamilyName>)]
    family: FamilyName,
    #[arg(long, value_parser = parse_with::<Relation>)]
    kind: Relation,
}

#[derive(Args)]
struct RangeArgs {
    /// Half-open angle range `LO HI` (default 0 to 2 pi).
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
    range: Option<Vec<f64>>,
    /// Interpret angles given on the command line as degrees.
    #[arg(long)]
    degrees: bool,
}

impl RangeArgs {
    fn resolve(&self) -> Result<ThetaRange, Failure> {
        match &self.range {
            None => Ok(ThetaRange::full()),
            Some(v) => {
                let (lo, hi) = (to_radians(v[0], self.degrees), to_radians(v[1], self.degrees));
                ThetaRange::new(lo, hi).map_err(|e| Failure::Input(e.to_string()))
            }
        }
    }
}

fn to_radians(x: f64, degrees: bool) -> f64 {
    if degrees {
        x.to_radians()
    } else {
        x
    }
}

fn parse_with<T: std::str::FromStr<Err = sumbound::Error>>(s: &str) -> Result<T, String> {
    s.parse().map_err(|e: sumbound::Error| e.to_string())
}

fn parse_n_range(s: &str) -> Result<(usize, usize), String> {
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("`{t}`: {e}"));
    match s.split_once("..") {
        Some((lo, hi)) => Ok((parse(lo)?, parse(hi.trim_start_matches('='))?)),
        None => {
            let n = parse(s)?;
            Ok((n, n))
        }
    }
}

enum Failure {
    Input(String),
    Violations,
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Failure::Input(format!("stdout: {e}")))
        }
    }
}

#[derive(Serialize)]
struct BoundOutput {
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
    #[serde(flatten)]
    report: BoundReport,
}

#[derive(Serialize)]
struct VerifyOutput<'a> {
    config: &'a VerifyConfig,
    trials_run: usize,
    passed: bool,
    violation_count: usize,
    violations: &'a [Violation],
    properties: &'a std::collections::BTreeMap<&'static str, PropertyStats>,
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("plain data serializes") + "\n"
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Bound { observables, state, out } => {
            let file = ObservableFile::read(&observables).map_err(Failure::Input)?;
            let set = file.to_set().map_err(|e| Failure::Input(format!("{}: {e}", observables.display())))?;
            let psi = StateFile::read(&state)
                .and_then(|f| f.to_state())
                .map_err(|e| Failure::Input(format!("{}: {e}", state.display())))?;
            let report = bound_report(&set, &psi).map_err(|e| Failure::Input(e.to_string()))?;
            emit(out.as_deref(), &to_json(&BoundOutput { labels: file.labels, report }))
        }
        Command::Sweep { family, points, range, out } => {
            let spec = SweepSpec { family: family.family, kind: family.kind, points, range: range.resolve()? };
            let result = sweep(&spec).map_err(|e| Failure::Input(e.to_string()))?;
            emit(out.as_deref(), &csv::sweep_csv(&result))
        }
        Command::Saturate { family, bound, range } => {
            let angles = find_saturation(family.family, family.kind, bound, range.resolve()?)
                .map_err(|e| Failure::Input(e.to_string()))?;
            let mut text = String::new();
            for theta in angles {
                // Avoid printing "-0.000000000".
                let theta = if theta.abs() < 5e-10 { 0.0 } else { theta };
                text.push_str(&format!("{theta:.9}\n"));
            }
            emit(None, &text)
        }
        Command::Verify { trials, seed, dims, n_obs, tolerance, mixed_frac, eigen_frac, threads, max_violations } => {
            let cfg = VerifyConfig {
                trials,
                dims,
                n_range: n_obs,
                seed,
                tolerance,
                state_mix: mixed_frac,
                eigen_frac,
            };
            cfg.validate().map_err(|e| Failure::Input(e.to_string()))?;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads.unwrap_or(0))
                .build()
                .map_err(|e| Failure::Input(format!("threads: {e}")))?;
            let summary = pool.install(|| random_verify(&cfg)).map_err(|e| Failure::Input(e.to_string()))?;
            let shown = summary.violations.len().min(max_violations);
            let output = VerifyOutput {
                config: &cfg,
                trials_run: summary.trials_run,
                passed: summary.passed(),
                violation_count: summary.violations.len(),
                violations: &summary.violations[..shown],
                properties: &summary.properties,
            };
            emit(None, &to_json(&output))?;
            // Wall time varies run to run, so it stays off stdout.
            eprintln!("elapsed: {:.3}s", summary.elapsed.as_secs_f64());
            if summary.passed() {
                Ok(())
            } else {
                Err(Failure::Violations)
            }
        }
        Command::Export { family, observables, state, theta, degrees } => {
            let labels = family.labels().iter().map(|s| s.to_string()).collect();
            let file = ObservableFile::from_observables(&family.observables(), Some(labels));
            emit(Some(&observables), &file.to_json())?;
            if let (Some(path), Some(theta)) = (state, theta) {
                let psi = family.state(to_radians(theta, degrees));
                emit(Some(&path), &StateFile::from_state(&psi).to_json())?;
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violations) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
