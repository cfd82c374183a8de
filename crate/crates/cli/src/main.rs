//! `novikov`: incidence tables, torus flow experiments and the self-test.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use novikov_core::battery::{run_battery, BatteryOptions};
use novikov_core::flow::{Scenario, Tolerances};
use novikov_core::io::problem_from_json;
use novikov_core::pipeline::{run_flow, run_novikov, Outputs, PipelineError, RunConfig};

const EXIT_VALIDATION: u8 = 2;
const EXIT_VERIFICATION: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "novikov", version, about = "Novikov incidence series and gradient-flow counts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct Common {
    /// Truncation order of emitted series.
    #[arg(long, global = true)]
    order: Option<i64>,
    /// JSON file overriding entries of the tolerance record.
    #[arg(long, global = true, value_name = "PATH")]
    tol_file: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true, value_name = "DIR", default_value = "out")]
    out: PathBuf,
    #[arg(long, global = true, overrides_with = "no_svg")]
    svg: bool,
    #[arg(long, global = true, overrides_with = "svg")]
    no_svg: bool,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Closed forms and expansions for a problem file.
    Novikov { problem: PathBuf },
    /// Both counting routes on a torus scenario file.
    Flow { scenario: PathBuf },
    /// Runs the acceptance battery.
    Selftest {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=10))]
        only: Option<u8>,
        /// Corrupts one return-map coefficient before the two-route check.
        #[arg(long)]
        inject_fault: bool,
        /// Prints per-criterion wall time on stderr.
        #[arg(long)]
        timings: bool,
    },
}

enum Failure {
    Validation(anyhow::Error),
    Verification,
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Validation(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Validation(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_VALIDATION)
        }
        Err(Failure::Verification) => {
            eprintln!("verification failed");
            ExitCode::from(EXIT_VERIFICATION)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let c = &cli.common;
    match &cli.command {
        Command::Novikov { problem } => {
            let text = read(problem)?;
            let p = problem_from_json(&text).with_context(|| format!("{}", problem.display()))?;
            let cfg = RunConfig {
                order: c.order.or(p.order).unwrap_or(64),
                seed: c.seed,
                svg: !c.no_svg,
                ..RunConfig::new("novikov", &problem.display().to_string())
            };
            if cfg.order < 0 {
                return Err(anyhow::anyhow!("--order must be non-negative, got {}", cfg.order).into());
            }
            let out = run_novikov(&p, &cfg).map_err(pipeline_error)?;
            emit(&c.out, &out)
        }
        Command::Flow { scenario } => {
            let text = read(scenario)?;
            let mut sc = Scenario::from_json(&text).with_context(|| format!("{}", scenario.display()))?;
            if let Some(path) = &c.tol_file {
                sc.tolerances = overlay(&sc.tolerances, &read(path)?).with_context(|| format!("{}", path.display()))?;
            }
            if let Some(k) = c.order {
                sc.k_max = k;
            }
            let cfg = RunConfig {
                order: sc.k_max,
                seed: c.seed,
                svg: !c.no_svg,
                tolerances: Some(sc.tolerances.clone()),
                ..RunConfig::new("flow", &scenario.display().to_string())
            };
            let out = run_flow(&sc, &cfg).map_err(pipeline_error)?;
            emit(&c.out, &out)
        }
        Command::Selftest { only, inject_fault, timings } => {
            let tol = Tolerances::default();
            println!("tolerances: {}", serde_json::to_string(&tol).expect("serializable"));
            let verdicts = run_battery(&BatteryOptions { only: *only, inject_fault: *inject_fault, seed: c.seed });
            for v in &verdicts {
                println!("{}", v.line());
                if *timings {
                    eprintln!("criterion {}: {:.2} s", v.id, v.seconds);
                }
            }
            let failed = verdicts.iter().filter(|v| !v.pass).count();
            println!("{} of {} criteria passed", verdicts.len() - failed, verdicts.len());
            if failed > 0 {
                return Err(Failure::Verification);
            }
            Ok(())
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display())).map_err(Failure::from)
}

fn pipeline_error(e: PipelineError) -> Failure {
    Failure::Validation(e.into())
}

/// Entries of `text` replace those of `base`.
fn overlay(base: &Tolerances, text: &str) -> anyhow::Result<Tolerances> {
    let mut merged = serde_json::to_value(base)?;
    let over: serde_json::Value = serde_json::from_str(text)?;
    let obj = over.as_object().context("tolerance file must hold a JSON object")?;
    for (k, v) in obj {
        merged[k] = v.clone();
    }
    let tol: Tolerances = serde_json::from_value(merged)?;
    tol.validate()?;
    Ok(tol)
}

fn emit(dir: &Path, out: &Outputs) -> Result<(), Failure> {
    std::fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    for (name, content) in &out.files {
        let path = dir.join(name);
        std::fs::write(&path, content).with_context(|| format!("cannot write {}", path.display()))?;
    }
    for m in &out.messages {
        println!("{m}");
    }
    println!("wrote {} files to {}", out.files.len(), dir.display());
    if out.verified {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}
