//! Config-driven experiment runner behind the `maxrigidity` binary.

pub mod config;
pub mod experiments;

use std::path::{Path, PathBuf};

use clap::Parser;
use serde_json::{json, Value};

pub use config::{Experiment, ExperimentConfig, OutputSpec, SCHEMA_VERSION};

use crate::error::{Error, Result};
use crate::svg::{emit_svg, Figure};

/// Result of one experiment before anything is written.
#[derive(Debug)]
pub struct Outcome {
    /// Every configured threshold held.
    pub passed: bool,
    pub summary: String,
    pub result: Value,
    pub csv: Option<Vec<u8>>,
    pub figure: Option<Figure>,
}

pub fn execute(experiment: Experiment, cfg: &ExperimentConfig) -> Result<Outcome> {
    use experiments::*;
    match experiment {
        Experiment::RigidityScan => rigidity_scan(cfg),
        Experiment::TwoValued => two_valued(cfg),
        Experiment::FixedPoints => fixed_points(cfg),
        Experiment::Certificate => certificate(cfg),
        Experiment::Dde => dde(cfg),
        Experiment::Lattice => lattice(cfg),
        Experiment::Cheng => cheng(cfg),
        Experiment::Poincare => poincare(cfg),
        Experiment::Scaling => scaling(cfg),
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)?;
    }
    std::fs::write(path, bytes)?;
    Ok(())
}

/// Runs `experiment` and writes the artifacts named in `cfg.output` under
/// `out_dir`. A seed override replaces the config seed.
pub fn run(
    cfg: &ExperimentConfig,
    experiment: Experiment,
    out_dir: &Path,
    seed: Option<u64>,
) -> Result<Outcome> {
    if let Some(e) = cfg.experiment {
        if e != experiment {
            return Err(Error::Config {
                path: "experiment".into(),
                message: format!("config is for `{e}` but `{experiment}` was requested"),
            });
        }
    }
    let mut cfg = cfg.clone();
    if let Some(s) = seed {
        cfg.seed = s;
    }
    let outcome = execute(experiment, &cfg)?;
    let out = &cfg.output;
    if let Some(p) = &out.json {
        let doc = json!({
            "schema_version": SCHEMA_VERSION,
            "experiment": experiment.name(),
            "seed": cfg.seed,
            "passed": outcome.passed,
            "summary": outcome.summary,
            "result": outcome.result,
        });
        let mut text = serde_json::to_string_pretty(&doc)?;
        text.push('\n');
        write_file(&out_dir.join(p), text.as_bytes())?;
    }
    if let Some(p) = &out.csv {
        match &outcome.csv {
            Some(bytes) => write_file(&out_dir.join(p), bytes)?,
            None => return Err(missing_artifact(experiment, "csv")),
        }
    }
    if let Some(p) = &out.svg {
        match &outcome.figure {
            Some(fig) => {
                let path = out_dir.join(p);
                if let Some(dir) = path.parent() {
                    std::fs::create_dir_all(dir)?;
                }
                emit_svg(fig, &path)?
            }
            None => return Err(missing_artifact(experiment, "svg")),
        }
    }
    Ok(outcome)
}

fn missing_artifact(e: Experiment, kind: &str) -> Error {
    Error::Config {
        path: format!("output.{kind}"),
        message: format!("`{e}` produces no {kind} output"),
    }
}

#[derive(Debug, Parser)]
#[command(name = "maxrigidity", version, about = "Run a configured numerical experiment")]
pub struct Args {
    /// One of: rigidity-scan, two-valued, fixed-points, certificate, dde,
    /// lattice, cheng, poincare, scaling.
    pub experiment: String,
    #[arg(long)]
    pub config: PathBuf,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    #[arg(long)]
    pub seed: Option<u64>,
}

/// Exit code 0 when every threshold holds, 1 on a threshold violation and
/// 2 on configuration, input or output errors.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = args
        .experiment
        .parse::<Experiment>()
        .and_then(|e| Ok((e, ExperimentConfig::load(&args.config)?)))
        .and_then(|(e, cfg)| run(&cfg, e, &args.out, args.seed));
    match result {
        Ok(o) => {
            println!("{}", o.summary);
            if o.passed {
                0
            } else {
                eprintln!("threshold violated");
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
