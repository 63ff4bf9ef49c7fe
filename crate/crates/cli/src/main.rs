//! Command-line front end: `fourfold compute <file|expression> [options]`.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use fourfold::fixtures::parse_entry;
use fourfold::link::{lift_to_sphere, RpCurve};
use fourfold::pipeline::{run, RunOptions, RunOutput};
use fourfold::{HomoPoly, TraceConfig, Vec4};
use serde_json::json;

#[derive(Parser)]
#[command(name = "fourfold", version, about = "Fourfold pushoff invariant of real algebraic surfaces in RP^3")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Trace the self-intersection curve of F = 0 and compute the invariant.
    Compute(ComputeArgs),
}

#[derive(clap::Args)]
struct ComputeArgs {
    /// Path to a polynomial file, or the polynomial itself (e.g. "x*y*z + t^3").
    input: String,
    /// Pushoff distance; 0 picks one from the curve geometry.
    #[arg(long, default_value_t = 0.0)]
    epsilon: f64,
    #[arg(long, default_value_t = 0.01)]
    step: f64,
    #[arg(long, default_value_t = 10_000)]
    seeds: usize,
    /// Independent random projections per linking number.
    #[arg(long, default_value_t = 5)]
    projections: usize,
    #[arg(long, default_value_t = 0)]
    rng_seed: u64,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Write curve, pushoff and lifted polylines into this directory.
    #[arg(long)]
    export_curves: Option<PathBuf>,
    #[arg(long, default_value_t = 1e-10)]
    tol_residual: f64,
    #[arg(long, default_value_t = 1e-4)]
    tol_gamma: f64,
    /// Include wall-clock timings in the report.
    #[arg(long)]
    timings: bool,
}

impl ComputeArgs {
    fn config(&self) -> TraceConfig {
        TraceConfig {
            step: self.step,
            epsilon: self.epsilon,
            seeds: self.seeds,
            projections: self.projections,
            rng_seed: self.rng_seed,
            residual_tol: self.tol_residual,
            gamma_tol: self.tol_gamma,
            ..TraceConfig::default()
        }
    }
}

/// A failure with the exit code it maps to.
struct Failure {
    code: u8,
    err: anyhow::Error,
}

impl From<fourfold::Error> for Failure {
    fn from(e: fourfold::Error) -> Self {
        Failure { code: e.exit_code() as u8, err: e.into() }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(err: anyhow::Error) -> Self {
        Failure { code: 1, err }
    }
}

fn read_input(input: &str) -> Result<HomoPoly, Failure> {
    let path = Path::new(input);
    if path.is_file() {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Ok(parse_entry(&text)?.poly)
    } else {
        Ok(HomoPoly::parse(input)?)
    }
}

fn write_polyline(dir: &Path, name: &str, points: &[Vec4]) -> anyhow::Result<()> {
    let path = dir.join(name);
    let mut f = fs::File::create(&path).with_context(|| format!("creating {}", path.display()))?;
    for v in points {
        writeln!(f, "{} {} {} {}", v[0], v[1], v[2], v[3])?;
    }
    Ok(())
}

/// Writes one file per base component, pushoff loop and lifted S^3 loop, plus `index.json`.
fn export_curves(dir: &Path, out: &RunOutput) -> anyhow::Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut index = Vec::new();
    for (c, p) in out.components.iter().zip(&out.pushoffs) {
        let name = format!("component_{}.txt", c.id);
        write_polyline(dir, &name, &c.positions())?;
        index.push(json!({
            "file": name,
            "kind": "component",
            "component": c.id,
            "antipodal_closure": c.antipodal_closure,
        }));
        for (j, lp) in p.loops.iter().enumerate() {
            let name = format!("pushoff_{}_{}.txt", c.id, j);
            write_polyline(dir, &name, &lp.points)?;
            index.push(json!({
                "file": name,
                "kind": "pushoff",
                "component": c.id,
                "loop": j,
                "antipodal_closure": lp.antipodal_closure,
                "labels": lp.labels,
                "epsilon": p.epsilon,
            }));
        }
        let lifts = [("lift_component", RpCurve::from_component(c)), ("lift_pushoff", RpCurve::from_pushoff(p))];
        for (kind, curve) in lifts {
            for (j, lp) in lift_to_sphere(&curve).loops.iter().enumerate() {
                let name = format!("{kind}_{}_{}.txt", c.id, j);
                write_polyline(dir, &name, lp)?;
                index.push(json!({ "file": name, "kind": kind, "component": c.id, "loop": j }));
            }
        }
    }
    let text = serde_json::to_string_pretty(&json!({ "curves": index }))?;
    fs::write(dir.join("index.json"), text)?;
    Ok(())
}

fn compute(args: &ComputeArgs) -> Result<(), Failure> {
    let f = read_input(&args.input)?;
    let out = run(&f, &args.config(), &RunOptions { timings: args.timings })?;
    let text = serde_json::to_string_pretty(&out.report).context("serializing report")?;
    match &args.json {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => println!("{text}"),
    }
    if let Some(dir) = &args.export_curves {
        export_curves(dir, &out)?;
    }
    for w in &out.report.warnings {
        eprintln!("warning: {w}");
    }
    if args.json.is_some() {
        eprintln!("invariant: {} (mod 8: {})", out.report.invariant, out.report.invariant_mod8);
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Compute(args) => compute(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.err);
            ExitCode::from(f.code)
        }
    }
}
