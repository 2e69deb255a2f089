use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use xxz_cli::commands;
use xxz_cli::config::{Measure, Overrides, RunConfig, SenseArg};
use xxz_cli::output::{write_spectrum, write_sweep};
use xxz_cli::verify::{delta_sign_bug, verify, VerifyOptions};
use xxz_core::Engine;

/// Exact diagonalization of the periodic XXZ ring: thermal and ground-state
/// pairwise concurrence and linear entropy.
#[derive(Parser)]
#[command(name = "xxz", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate every (T, Δ) grid point and write CSV.
    Sweep {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        range: RangeArgs,
        /// Explicit Δ values instead of the range (comma separated).
        #[arg(long, value_delimiter = ',')]
        deltas: Option<Vec<f64>>,
        /// Temperatures; 0 selects the ground state [default: 0,0.5,1,1.5,2].
        #[arg(long, value_delimiter = ',')]
        temps: Option<Vec<f64>>,
    },
    /// Locate the extremum of a measure over Δ at one temperature.
    Extremum {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        range: RangeArgs,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long, value_enum)]
        measure: Option<Measure>,
        /// Default: max for concurrence, min for linear entropy.
        #[arg(long, value_enum)]
        sense: Option<SenseArg>,
    },
    /// Find the Δ where pairwise entanglement first appears.
    Threshold {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        range: RangeArgs,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Dump the eigenvalues at one Δ as CSV.
    Spectrum {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        delta: Option<f64>,
    },
    /// Run the invariant and cross-route checks; exit 1 on any failure.
    Verify {
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Deliberately break one computation to confirm it is caught.
        #[arg(long, value_enum, hide = true)]
        inject_fault: Option<Fault>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Fault {
    DeltaSign,
}

#[derive(Args)]
struct ModelArgs {
    /// JSON or `key = value` file; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Number of ring sites [default: 5].
    #[arg(long)]
    n: Option<usize>,
    /// Exchange constant J [default: 1].
    #[arg(long)]
    j: Option<f64>,
    /// closed-form, numeric or oracle [default: closed-form].
    #[arg(long)]
    engine: Option<Engine>,
    /// Oracle pair is (bond, bond+1) [default: 0].
    #[arg(long)]
    bond: Option<usize>,
    /// Output file [default: stdout].
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RangeArgs {
    /// [default: 0]
    #[arg(long)]
    delta_min: Option<f64>,
    /// [default: 6]
    #[arg(long)]
    delta_max: Option<f64>,
    /// [default: 0.05]
    #[arg(long)]
    delta_step: Option<f64>,
}

#[derive(Args)]
struct SearchArgs {
    /// Temperature; 0 selects the ground state.
    #[arg(long)]
    t: Option<f64>,
    /// Target width in Δ [default: 1e-4].
    #[arg(long)]
    tol: Option<f64>,
}

impl ModelArgs {
    fn overrides(&self) -> Overrides {
        Overrides {
            n: self.n,
            j: self.j,
            engine: self.engine,
            bond: self.bond,
            out: self.out.clone(),
            ..Default::default()
        }
    }
}

impl RangeArgs {
    fn apply(&self, o: Overrides) -> Overrides {
        Overrides {
            delta_min: self.delta_min,
            delta_max: self.delta_max,
            delta_step: self.delta_step,
            ..o
        }
    }
}

impl SearchArgs {
    fn apply(&self, o: Overrides) -> Overrides {
        Overrides {
            t: self.t,
            tol: self.tol,
            ..o
        }
    }
}

fn sink(out: Option<&Path>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_json<T: Serialize>(out: Option<&Path>, value: &T) -> anyhow::Result<()> {
    let mut w = sink(out)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn resolve(model: &ModelArgs, flags: Overrides) -> anyhow::Result<RunConfig> {
    RunConfig::from_layers(model.config.as_deref(), flags)
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Sweep {
            model,
            range,
            deltas,
            temps,
        } => {
            let flags = Overrides {
                deltas,
                temps,
                ..range.apply(model.overrides())
            };
            let cfg = resolve(&model, flags)?;
            let rows = commands::sweep(&cfg)?;
            write_sweep(sink(cfg.out.as_deref())?, &rows)?;
        }
        Command::Extremum {
            model,
            range,
            search,
            measure,
            sense,
        } => {
            let flags = Overrides {
                measure,
                sense,
                ..search.apply(range.apply(model.overrides()))
            };
            let cfg = resolve(&model, flags)?;
            write_json(cfg.out.as_deref(), &commands::extremum(&cfg)?)?;
        }
        Command::Threshold {
            model,
            range,
            search,
        } => {
            let cfg = resolve(&model, search.apply(range.apply(model.overrides())))?;
            write_json(cfg.out.as_deref(), &commands::threshold(&cfg)?)?;
        }
        Command::Spectrum { model, delta } => {
            let flags = Overrides {
                delta,
                ..model.overrides()
            };
            let cfg = resolve(&model, flags)?;
            write_spectrum(sink(cfg.out.as_deref())?, &commands::spectrum(&cfg)?)?;
        }
        Command::Verify { out, inject_fault } => {
            let opts = match inject_fault {
                Some(Fault::DeltaSign) => VerifyOptions {
                    closed_n5: delta_sign_bug,
                },
                None => VerifyOptions::default(),
            };
            let report = verify(&opts);
            write_json(out.as_deref(), &report)?;
            if !report.is_pass() {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
