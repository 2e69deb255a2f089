//! The computations behind each subcommand, independent of argument
//! parsing and output destinations.

use anyhow::{bail, Context};
use rayon::prelude::*;
use serde::Serialize;
use xxz_core::search::{find_extremum, find_threshold};
use xxz_core::spectrum::{spectrum_closed_n5, spectrum_numeric};
use xxz_core::{
    Engine, Evaluator, Measures, ModelParams, NumericRoute, ScanOptions, Sense, Spectrum, Threshold,
};

use crate::config::{Measure, RunConfig};

fn evaluator(cfg: &RunConfig) -> anyhow::Result<Evaluator> {
    Ok(Evaluator::new(cfg.engine, cfg.n)?
        .with_exchange(cfg.j)?
        .with_bond(cfg.bond)?)
}

fn check_closed_four_site(cfg: &RunConfig, temps: &[f64]) -> anyhow::Result<()> {
    if cfg.engine == Engine::ClosedForm && cfg.n == 4 && temps.iter().any(|&t| t > 0.0) {
        bail!("closed-form engine at N = 4 only covers T = 0; use --engine numeric or --temps 0");
    }
    Ok(())
}

/// One row per `(T, Δ)`, ordered by temperature then anisotropy. Points are
/// evaluated in parallel; order is fixed by the grid, not by completion.
pub fn sweep(cfg: &RunConfig) -> anyhow::Result<Vec<Measures>> {
    let ev = evaluator(cfg)?;
    let temps = cfg.temperatures();
    check_closed_four_site(cfg, &temps)?;
    let deltas = cfg.delta_grid();
    let points: Vec<(f64, f64)> = temps
        .iter()
        .flat_map(|&t| deltas.iter().map(move |&d| (t, d)))
        .collect();
    points
        .par_iter()
        .map(|&(t, d)| {
            ev.evaluate(d, t)
                .with_context(|| format!("evaluating delta = {d}, T = {t}"))
        })
        .collect()
}

fn single_temperature(cfg: &RunConfig) -> anyhow::Result<f64> {
    let t = match (cfg.t, cfg.temps.as_slice()) {
        (Some(t), _) => t,
        (None, [t]) => *t,
        _ => bail!("give a single temperature with --t"),
    };
    check_closed_four_site(cfg, &[t])?;
    Ok(t)
}

fn scan_options(cfg: &RunConfig) -> ScanOptions {
    ScanOptions {
        step: ScanOptions::default()
            .step
            .min(cfg.delta_max - cfg.delta_min),
        tol: cfg.tol,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExtremumReport {
    pub n: usize,
    pub j: f64,
    pub t: f64,
    pub engine: String,
    pub measure: Measure,
    pub sense: &'static str,
    pub interval: (f64, f64),
    pub delta: f64,
    pub value: f64,
    pub bracket: (f64, f64),
    pub grid_best: (f64, f64),
    pub at_boundary: bool,
    pub evaluations: usize,
}

pub fn extremum(cfg: &RunConfig) -> anyhow::Result<ExtremumReport> {
    let ev = evaluator(cfg)?;
    let t = single_temperature(cfg)?;
    let sense = cfg.sense();
    let measure = cfg.measure;
    let f = |d: f64| {
        let m = ev.evaluate(d, t)?;
        Ok(match measure {
            Measure::Concurrence => m.concurrence,
            Measure::LinearEntropy => m.linear_entropy,
        })
    };
    let e = find_extremum(f, cfg.delta_min, cfg.delta_max, sense, &scan_options(cfg))?;
    Ok(ExtremumReport {
        n: cfg.n,
        j: cfg.j,
        t,
        engine: cfg.engine.to_string(),
        measure,
        sense: match sense {
            Sense::Max => "max",
            Sense::Min => "min",
        },
        interval: (cfg.delta_min, cfg.delta_max),
        delta: e.argument,
        value: e.value,
        bracket: e.bracket,
        grid_best: e.grid_best,
        at_boundary: e.at_boundary,
        evaluations: e.evaluations,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThresholdReport {
    pub n: usize,
    pub j: f64,
    pub t: f64,
    pub engine: String,
    pub interval: (f64, f64),
    /// `found`, `already-entangled` or `never-entangled`.
    pub status: &'static str,
    pub threshold: Option<f64>,
    pub bracket: Option<(f64, f64)>,
}

/// Smallest `Δ` in the interval where the concurrence turns positive.
pub fn threshold(cfg: &RunConfig) -> anyhow::Result<ThresholdReport> {
    let ev = evaluator(cfg)?;
    let t = single_temperature(cfg)?;
    let witness = |d: f64| Ok(ev.evaluate(d, t)?.witness);
    let found = find_threshold(witness, cfg.delta_min, cfg.delta_max, &scan_options(cfg))?;
    let (status, threshold, bracket) = match found {
        Threshold::Found { delta, bracket } => ("found", Some(delta), Some(bracket)),
        Threshold::AlreadyPositive { .. } => ("already-entangled", None, None),
        Threshold::NeverPositive => ("never-entangled", None, None),
    };
    Ok(ThresholdReport {
        n: cfg.n,
        j: cfg.j,
        t,
        engine: cfg.engine.to_string(),
        interval: (cfg.delta_min, cfg.delta_max),
        status,
        threshold,
        bracket,
    })
}

/// Eigenvalues at `--delta` (default `--delta-min`). The oracle engine
/// diagonalizes the full matrix; the numeric engine works sector by sector.
pub fn spectrum(cfg: &RunConfig) -> anyhow::Result<Spectrum> {
    let delta = cfg.delta.unwrap_or(cfg.delta_min);
    let p = ModelParams::with_exchange(cfg.n, cfg.j, delta)?;
    Ok(match cfg.engine {
        Engine::ClosedForm if cfg.n == 5 => spectrum_closed_n5(delta, cfg.j),
        Engine::ClosedForm => bail!("closed-form spectrum exists only for N = 5"),
        Engine::Numeric => spectrum_numeric(&p, NumericRoute::Sectors)?,
        Engine::Oracle => spectrum_numeric(&p, NumericRoute::Full)?,
    })
}
