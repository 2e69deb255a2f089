//! Run configuration. Values come from built-in defaults, then an optional
//! config file, then command-line flags, each layer overriding the last.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{bail, Context};
use serde::{Deserialize, Deserializer, Serialize};
use xxz_core::{Engine, Sense};

pub const DEFAULT_N: usize = 5;
pub const DEFAULT_DELTA_MIN: f64 = 0.0;
pub const DEFAULT_DELTA_MAX: f64 = 6.0;
pub const DEFAULT_DELTA_STEP: f64 = 0.05;
pub const DEFAULT_TEMPS: [f64; 5] = [0.0, 0.5, 1.0, 1.5, 2.0];
pub const DEFAULT_TOL: f64 = 1e-4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Measure {
    Concurrence,
    #[serde(alias = "linear_entropy")]
    LinearEntropy,
}

impl Measure {
    pub fn default_sense(self) -> Sense {
        match self {
            Measure::Concurrence => Sense::Max,
            Measure::LinearEntropy => Sense::Min,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum SenseArg {
    Max,
    Min,
}

impl From<SenseArg> for Sense {
    fn from(s: SenseArg) -> Self {
        match s {
            SenseArg::Max => Sense::Max,
            SenseArg::Min => Sense::Min,
        }
    }
}

fn engine_name<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Engine>, D::Error> {
    Option::<String>::deserialize(d)?
        .map(|s| Engine::from_str(&s).map_err(serde::de::Error::custom))
        .transpose()
}

/// One layer of settings; `None` defers to the layer below.
#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Overrides {
    pub n: Option<usize>,
    pub j: Option<f64>,
    #[serde(alias = "delta-min")]
    pub delta_min: Option<f64>,
    #[serde(alias = "delta-max")]
    pub delta_max: Option<f64>,
    #[serde(alias = "delta-step")]
    pub delta_step: Option<f64>,
    pub deltas: Option<Vec<f64>>,
    pub delta: Option<f64>,
    pub temps: Option<Vec<f64>>,
    pub t: Option<f64>,
    #[serde(default, deserialize_with = "engine_name")]
    pub engine: Option<Engine>,
    pub out: Option<PathBuf>,
    pub bond: Option<usize>,
    pub tol: Option<f64>,
    pub measure: Option<Measure>,
    pub sense: Option<SenseArg>,
}

macro_rules! layer {
    ($base:expr, $top:expr, $($f:ident),*) => {
        Overrides { $($f: $top.$f.or($base.$f)),* }
    };
}

impl Overrides {
    /// `top` wins wherever it is set.
    pub fn overlay(self, top: Overrides) -> Overrides {
        layer!(
            self, top, n, j, delta_min, delta_max, delta_step, deltas, delta, temps, t, engine,
            out, bond, tol, measure, sense
        )
    }
}

/// Parses a config file body: JSON if it parses as JSON, otherwise TOML
/// (which covers plain `key = value` lines).
pub fn parse_config(text: &str) -> anyhow::Result<Overrides> {
    let json_err = match serde_json::from_str::<Overrides>(text) {
        Ok(o) => return Ok(o),
        Err(e) => e,
    };
    match toml::from_str::<Overrides>(text) {
        Ok(o) => Ok(o),
        Err(toml_err) => {
            bail!("config is neither valid JSON ({json_err}) nor key = value text ({toml_err})")
        }
    }
}

pub fn load_config(path: &Path) -> anyhow::Result<Overrides> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_config(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Fully resolved settings.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub n: usize,
    pub j: f64,
    pub delta_min: f64,
    pub delta_max: f64,
    pub delta_step: f64,
    pub deltas: Option<Vec<f64>>,
    pub delta: Option<f64>,
    pub temps: Vec<f64>,
    pub t: Option<f64>,
    pub engine: Engine,
    pub out: Option<PathBuf>,
    pub bond: usize,
    pub tol: f64,
    pub measure: Measure,
    pub sense: Option<Sense>,
}

impl RunConfig {
    pub fn resolve(o: Overrides) -> anyhow::Result<Self> {
        let cfg = Self {
            n: o.n.unwrap_or(DEFAULT_N),
            j: o.j.unwrap_or(1.0),
            delta_min: o.delta_min.unwrap_or(DEFAULT_DELTA_MIN),
            delta_max: o.delta_max.unwrap_or(DEFAULT_DELTA_MAX),
            delta_step: o.delta_step.unwrap_or(DEFAULT_DELTA_STEP),
            deltas: o.deltas,
            delta: o.delta,
            temps: o.temps.unwrap_or_else(|| DEFAULT_TEMPS.to_vec()),
            t: o.t,
            engine: o.engine.unwrap_or(Engine::ClosedForm),
            out: o.out,
            bond: o.bond.unwrap_or(0),
            tol: o.tol.unwrap_or(DEFAULT_TOL),
            measure: o.measure.unwrap_or(Measure::Concurrence),
            sense: o.sense.map(Sense::from),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Config file (if given) under the flags.
    pub fn from_layers(config: Option<&Path>, flags: Overrides) -> anyhow::Result<Self> {
        let base = match config {
            Some(p) => load_config(p)?,
            None => Overrides::default(),
        };
        Self::resolve(base.overlay(flags))
    }

    fn validate(&self) -> anyhow::Result<()> {
        let nonneg = |x: f64| x.is_finite() && x >= 0.0;
        if !(self.j.is_finite() && self.j != 0.0) {
            bail!("--j must be finite and nonzero, got {}", self.j);
        }
        if !(nonneg(self.delta_min) && nonneg(self.delta_max)) || self.delta_min > self.delta_max {
            bail!(
                "need 0 <= delta-min <= delta-max, got [{}, {}]",
                self.delta_min,
                self.delta_max
            );
        }
        if !(self.delta_step.is_finite() && self.delta_step > 0.0) {
            bail!("--delta-step must be positive, got {}", self.delta_step);
        }
        if let Some(list) = &self.deltas {
            if list.is_empty() || !list.iter().all(|&d| nonneg(d)) {
                bail!("--deltas must be a nonempty list of values >= 0");
            }
        }
        if self.delta.is_some_and(|d| !nonneg(d)) || self.t.is_some_and(|t| !nonneg(t)) {
            bail!("--delta and --t must be finite and >= 0");
        }
        if self.temps.is_empty() || !self.temps.iter().all(|&t| nonneg(t)) {
            bail!("--temps must be a nonempty list of values >= 0");
        }
        if !(self.tol.is_finite() && self.tol > 0.0) {
            bail!("--tol must be positive, got {}", self.tol);
        }
        Ok(())
    }

    /// The explicit list if given, else `delta-min..=delta-max` by `delta-step`.
    /// Points are `min + i·step`, not accumulated sums.
    pub fn delta_grid(&self) -> Vec<f64> {
        if let Some(list) = &self.deltas {
            let mut v = list.clone();
            v.sort_by(f64::total_cmp);
            v.dedup();
            return v;
        }
        let span = self.delta_max - self.delta_min;
        let steps = (span / self.delta_step + 1e-9).floor() as usize;
        (0..=steps)
            .map(|i| (self.delta_min + i as f64 * self.delta_step).min(self.delta_max))
            .collect()
    }

    /// Temperatures ascending, duplicates removed.
    pub fn temperatures(&self) -> Vec<f64> {
        let mut v = self.temps.clone();
        v.sort_by(f64::total_cmp);
        v.dedup();
        v
    }

    pub fn sense(&self) -> Sense {
        self.sense.unwrap_or(self.measure.default_sense())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_and_plain_text_agree() {
        let json =
            parse_config(r#"{"n": 4, "temps": [0, 1.5], "engine": "numeric", "delta_step": 0.1}"#)
                .unwrap();
        let text =
            parse_config("n = 4\ntemps = [0, 1.5]\nengine = \"numeric\"\ndelta-step = 0.1\n")
                .unwrap();
        assert_eq!(json, text);
        assert_eq!(json.engine, Some(Engine::Numeric));
    }

    #[test]
    fn unknown_keys_and_engines_rejected() {
        assert!(parse_config(r#"{"nn": 4}"#).is_err());
        assert!(parse_config("engine = \"lanczos\"").is_err());
    }

    #[test]
    fn flags_override_file() {
        let file = parse_config(r#"{"n": 4, "j": 2.0, "tol": 0.001}"#).unwrap();
        let flags = Overrides {
            n: Some(6),
            ..Default::default()
        };
        let cfg = RunConfig::resolve(file.overlay(flags)).unwrap();
        assert_eq!((cfg.n, cfg.j, cfg.tol), (6, 2.0, 0.001));
        assert_eq!(cfg.temps, DEFAULT_TEMPS.to_vec());
    }

    #[test]
    fn grid_hits_endpoint_without_drift() {
        let cfg = RunConfig::resolve(Overrides {
            delta_min: Some(0.0),
            delta_max: Some(6.0),
            delta_step: Some(0.05),
            ..Default::default()
        })
        .unwrap();
        let g = cfg.delta_grid();
        assert_eq!(g.len(), 121);
        assert_eq!(g[60], 3.0);
        assert_eq!(*g.last().unwrap(), 6.0);
    }

    #[test]
    fn validation() {
        let bad = |o: Overrides| RunConfig::resolve(o).is_err();
        assert!(bad(Overrides {
            delta_step: Some(0.0),
            ..Default::default()
        }));
        assert!(bad(Overrides {
            delta_min: Some(-1.0),
            ..Default::default()
        }));
        assert!(bad(Overrides {
            temps: Some(vec![1.0, -0.5]),
            ..Default::default()
        }));
        assert!(bad(Overrides {
            j: Some(0.0),
            ..Default::default()
        }));
    }

    #[test]
    fn temperatures_sorted() {
        let cfg = RunConfig::resolve(Overrides {
            temps: Some(vec![2.0, 0.0, 1.0, 2.0]),
            ..Default::default()
        })
        .unwrap();
        assert_eq!(cfg.temperatures(), vec![0.0, 1.0, 2.0]);
    }
}
