//! One entry point for pair observables at `(Δ, T)` through any of the
//! three evaluation paths. `T = 0` always goes through ground-state data,
//! never through `β = ∞`.

use std::fmt;
use std::str::FromStr;

use crate::error::{domain, Error, Result};
use crate::hamiltonian::ModelParams;
use crate::oracle::{
    ground_ensemble, purity_linear_entropy, reduce_to_pair, thermal_ensemble, wootters_witness,
    DensityMatrix, MAX_ORACLE_SITES,
};
use crate::pairstate::PairState;
use crate::spectrum::{
    ground_state_n4, ground_state_n5, ground_state_numeric, spectrum_closed_n5, spectrum_numeric,
    GroundState, NumericRoute, MAX_SECTOR_SITES,
};
use crate::thermo::{gzz, gzz_fd, internal_energy, log_partition, DEFAULT_FD_STEP};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Engine {
    /// Closed-form spectra (N = 5 at any T, N = 4 at T = 0).
    ClosedForm,
    /// Momentum-sector diagonalization with finite-difference `Δ`-slopes.
    Numeric,
    /// Full density matrix, partial trace and Wootters concurrence.
    Oracle,
}

impl Engine {
    pub fn name(self) -> &'static str {
        match self {
            Engine::ClosedForm => "closed-form",
            Engine::Numeric => "numeric",
            Engine::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closed-form" | "closed" => Ok(Engine::ClosedForm),
            "numeric" => Ok(Engine::Numeric),
            "oracle" => Ok(Engine::Oracle),
            other => domain(format!(
                "unknown engine '{other}' (expected closed-form, numeric or oracle)"
            )),
        }
    }
}

/// Everything reported for one `(Δ, T)` point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Measures {
    pub n_sites: usize,
    pub exchange: f64,
    pub delta: f64,
    pub temperature: f64,
    /// Absent at `T = 0`.
    pub ln_z: Option<f64>,
    pub internal_energy: f64,
    pub gzz: f64,
    pub concurrence: f64,
    /// Concurrence before clipping at zero.
    pub witness: f64,
    pub linear_entropy: f64,
    pub engine: Engine,
}

/// Evaluates pair observables for a fixed ring and engine.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Evaluator {
    pub engine: Engine,
    pub n_sites: usize,
    pub exchange: f64,
    /// Oracle pair is `(bond, bond + 1 mod N)`.
    pub bond: usize,
    pub fd_step: f64,
}

impl Evaluator {
    pub fn new(engine: Engine, n_sites: usize) -> Result<Self> {
        let ev = Self {
            engine,
            n_sites,
            exchange: 1.0,
            bond: 0,
            fd_step: DEFAULT_FD_STEP,
        };
        ev.check()?;
        Ok(ev)
    }

    pub fn with_exchange(mut self, exchange: f64) -> Result<Self> {
        self.exchange = exchange;
        self.check()?;
        Ok(self)
    }

    pub fn with_bond(mut self, bond: usize) -> Result<Self> {
        self.bond = bond;
        self.check()?;
        Ok(self)
    }

    fn check(&self) -> Result<()> {
        ModelParams::with_exchange(self.n_sites, self.exchange, 0.0)?;
        match self.engine {
            Engine::ClosedForm if !matches!(self.n_sites, 4 | 5) => {
                Err(Error::Unsupported(format!(
                    "closed-form engine covers N = 4 (T = 0) and N = 5, got N = {}",
                    self.n_sites
                )))
            }
            Engine::Numeric if self.n_sites > MAX_SECTOR_SITES => Err(Error::Capacity {
                what: "numeric engine",
                max: MAX_SECTOR_SITES,
                got: self.n_sites,
            }),
            Engine::Oracle if self.n_sites > MAX_ORACLE_SITES => Err(Error::Capacity {
                what: "oracle engine",
                max: MAX_ORACLE_SITES,
                got: self.n_sites,
            }),
            _ if self.bond >= self.n_sites => domain(format!(
                "bond {} out of range for N = {}",
                self.bond, self.n_sites
            )),
            _ => Ok(()),
        }
    }

    fn params(&self, delta: f64) -> Result<ModelParams> {
        ModelParams::with_exchange(self.n_sites, self.exchange, delta)
    }

    pub fn evaluate(&self, delta: f64, temperature: f64) -> Result<Measures> {
        let p = self.params(delta)?;
        if !(temperature.is_finite() && temperature >= 0.0) {
            return domain(format!(
                "temperature must be finite and >= 0, got {temperature}"
            ));
        }
        match self.engine {
            Engine::Oracle => self.evaluate_oracle(&p, temperature),
            _ if temperature == 0.0 => {
                let g = self.ground(&p)?;
                let gzz = 2.0 * g.d_energy_d_delta / (self.n_sites as f64 * self.exchange);
                Ok(self.measures_from(delta, 0.0, None, g.energy, gzz))
            }
            Engine::ClosedForm => {
                if self.n_sites != 5 {
                    return Err(Error::Unsupported(
                        "closed-form engine at N = 4 is limited to T = 0".into(),
                    ));
                }
                let beta = 1.0 / temperature;
                let s = spectrum_closed_n5(delta, self.exchange);
                let g = gzz(&s, beta, 5)? / self.exchange;
                Ok(self.measures_from(
                    delta,
                    temperature,
                    Some(log_partition(&s, beta)?),
                    internal_energy(&s, beta)?,
                    g,
                ))
            }
            Engine::Numeric => {
                let beta = 1.0 / temperature;
                let s = spectrum_numeric(&p, NumericRoute::Sectors)?;
                let g = gzz_fd(&p, beta, self.fd_step)?;
                Ok(self.measures_from(
                    delta,
                    temperature,
                    Some(log_partition(&s, beta)?),
                    internal_energy(&s, beta)?,
                    g,
                ))
            }
        }
    }

    /// Ground energy and `Δ`-slope, in units including `J`.
    pub fn ground(&self, p: &ModelParams) -> Result<GroundState> {
        let scale = |g: GroundState| GroundState {
            energy: g.energy * self.exchange,
            d_energy_d_delta: g.d_energy_d_delta * self.exchange,
        };
        match (self.engine, self.n_sites) {
            (Engine::ClosedForm, 5) => Ok(scale(ground_state_n5(p.anisotropy)?)),
            (Engine::ClosedForm, 4) => Ok(scale(ground_state_n4(p.anisotropy))),
            _ => ground_state_numeric(p, self.fd_step),
        }
    }

    fn measures_from(
        &self,
        delta: f64,
        temperature: f64,
        ln_z: Option<f64>,
        u: f64,
        gzz: f64,
    ) -> Measures {
        let pair = PairState::from_thermo_with_exchange(u, gzz, delta, self.n_sites, self.exchange);
        Measures {
            n_sites: self.n_sites,
            exchange: self.exchange,
            delta,
            temperature,
            ln_z,
            internal_energy: u,
            gzz,
            concurrence: pair.concurrence(),
            witness: pair.witness(),
            linear_entropy: pair.linear_entropy(),
            engine: self.engine,
        }
    }

    fn evaluate_oracle(&self, p: &ModelParams, temperature: f64) -> Result<Measures> {
        let (state, ln_z, u) = if temperature == 0.0 {
            let g = ground_ensemble(p)?;
            (g.state, None, g.energy)
        } else {
            let t = thermal_ensemble(p, 1.0 / temperature)?;
            (t.state, Some(t.ln_z), t.internal_energy)
        };
        let pair = self.pair_of(&state)?;
        let witness = wootters_witness(&pair)?;
        Ok(Measures {
            n_sites: self.n_sites,
            exchange: self.exchange,
            delta: p.anisotropy,
            temperature,
            ln_z,
            internal_energy: u,
            gzz: pair.zz(0, 1),
            concurrence: witness.max(0.0),
            witness,
            linear_entropy: purity_linear_entropy(&pair),
            engine: Engine::Oracle,
        })
    }

    fn pair_of(&self, state: &DensityMatrix) -> Result<DensityMatrix> {
        reduce_to_pair(state, self.bond, (self.bond + 1) % self.n_sites)
    }
}
