//! Complete eigenspectra: closed forms for the five- and four-site rings and
//! a numeric path through the eigensolver.
//!
//! Five-site levels, with `c₁ = cos(2kπ/5)`, `c₂ = cos(4kπ/5)`, `k = 1..5`:
//!
//! * `E₀ = 5[1 + (Δ−1)/2]` (no reversed spin)
//! * `E₁,ₖ = 3 + (Δ−1)/2 + 2c₁` (one reversed spin)
//! * `E₂,ₖ± = (5 − Δ + 2c₂)/2 ± √((Δ − c₂)² + 2(1 + c₁))` (two reversed spins)
//!
//! each doubled by the global spin flip that maps `r ↔ 5 − r`.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::hamiltonian::{block_matrix, full_matrix, ModelParams, MAX_FULL_SITES};
use crate::linalg::{eigh_reducible, eigvalsh, DenseMatrix, Scalar};

/// Largest ring accepted by the momentum-sector route.
pub const MAX_SECTOR_SITES: usize = 16;

/// Tolerance for grouping numerically equal energies.
pub const DEGENERACY_TOL: f64 = 1e-9;

/// Symmetry sector `(r, k)`: reversed-spin count and momentum index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Sector {
    pub reversed: usize,
    pub momentum: usize,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Level {
    pub energy: f64,
    /// `∂E/∂Δ`, present only for closed-form levels.
    pub d_energy_d_delta: Option<f64>,
    pub multiplicity: usize,
    pub sector: Option<Sector>,
}

/// Eigenvalues of one ring Hamiltonian, sorted ascending by energy.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    n_sites: usize,
    levels: Vec<Level>,
}

impl Spectrum {
    pub fn new(n_sites: usize, mut levels: Vec<Level>) -> Self {
        levels.sort_by(|a, b| a.energy.total_cmp(&b.energy));
        Self { n_sites, levels }
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn total_dim(&self) -> usize {
        self.levels.iter().map(|l| l.multiplicity).sum()
    }

    pub fn is_complete(&self) -> bool {
        self.total_dim() == 1usize << self.n_sites
    }

    pub fn has_derivatives(&self) -> bool {
        self.levels.iter().all(|l| l.d_energy_d_delta.is_some())
    }

    pub fn min_energy(&self) -> Option<f64> {
        self.levels.first().map(|l| l.energy)
    }

    pub fn max_energy(&self) -> Option<f64> {
        self.levels.last().map(|l| l.energy)
    }

    /// Energies repeated by multiplicity, ascending.
    pub fn energies(&self) -> Vec<f64> {
        self.levels
            .iter()
            .flat_map(|l| std::iter::repeat_n(l.energy, l.multiplicity))
            .collect()
    }

    /// Number of states within `tol` of the ground energy.
    pub fn ground_degeneracy(&self, tol: f64) -> usize {
        let Some(e0) = self.min_energy() else {
            return 0;
        };
        self.levels
            .iter()
            .take_while(|l| l.energy - e0 <= tol)
            .map(|l| l.multiplicity)
            .sum()
    }

    /// Clusters of equal energies (within `tol`) as (energy, total multiplicity).
    pub fn distinct(&self, tol: f64) -> Vec<(f64, usize)> {
        let mut out: Vec<(f64, usize)> = Vec::new();
        for l in &self.levels {
            match out.last_mut() {
                Some((e, m)) if l.energy - *e <= tol => *m += l.multiplicity,
                _ => out.push((l.energy, l.multiplicity)),
            }
        }
        out
    }

    /// Every level moved by `c`.
    pub fn shifted(&self, c: f64) -> Self {
        Self {
            n_sites: self.n_sites,
            levels: self
                .levels
                .iter()
                .map(|l| Level {
                    energy: l.energy + c,
                    ..*l
                })
                .collect(),
        }
    }
}

/// All eigenvalues of a self-adjoint matrix, ascending.
pub fn eig_self_adjoint<T: Scalar>(m: &DenseMatrix<T>) -> Result<Vec<f64>> {
    eigvalsh(m)
}

fn cosines(k: usize) -> (f64, f64) {
    let theta = TAU * k as f64 / 5.0;
    (theta.cos(), (2.0 * theta).cos())
}

/// `(E₂,ₖ₊, E₂,ₖ₋)` and their `Δ`-derivatives at `J = 1`.
fn two_flip_pair(delta: f64, k: usize) -> [(f64, f64); 2] {
    let (c1, c2) = cosines(k);
    let centre = (5.0 - delta + 2.0 * c2) / 2.0;
    let root = ((delta - c2).powi(2) + 2.0 * (1.0 + c1)).sqrt();
    let slope = (delta - c2) / root;
    [(centre + root, -0.5 + slope), (centre - root, -0.5 - slope)]
}

/// The 32-state spectrum of the five-site ring from the closed forms, each
/// level carrying its analytic `Δ`-derivative.
///
/// The formulas are analytic in `Δ`, so negative arguments are accepted for
/// finite differencing even though the model is studied at `Δ ≥ 0`.
pub fn spectrum_closed_n5(delta: f64, exchange: f64) -> Spectrum {
    let levels = closed_n5_levels(delta)
        .into_iter()
        .map(|(e, de, sector)| Level {
            energy: exchange * e,
            d_energy_d_delta: Some(exchange * de),
            multiplicity: 2,
            sector: Some(sector),
        })
        .collect();
    Spectrum::new(5, levels)
}

/// `(E, ∂E/∂Δ, sector)` at `J = 1` in fixed order: `E₀`, then per `k`
/// `E₁,ₖ, E₂,ₖ₊, E₂,ₖ₋`.
fn closed_n5_levels(delta: f64) -> Vec<(f64, f64, Sector)> {
    let sector = |reversed, momentum| Sector { reversed, momentum };
    let mut out = Vec::with_capacity(16);
    out.push((5.0 * (1.0 + (delta - 1.0) / 2.0), 2.5, sector(0, 5)));
    for k in 1..=5 {
        let (c1, _) = cosines(k);
        out.push((3.0 + (delta - 1.0) / 2.0 + 2.0 * c1, 0.5, sector(1, k)));
        for (e, de) in two_flip_pair(delta, k) {
            out.push((e, de, sector(2, k)));
        }
    }
    out
}

/// Ground-state energy and its `Δ`-derivative.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GroundState {
    pub energy: f64,
    pub d_energy_d_delta: f64,
}

/// `E₂,₁₋` and its derivative for the five-site ring (`J = 1`).
///
/// Fails with [`Error::ModelDomain`] if `E₂,₁₋` is not the minimum of the
/// closed-form spectrum at this `Δ`.
pub fn ground_state_n5(delta: f64) -> Result<GroundState> {
    let [_, (energy, slope)] = two_flip_pair(delta, 1);
    let min = spectrum_closed_n5(delta, 1.0)
        .min_energy()
        .expect("closed spectrum is nonempty");
    if energy - min > 1e-12 * (1.0 + min.abs()) {
        return Err(Error::ModelDomain(format!(
            "E(2,1,-) = {energy} is not the ground level ({min}) at delta = {delta}"
        )));
    }
    Ok(GroundState {
        energy,
        d_energy_d_delta: slope,
    })
}

/// `E_gs = 2 − Δ − √(Δ² + 8)` for the four-site ring (`J = 1`).
pub fn ground_state_n4(delta: f64) -> GroundState {
    let root = (delta * delta + 8.0).sqrt();
    GroundState {
        energy: 2.0 - delta - root,
        d_energy_d_delta: -1.0 - delta / root,
    }
}

/// How [`spectrum_numeric`] diagonalizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NumericRoute {
    /// The `2^N` matrix in the computational basis.
    Full,
    /// One block per momentum sector `(r, k)`.
    Sectors,
}

pub fn spectrum_numeric(p: &ModelParams, route: NumericRoute) -> Result<Spectrum> {
    let n = p.n_sites;
    let level = |energy, sector| Level {
        energy,
        d_energy_d_delta: None,
        multiplicity: 1,
        sector,
    };
    match route {
        NumericRoute::Full => {
            if n > MAX_FULL_SITES {
                return Err(Error::Capacity {
                    what: "full spectrum",
                    max: MAX_FULL_SITES,
                    got: n,
                });
            }
            let values = eigh_reducible(&full_matrix(p)?)?.values();
            Ok(Spectrum::new(
                n,
                values.into_iter().map(|e| level(e, None)).collect(),
            ))
        }
        NumericRoute::Sectors => {
            if n > MAX_SECTOR_SITES {
                return Err(Error::Capacity {
                    what: "sector spectrum",
                    max: MAX_SECTOR_SITES,
                    got: n,
                });
            }
            let mut levels = Vec::with_capacity(1 << n);
            for r in 0..=n {
                for k in 1..=n {
                    let block = block_matrix(p, r, k)?;
                    if block.is_empty() {
                        continue;
                    }
                    let sector = Some(Sector {
                        reversed: r,
                        momentum: k,
                    });
                    levels.extend(eigvalsh(&block)?.into_iter().map(|e| level(e, sector)));
                }
            }
            Ok(Spectrum::new(n, levels))
        }
    }
}

/// Lowest eigenvalue via the sector route.
pub fn ground_energy_numeric(p: &ModelParams) -> Result<f64> {
    Ok(spectrum_numeric(p, NumericRoute::Sectors)?
        .min_energy()
        .expect("complete spectrum is nonempty"))
}

/// Ground energy with a central-difference `Δ`-derivative (step `h`).
pub fn ground_state_numeric(p: &ModelParams, h: f64) -> Result<GroundState> {
    let energy = ground_energy_numeric(p)?;
    let up = ground_energy_numeric(&p.at_anisotropy(p.anisotropy + h))?;
    let down = ground_energy_numeric(&p.at_anisotropy(p.anisotropy - h))?;
    Ok(GroundState {
        energy,
        d_energy_d_delta: (up - down) / (2.0 * h),
    })
}
