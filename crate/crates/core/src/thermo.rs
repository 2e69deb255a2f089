//! Canonical-ensemble quantities from a spectrum: `ln Z`, the internal
//! energy `U = −∂ln Z/∂β` and the nearest-neighbour correlator
//! `G_zz = −(2/(Nβ)) ∂ln Z/∂Δ = (2/N) ⟨∂E/∂Δ⟩`.
//!
//! Boltzmann weights are evaluated relative to the lowest level, so large
//! `β` neither overflows nor underflows. `T = 0` is not represented here;
//! callers route it to the ground-state formulas.

use crate::error::{domain, Result};
use crate::hamiltonian::ModelParams;
use crate::spectrum::{spectrum_numeric, NumericRoute, Spectrum};

/// Default central-difference step in `Δ` and `β`.
pub const DEFAULT_FD_STEP: f64 = 1e-5;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThermoPoint {
    pub delta: f64,
    pub temperature: f64,
    pub ln_z: f64,
    pub internal_energy: f64,
    pub gzz: f64,
}

fn check_beta(beta: f64) -> Result<()> {
    if !(beta.is_finite() && beta >= 0.0) {
        return domain(format!(
            "inverse temperature must be finite and >= 0, got {beta}"
        ));
    }
    Ok(())
}

/// `(E_min, [m_j e^{−β(E_j − E_min)}])`.
fn shifted_weights(s: &Spectrum, beta: f64) -> Result<(f64, Vec<f64>)> {
    check_beta(beta)?;
    let Some(e_min) = s.min_energy() else {
        return domain("empty spectrum");
    };
    let weights = s
        .levels()
        .iter()
        .map(|l| l.multiplicity as f64 * (-beta * (l.energy - e_min)).exp())
        .collect();
    Ok((e_min, weights))
}

pub fn log_partition(s: &Spectrum, beta: f64) -> Result<f64> {
    let (e_min, w) = shifted_weights(s, beta)?;
    Ok(-beta * e_min + w.iter().sum::<f64>().ln())
}

pub fn internal_energy(s: &Spectrum, beta: f64) -> Result<f64> {
    let (_, w) = shifted_weights(s, beta)?;
    let z: f64 = w.iter().sum();
    Ok(s.levels()
        .iter()
        .zip(&w)
        .map(|(l, w)| l.energy * w)
        .sum::<f64>()
        / z)
}

/// `(2/N)` times the Boltzmann average of `∂E/∂Δ`. Requires every level to
/// carry a derivative; use [`gzz_fd`] otherwise. For `J ≠ 1` the result is
/// `J·⟨σz σz⟩`.
pub fn gzz(s: &Spectrum, beta: f64, n_sites: usize) -> Result<f64> {
    let (_, w) = shifted_weights(s, beta)?;
    let mut acc = 0.0;
    for (l, w) in s.levels().iter().zip(&w) {
        let Some(slope) = l.d_energy_d_delta else {
            return domain("spectrum lacks Δ-derivatives; use the finite-difference correlator");
        };
        acc += slope * w;
    }
    let z: f64 = w.iter().sum();
    Ok(2.0 / n_sites as f64 * acc / z)
}

/// `−(2/(NJβ)) ∂ln Z/∂Δ` by a central difference of step `h` over numeric
/// spectra. Truncation error is `O(h²)`; `β = 0` returns the exact limit `0`.
pub fn gzz_fd(p: &ModelParams, beta: f64, h: f64) -> Result<f64> {
    check_beta(beta)?;
    if !(h > 0.0 && h.is_finite()) {
        return domain(format!("finite-difference step must be positive, got {h}"));
    }
    if beta == 0.0 {
        return Ok(0.0);
    }
    let reduced_at = |delta: f64| {
        let s = spectrum_numeric(&p.at_anisotropy(delta), NumericRoute::Sectors)?;
        reduced_log_partition(&s, beta)
    };
    let slope = (reduced_at(p.anisotropy + h)? - reduced_at(p.anisotropy - h)?) / (2.0 * h);
    Ok(-2.0 / (p.n_sites as f64 * p.exchange) * slope)
}

/// `(ln Z − ln dim)/β`, accurate as `β → 0` where differencing `ln Z`
/// itself loses every digit. Its `Δ`-slope is `(1/β) ∂ln Z/∂Δ`.
fn reduced_log_partition(s: &Spectrum, beta: f64) -> Result<f64> {
    let Some(e_min) = s.min_energy() else {
        return domain("empty spectrum");
    };
    let dim = s.total_dim() as f64;
    let excess: f64 = s
        .levels()
        .iter()
        .map(|l| l.multiplicity as f64 * (-beta * (l.energy - e_min)).exp_m1())
        .sum::<f64>()
        / dim;
    Ok(-e_min + excess.ln_1p() / beta)
}

/// All three quantities from a spectrum that carries derivatives.
pub fn thermo_point(s: &Spectrum, delta: f64, temperature: f64) -> Result<ThermoPoint> {
    if !(temperature.is_finite() && temperature > 0.0) {
        return domain(format!("temperature must be positive, got {temperature}"));
    }
    let beta = 1.0 / temperature;
    Ok(ThermoPoint {
        delta,
        temperature,
        ln_z: log_partition(s, beta)?,
        internal_energy: internal_energy(s, beta)?,
        gzz: gzz(s, beta, s.n_sites())?,
    })
}
