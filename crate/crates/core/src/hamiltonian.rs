//! The periodic XXZ Hamiltonian
//!
//! `H = (J/2) Σ_i (1 + σx_i σx_{i+1} + σy_i σy_{i+1} + Δ σz_i σz_{i+1})`
//!
//! in the full computational basis and in momentum blocks. The constant
//! `+1` per bond is part of `H`; pair observables derived from the internal
//! energy rely on it. On a two-site ring both bonds join the same pair, so
//! every term is counted twice.

use std::collections::HashMap;

use num_complex::Complex64;

use crate::basis::{self, locate_in_orbit, momentum_phase, MomentumBasis, SpinState};
use crate::error::{domain, Error, Result};
use crate::linalg::DenseMatrix;

/// Largest ring for which [`full_matrix`] will allocate.
pub const MAX_FULL_SITES: usize = 14;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelParams {
    pub n_sites: usize,
    pub exchange: f64,
    pub anisotropy: f64,
}

impl ModelParams {
    /// Ring of `n_sites` with `J = 1`.
    pub fn new(n_sites: usize, anisotropy: f64) -> Result<Self> {
        Self::with_exchange(n_sites, 1.0, anisotropy)
    }

    pub fn with_exchange(n_sites: usize, exchange: f64, anisotropy: f64) -> Result<Self> {
        if !(basis::MIN_SITES..=basis::MAX_SITES).contains(&n_sites) {
            return domain(format!(
                "ring length must be in {}..={}, got {n_sites}",
                basis::MIN_SITES,
                basis::MAX_SITES
            ));
        }
        if !exchange.is_finite() || exchange == 0.0 {
            return domain(format!(
                "exchange must be finite and nonzero, got {exchange}"
            ));
        }
        if !(anisotropy.is_finite() && anisotropy >= 0.0) {
            return domain(format!(
                "anisotropy must be finite and >= 0, got {anisotropy}"
            ));
        }
        Ok(Self {
            n_sites,
            exchange,
            anisotropy,
        })
    }

    /// Same ring at another anisotropy, skipping the `Δ ≥ 0` check so that
    /// central differences can straddle `Δ = 0`.
    pub(crate) fn at_anisotropy(self, anisotropy: f64) -> Self {
        Self { anisotropy, ..self }
    }

    fn bonds(&self) -> impl Iterator<Item = (usize, usize)> {
        let n = self.n_sites;
        (0..n).map(move |i| (i, (i + 1) % n))
    }
}

/// `H|s⟩` as a list of (target, amplitude). The diagonal entry comes first;
/// hop targets are merged so each appears once.
pub fn apply_h(p: &ModelParams, s: SpinState) -> Vec<(SpinState, f64)> {
    let half_j = 0.5 * p.exchange;
    let mut diag = 0.0;
    let mut out: Vec<(SpinState, f64)> = vec![(s, 0.0)];
    for (i, j) in p.bonds() {
        let zz = f64::from(s.z(i) * s.z(j));
        diag += half_j * (1.0 + p.anisotropy * zz);
        if zz < 0.0 {
            let t = s.swapped(i, j);
            match out.iter_mut().skip(1).find(|(u, _)| *u == t) {
                Some(entry) => entry.1 += p.exchange,
                None => out.push((t, p.exchange)),
            }
        }
    }
    out[0].1 = diag;
    out
}

/// Dense `2^N × 2^N` matrix in the computational basis.
pub fn full_matrix(p: &ModelParams) -> Result<DenseMatrix<f64>> {
    if p.n_sites > MAX_FULL_SITES {
        return Err(Error::Capacity {
            what: "full_matrix",
            max: MAX_FULL_SITES,
            got: p.n_sites,
        });
    }
    let dim = 1usize << p.n_sites;
    let mut m = DenseMatrix::zeros(dim);
    for col in 0..dim {
        let s = SpinState::from_raw(col as u32, p.n_sites);
        for (t, amp) in apply_h(p, s) {
            m[(t.bits() as usize, col)] += amp;
        }
    }
    Ok(m)
}

/// `H` restricted to the momentum basis of sector `(r, k)`.
///
/// With `H|rep_b⟩ = Σ_s h_s |s⟩` and `s = T^{m_s} rep_a`, the element is
/// `⟨a|H|b⟩ = Σ_s h_s ω_k^{−m_s} √(d_b/d_a)`.
pub fn block_matrix(p: &ModelParams, r: usize, k: usize) -> Result<DenseMatrix<Complex64>> {
    let basis = basis::momentum_basis(p.n_sites, r, k)?;
    Ok(project_onto(p, &basis))
}

pub fn project_onto(p: &ModelParams, basis: &MomentumBasis) -> DenseMatrix<Complex64> {
    let index: HashMap<u32, usize> = basis
        .orbits
        .iter()
        .enumerate()
        .map(|(i, o)| (o.representative.bits(), i))
        .collect();
    let mut m = DenseMatrix::zeros(basis.len());
    for (b, orbit_b) in basis.orbits.iter().enumerate() {
        for (s, amp) in apply_h(p, orbit_b.representative) {
            let (orbit_a, shift) = locate_in_orbit(s);
            let Some(&a) = index.get(&orbit_a.representative.bits()) else {
                continue;
            };
            let ratio = (orbit_b.period as f64 / orbit_a.period as f64).sqrt();
            m[(a, b)] += momentum_phase(p.n_sites, basis.k, -(shift as i64)) * (amp * ratio);
        }
    }
    m
}

/// Diagonal of `σz_a σz_b` in the computational basis.
pub fn zz_diagonal(n_sites: usize, a: usize, b: usize) -> Vec<f64> {
    (0..1u32 << n_sites)
        .map(|bits| {
            let s = SpinState::from_raw(bits, n_sites);
            f64::from(s.z(a) * s.z(b))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::eigvalsh;

    fn params(n: usize, delta: f64) -> ModelParams {
        ModelParams::new(n, delta).unwrap()
    }

    fn st(bits: u32, n: usize) -> SpinState {
        SpinState::new(bits, n).unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(ModelParams::new(1, 1.0).is_err());
        assert!(ModelParams::new(5, -0.1).is_err());
        assert!(ModelParams::new(5, f64::NAN).is_err());
        assert!(ModelParams::with_exchange(5, 0.0, 1.0).is_err());
        assert!(ModelParams::new(24, 0.0).is_ok());
    }

    #[test]
    fn apply_h_uniform_state() {
        let out = apply_h(&params(5, 1.0), st(0, 5));
        assert_eq!(out, vec![(st(0, 5), 5.0)]);
    }

    #[test]
    fn apply_h_single_flip() {
        for delta in [0.0, 0.7, 1.0, 3.0] {
            let out = apply_h(&params(5, delta), st(0b00001, 5));
            assert!((out[0].1 - (2.5 + delta / 2.0)).abs() < 1e-15);
            let mut hops: Vec<(u32, f64)> = out[1..].iter().map(|(s, a)| (s.bits(), *a)).collect();
            hops.sort_by_key(|h| h.0);
            assert_eq!(hops, vec![(0b00010, 1.0), (0b10000, 1.0)]);
        }
    }

    #[test]
    fn apply_h_two_site_double_bond() {
        let out = apply_h(&params(2, 1.0), st(0b10, 2));
        assert_eq!(out.len(), 2);
        assert_eq!(out[1], (st(0b01, 2), 2.0));
    }

    #[test]
    fn full_matrix_trace_and_symmetry() {
        for delta in [0.0, 1.0, 2.5] {
            let m = full_matrix(&params(5, delta)).unwrap();
            assert!((m.trace() - 80.0).abs() < 1e-12);
            assert_eq!(m.adjoint_deviation(), 0.0);
        }
        let m = full_matrix(&ModelParams::with_exchange(4, 2.0, 0.3).unwrap()).unwrap();
        assert!((m.trace() - 0.5 * 2.0 * 4.0 * 16.0).abs() < 1e-12);
    }

    #[test]
    fn full_matrix_capacity() {
        assert!(matches!(
            full_matrix(&params(15, 1.0)),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn two_site_spectrum() {
        // H = 1 + σ₁·σ₂ on the doubled bond: singlet −2, triplet 2
        let vals = eigvalsh(&full_matrix(&params(2, 1.0)).unwrap()).unwrap();
        for (a, b) in vals.iter().zip([-2.0, 2.0, 2.0, 2.0]) {
            assert!((a - b).abs() < 1e-12, "{vals:?}");
        }
    }

    #[test]
    fn commutes_with_translation_and_conserves_magnetization() {
        let n = 5;
        let m = full_matrix(&params(n, 0.6)).unwrap();
        let dim = 1 << n;
        let t = DenseMatrix::from_fn(dim, |i, j| {
            f64::from(st(j as u32, n).cyclic_shift().bits() as usize == i)
        });
        let comm = m.matmul(&t).max_abs_diff(&t.matmul(&m));
        assert!(comm < 1e-12);
        for i in 0..dim {
            for j in 0..dim {
                if (i as u32).count_ones() != (j as u32).count_ones() {
                    assert_eq!(m[(i, j)], 0.0);
                }
            }
        }
    }

    #[test]
    fn five_site_blocks_match_closed_entries() {
        for delta in [0.0, 0.4, 1.0, 2.0] {
            let p = params(5, delta);
            for k in 1..=5 {
                let w = momentum_phase(5, k, 1);
                let b = block_matrix(&p, 2, k).unwrap();
                let h11 = Complex64::new(3.0 + (delta - 1.0) / 2.0, 0.0);
                let h22 = 1.0 - 3.0 * (delta - 1.0) / 2.0 + w * w + (w * w).inv();
                let h12 = 1.0 + w.inv();
                assert!((b[(0, 0)] - h11).norm() < 1e-12);
                assert!((b[(1, 1)] - h22).norm() < 1e-12);
                assert!((b[(0, 1)] - h12).norm() < 1e-12);
                assert!((b[(1, 0)] - h12.conj()).norm() < 1e-12);

                let b1 = block_matrix(&p, 1, k).unwrap();
                let e1 = 3.0
                    + (delta - 1.0) / 2.0
                    + 2.0 * (std::f64::consts::TAU * k as f64 / 5.0).cos();
                assert_eq!(b1.dim(), 1);
                assert!((b1[(0, 0)] - e1).norm() < 1e-12);
            }
            let b0 = block_matrix(&p, 0, 5).unwrap();
            assert!((b0[(0, 0)].re - 5.0 * (1.0 + (delta - 1.0) / 2.0)).abs() < 1e-12);
            assert!(block_matrix(&p, 0, 2).unwrap().is_empty());
        }
    }

    fn sorted_close(a: &mut [f64], b: &mut [f64], tol: f64) -> bool {
        a.sort_by(f64::total_cmp);
        b.sort_by(f64::total_cmp);
        a.len() == b.len() && a.iter().zip(b.iter()).all(|(x, y)| (x - y).abs() < tol)
    }

    #[test]
    fn sector_equivalence() {
        for n in 2..=8 {
            for delta in [0.0, 0.5, 1.0, 2.5] {
                let p = params(n, delta);
                let mut full = eigvalsh(&full_matrix(&p).unwrap()).unwrap();
                let mut sectors = Vec::new();
                for r in 0..=n {
                    for k in 1..=n {
                        let b = block_matrix(&p, r, k).unwrap();
                        assert!(b.adjoint_deviation() < 1e-12);
                        sectors.extend(eigvalsh(&b).unwrap());
                    }
                }
                assert!(
                    sorted_close(&mut full, &mut sectors, 1e-9),
                    "n={n} delta={delta}"
                );
            }
        }
    }

    #[test]
    fn spin_flip_pairs_sectors() {
        for n in 3..=7 {
            let p = params(n, 1.7);
            for r in 0..=n {
                for k in 1..=n {
                    let mut a = eigvalsh(&block_matrix(&p, r, k).unwrap()).unwrap();
                    let mut b = eigvalsh(&block_matrix(&p, n - r, k).unwrap()).unwrap();
                    assert!(sorted_close(&mut a, &mut b, 1e-10), "n={n} r={r} k={k}");
                }
            }
        }
    }

    #[test]
    fn zz_diagonal_is_traceless() {
        let d = zz_diagonal(5, 0, 1);
        assert_eq!(d.iter().sum::<f64>(), 0.0);
        assert_eq!(d[0], 1.0);
        assert_eq!(d[1], -1.0);
    }
}
