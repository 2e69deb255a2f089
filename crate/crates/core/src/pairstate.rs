//! Nearest-neighbour two-qubit state of a translation-invariant XXZ ring.
//!
//! U(1) and spin-flip symmetry leave the reduced pair density matrix in
//! X form, fixed by two correlators:
//!
//! * `gzz = ⟨σz_i σz_{i+1}⟩`
//! * `gxx = ⟨σx_i σx_{i+1}⟩ = ⟨σy_i σy_{i+1}⟩ = U/(NJ) − 1/2 − Δ·gzz/2`
//!
//! In the basis `|00⟩, |01⟩, |10⟩, |11⟩` the matrix has diagonal
//! `((1+gzz)/4, (1−gzz)/4, (1−gzz)/4, (1+gzz)/4)` and `gxx/2` on the
//! central off-diagonal pair. Its concurrence is
//! `max(0, |gxx| − gzz/2 − 1/2)` and its linear entropy
//! `1 − (2gxx² + gzz² + 1)/4`.

use num_complex::Complex64;

use crate::error::{domain, Result};
use crate::linalg::DenseMatrix;

/// Largest negative eigenvalue tolerated in [`xstate_density`].
pub const PHYSICALITY_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairState {
    pub gxx: f64,
    pub gzz: f64,
}

impl PairState {
    /// From a thermal evaluation with `J = 1`.
    pub fn from_thermo(internal_energy: f64, gzz: f64, delta: f64, n_sites: usize) -> Self {
        Self::from_thermo_with_exchange(internal_energy, gzz, delta, n_sites, 1.0)
    }

    pub fn from_thermo_with_exchange(
        internal_energy: f64,
        gzz: f64,
        delta: f64,
        n_sites: usize,
        exchange: f64,
    ) -> Self {
        let per_bond = internal_energy / (n_sites as f64 * exchange);
        Self {
            gxx: per_bond - 0.5 - delta * gzz / 2.0,
            gzz,
        }
    }

    /// Ground-state version: `U = E_gs`, `gzz = (2/N) ∂E_gs/∂Δ`.
    pub fn from_ground(energy: f64, d_energy_d_delta: f64, delta: f64, n_sites: usize) -> Self {
        let gzz = 2.0 / n_sites as f64 * d_energy_d_delta;
        Self::from_thermo(energy, gzz, delta, n_sites)
    }

    /// The concurrence before clipping at zero. Positive exactly when the
    /// pair is entangled.
    pub fn witness(&self) -> f64 {
        self.gxx.abs() - self.gzz / 2.0 - 0.5
    }

    pub fn concurrence(&self) -> f64 {
        self.witness().max(0.0)
    }

    pub fn linear_entropy(&self) -> f64 {
        let el = 1.0 - (2.0 * self.gxx * self.gxx + self.gzz * self.gzz + 1.0) / 4.0;
        debug_assert!(el <= 0.75 + 1e-12);
        el
    }

    /// Eigenvalues of the X-state matrix: `(1+gzz)/4` twice and
    /// `(1−gzz)/4 ± gxx/2`.
    pub fn eigenvalues(&self) -> [f64; 4] {
        let outer = (1.0 + self.gzz) / 4.0;
        let inner = (1.0 - self.gzz) / 4.0;
        let half = self.gxx / 2.0;
        [outer, outer, inner - half.abs(), inner + half.abs()]
    }
}

pub fn concurrence_thermal(internal_energy: f64, gzz: f64, delta: f64, n_sites: usize) -> f64 {
    PairState::from_thermo(internal_energy, gzz, delta, n_sites).concurrence()
}

pub fn linear_entropy_thermal(internal_energy: f64, gzz: f64, delta: f64, n_sites: usize) -> f64 {
    PairState::from_thermo(internal_energy, gzz, delta, n_sites).linear_entropy()
}

/// `max(0, |E/N − 1/2 − (Δ/N) E'| − E'/N − 1/2)` with `E' = ∂E_gs/∂Δ`.
pub fn concurrence_ground(energy: f64, d_energy_d_delta: f64, delta: f64, n_sites: usize) -> f64 {
    let n = n_sites as f64;
    let direct =
        ((energy / n - 0.5 - delta / n * d_energy_d_delta).abs() - d_energy_d_delta / n - 0.5)
            .max(0.0);
    let via_pair = PairState::from_ground(energy, d_energy_d_delta, delta, n_sites).concurrence();
    debug_assert!((direct - via_pair).abs() <= 1e-12 * (1.0 + direct.abs()));
    via_pair
}

/// `1 − [2(E/N − 1/2 − (Δ/N) E')² + (4/N²) E'² + 1]/4`.
pub fn linear_entropy_ground(
    energy: f64,
    d_energy_d_delta: f64,
    delta: f64,
    n_sites: usize,
) -> f64 {
    PairState::from_ground(energy, d_energy_d_delta, delta, n_sites).linear_entropy()
}

/// Four-site ground-state concurrence and linear entropy:
/// `C = (Δ+8)/(4√(Δ²+8)) − 1/4`,
/// `E_L = 11/16 − Δ/(8√(Δ²+8)) − (Δ²+32)/(16(Δ²+8))`.
pub fn closed_n4_ground(delta: f64) -> (f64, f64) {
    let d2 = delta * delta + 8.0;
    let root = d2.sqrt();
    let c = (delta + 8.0) / (4.0 * root) - 0.25;
    let el = 11.0 / 16.0 - delta / (8.0 * root) - (delta * delta + 32.0) / (16.0 * d2);
    (c, el)
}

/// The 4×4 X-state density matrix of `ps`.
pub fn xstate_density(ps: &PairState) -> Result<DenseMatrix<Complex64>> {
    let lowest = ps.eigenvalues().into_iter().fold(f64::INFINITY, f64::min);
    if lowest < -PHYSICALITY_TOL {
        return domain(format!(
            "correlators (gxx={}, gzz={}) give a negative eigenvalue {lowest:e}",
            ps.gxx, ps.gzz
        ));
    }
    let outer = Complex64::new((1.0 + ps.gzz) / 4.0, 0.0);
    let inner = Complex64::new((1.0 - ps.gzz) / 4.0, 0.0);
    let mut m = DenseMatrix::from_diagonal(&[outer, inner, inner, outer]);
    m[(1, 2)] = Complex64::new(ps.gxx / 2.0, 0.0);
    m[(2, 1)] = Complex64::new(ps.gxx / 2.0, 0.0);
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::{ground_state_n4, ground_state_n5};

    const SQRT5: f64 = 2.236_067_977_499_79;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn maximally_mixed_pair() {
        assert_eq!(concurrence_thermal(2.5, 0.0, 1.3, 5), 0.0);
        assert!(close(linear_entropy_thermal(2.5, 0.0, 1.3, 5), 0.75, 1e-15));
        let m = xstate_density(&PairState { gxx: 0.0, gzz: 0.0 }).unwrap();
        assert!(
            m.max_abs_diff(&DenseMatrix::from_diagonal(&[Complex64::new(0.25, 0.0); 4])) < 1e-15
        );
    }

    #[test]
    fn five_site_isotropic_ground() {
        let g = ground_state_n5(1.0).unwrap();
        let gzz = 0.4 * g.d_energy_d_delta;
        let c_thermal = concurrence_thermal(g.energy, gzz, 1.0, 5);
        let c_ground = concurrence_ground(g.energy, g.d_energy_d_delta, 1.0, 5);
        assert!(close(c_thermal, (SQRT5 - 1.0) / 5.0, 1e-12));
        assert!(close(c_ground, c_thermal, 1e-15));
        assert!(close(c_ground, 0.247_213_6, 1e-7));
        let el = linear_entropy_ground(g.energy, g.d_energy_d_delta, 1.0, 5);
        let expected = 1.0 - (3.0 * gzz * gzz + 1.0) / 4.0;
        assert!(close(el, expected, 1e-14));
        assert!(close(el, 0.563_890_6, 1e-7));
        let ps = PairState::from_ground(g.energy, g.d_energy_d_delta, 1.0, 5);
        assert!(close(ps.gxx, ps.gzz, 1e-14));
    }

    #[test]
    fn four_site_isotropic_ground() {
        let g = ground_state_n4(1.0);
        assert!(close(
            concurrence_thermal(g.energy, 0.5 * g.d_energy_d_delta, 1.0, 4),
            0.5,
            1e-15
        ));
        assert!(close(
            concurrence_ground(g.energy, g.d_energy_d_delta, 1.0, 4),
            0.5,
            1e-15
        ));
        assert!(close(
            linear_entropy_ground(g.energy, g.d_energy_d_delta, 1.0, 4),
            5.0 / 12.0,
            1e-15
        ));
        let (c, el) = closed_n4_ground(1.0);
        assert!(close(c, 0.5, 1e-15) && close(el, 5.0 / 12.0, 1e-15));
    }

    #[test]
    fn four_site_zero_anisotropy() {
        let (c, el) = closed_n4_ground(0.0);
        assert!(close(c, 2f64.sqrt() / 2.0 - 0.25, 1e-15));
        assert!(close(el, 7.0 / 16.0, 1e-15));
        let g = ground_state_n4(0.0);
        assert!(close(
            linear_entropy_ground(g.energy, g.d_energy_d_delta, 0.0, 4),
            7.0 / 16.0,
            1e-15
        ));
    }

    #[test]
    fn four_site_large_anisotropy() {
        // C ≈ 2/Δ for large Δ
        let g = ground_state_n4(1e3);
        let c = concurrence_ground(g.energy, g.d_energy_d_delta, 1e3, 4);
        assert!(close(c, 2e-3, 1e-5));
        let g = ground_state_n4(1e4);
        assert!(concurrence_ground(g.energy, g.d_energy_d_delta, 1e4, 4) < 1e-3);
    }

    #[test]
    fn closed_n4_matches_generic_formulas() {
        for i in 0..=200 {
            let delta = 0.05 * i as f64;
            let g = ground_state_n4(delta);
            let (c, el) = closed_n4_ground(delta);
            assert!(close(
                c,
                concurrence_ground(g.energy, g.d_energy_d_delta, delta, 4),
                1e-12
            ));
            assert!(close(
                el,
                linear_entropy_ground(g.energy, g.d_energy_d_delta, delta, 4),
                1e-12
            ));
        }
    }

    #[test]
    fn four_site_extrema_at_isotropic_point() {
        let (c1, el1) = closed_n4_ground(1.0);
        for d in [0.99, 1.01] {
            let (c, el) = closed_n4_ground(d);
            assert!(c1 > c && el1 < el);
        }
    }

    #[test]
    fn singlet_pair() {
        let ps = PairState {
            gxx: -1.0,
            gzz: -1.0,
        };
        assert_eq!(ps.concurrence(), 1.0);
        assert_eq!(ps.linear_entropy(), 0.0);
        let m = xstate_density(&ps).unwrap();
        assert_eq!(m[(0, 0)].re, 0.0);
        assert_eq!(m[(1, 1)].re, 0.5);
        assert_eq!(m[(1, 2)].re, -0.5);
    }

    #[test]
    fn unphysical_correlators_rejected() {
        assert!(xstate_density(&PairState { gxx: 0.9, gzz: 0.5 }).is_err());
        assert!(xstate_density(&PairState {
            gxx: 0.0,
            gzz: -1.2
        })
        .is_err());
    }

    #[test]
    fn purity_of_xstate_matches_formula() {
        for (gxx, gzz) in [(-0.3, -0.2), (0.1, 0.4), (-0.498, -0.498)] {
            let ps = PairState { gxx, gzz };
            let m = xstate_density(&ps).unwrap();
            let purity: f64 = m.as_slice().iter().map(|z| z.norm_sqr()).sum();
            assert!(close(1.0 - purity, ps.linear_entropy(), 1e-15));
            assert!(close(m.trace().re, 1.0, 1e-15));
        }
    }
}
