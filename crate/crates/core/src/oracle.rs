//! Brute-force reference path. Builds `e^{−βH}/Z` from a full
//! diagonalization of the `2^N` Hamiltonian, traces out all but one pair of
//! sites, and evaluates the general Wootters concurrence and the purity.
//! Nothing here uses translation symmetry or the closed-form spectra.

use num_complex::Complex64;

use crate::error::{domain, Error, Result};
use crate::hamiltonian::{full_matrix, ModelParams};
use crate::linalg::{eigh, eigh_reducible, DenseMatrix};
use crate::spectrum::DEGENERACY_TOL;

pub const MAX_ORACLE_SITES: usize = 10;

/// Trace and self-adjointness tolerance for accepted density matrices.
pub const DENSITY_TOL: f64 = 1e-10;

/// Normalized density matrix of `n_qubits` qubits; qubit `i` is bit `i`
/// of the row index.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    n_qubits: usize,
    matrix: DenseMatrix<Complex64>,
}

impl DensityMatrix {
    pub fn new(n_qubits: usize, matrix: DenseMatrix<Complex64>) -> Result<Self> {
        if matrix.dim() != 1 << n_qubits {
            return domain(format!(
                "{n_qubits} qubits need dimension {}, got {}",
                1 << n_qubits,
                matrix.dim()
            ));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > DENSITY_TOL || tr.im.abs() > DENSITY_TOL {
            return domain(format!("density matrix trace is {tr}, expected 1"));
        }
        if !matrix.is_self_adjoint(DENSITY_TOL) {
            return domain("density matrix is not self-adjoint");
        }
        Ok(Self { n_qubits, matrix })
    }

    /// Normalized projector onto a pure state.
    pub fn pure(n_qubits: usize, amplitudes: &[Complex64]) -> Result<Self> {
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if norm == 0.0 {
            return domain("zero state vector");
        }
        let m = DenseMatrix::from_fn(amplitudes.len(), |i, j| {
            amplitudes[i] * amplitudes[j].conj() / norm
        });
        Self::new(n_qubits, m)
    }

    pub fn maximally_mixed(n_qubits: usize) -> Self {
        let dim = 1 << n_qubits;
        let w = Complex64::new(1.0 / dim as f64, 0.0);
        Self {
            n_qubits,
            matrix: DenseMatrix::from_diagonal(&vec![w; dim]),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn matrix(&self) -> &DenseMatrix<Complex64> {
        &self.matrix
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(eigh_reducible(&self.matrix)?.values())
    }

    /// `⟨σz_a σz_b⟩`.
    pub fn zz(&self, a: usize, b: usize) -> f64 {
        (0..self.matrix.dim())
            .map(|i| {
                let za = if (i >> a) & 1 == 1 { -1.0 } else { 1.0 };
                let zb = if (i >> b) & 1 == 1 { -1.0 } else { 1.0 };
                za * zb * self.matrix[(i, i)].re
            })
            .sum()
    }

    /// `⟨σz_i⟩`.
    pub fn magnetization(&self, site: usize) -> f64 {
        (0..self.matrix.dim())
            .map(|i| {
                let z = if (i >> site) & 1 == 1 { -1.0 } else { 1.0 };
                z * self.matrix[(i, i)].re
            })
            .sum()
    }
}

/// Thermal state together with the ensemble data computed alongside it.
#[derive(Clone, Debug)]
pub struct ThermalEnsemble {
    pub state: DensityMatrix,
    pub ln_z: f64,
    pub internal_energy: f64,
}

/// Equal-weight mixture over the ground manifold.
#[derive(Clone, Debug)]
pub struct GroundEnsemble {
    pub state: DensityMatrix,
    pub energy: f64,
    pub degeneracy: usize,
}

fn check_sites(p: &ModelParams) -> Result<()> {
    if p.n_sites > MAX_ORACLE_SITES {
        return Err(Error::Capacity {
            what: "oracle",
            max: MAX_ORACLE_SITES,
            got: p.n_sites,
        });
    }
    Ok(())
}

/// `Σ_l w_l |v_l⟩⟨v_l| / Σ_l w_l` over all eigenpairs, block by block.
fn weighted_state(
    p: &ModelParams,
    weight: impl Fn(f64, f64) -> f64,
) -> Result<(DensityMatrix, f64, f64, f64)> {
    check_sites(p)?;
    let h = full_matrix(p)?.to_complex();
    let eig = eigh_reducible(&h)?;
    let e_min = eig.min_value();
    let dim = eig.dim;
    let mut rho = DenseMatrix::<Complex64>::zeros(dim);
    let (mut z, mut e_sum) = (0.0, 0.0);
    for block in &eig.blocks {
        let idx = &block.indices;
        for (l, &e) in block.eigen.values.iter().enumerate() {
            let w = weight(e, e_min);
            if w == 0.0 {
                continue;
            }
            z += w;
            e_sum += w * e;
            let v = block.eigen.vector(l);
            for (a, &va) in v.iter().enumerate() {
                if va == Complex64::default() {
                    continue;
                }
                for (b, &vb) in v.iter().enumerate() {
                    rho[(idx[a], idx[b])] += va * vb.conj() * w;
                }
            }
        }
    }
    let inv = 1.0 / z;
    let rho = DenseMatrix::from_fn(dim, |i, j| rho[(i, j)] * inv);
    Ok((DensityMatrix::new(p.n_sites, rho)?, e_min, z, e_sum * inv))
}

pub fn thermal_ensemble(p: &ModelParams, beta: f64) -> Result<ThermalEnsemble> {
    if !(beta.is_finite() && beta >= 0.0) {
        return domain(format!(
            "inverse temperature must be finite and >= 0, got {beta}"
        ));
    }
    let (state, e_min, z, u) = weighted_state(p, |e, e_min| (-beta * (e - e_min)).exp())?;
    Ok(ThermalEnsemble {
        state,
        ln_z: -beta * e_min + z.ln(),
        internal_energy: u,
    })
}

/// `e^{−βH}/Z` on the full `2^N` space.
pub fn thermal_state(p: &ModelParams, beta: f64) -> Result<DensityMatrix> {
    Ok(thermal_ensemble(p, beta)?.state)
}

/// Mixture of every eigenstate within [`DEGENERACY_TOL`] of the ground energy.
pub fn ground_ensemble(p: &ModelParams) -> Result<GroundEnsemble> {
    let (state, e_min, z, _) = weighted_state(p, |e, e_min| {
        if e - e_min <= DEGENERACY_TOL {
            1.0
        } else {
            0.0
        }
    })?;
    Ok(GroundEnsemble {
        state,
        energy: e_min,
        degeneracy: z.round() as usize,
    })
}

/// Two-site reduced state on sites `(site_a, site_b)`, indexed by
/// `2·bit_a + bit_b`.
pub fn reduce_to_pair(rho: &DensityMatrix, site_a: usize, site_b: usize) -> Result<DensityMatrix> {
    let n = rho.n_qubits;
    if site_a >= n || site_b >= n || site_a == site_b {
        return domain(format!(
            "pair ({site_a}, {site_b}) is not two distinct sites of a {n}-site system"
        ));
    }
    let (ma, mb) = (1usize << site_a, 1usize << site_b);
    let embed = |x: usize| (if x & 2 != 0 { ma } else { 0 }) | (if x & 1 != 0 { mb } else { 0 });
    let mut out = DenseMatrix::<Complex64>::zeros(4);
    for base in 0..rho.matrix.dim() {
        if base & (ma | mb) != 0 {
            continue;
        }
        for x in 0..4 {
            for y in 0..4 {
                out[(x, y)] += rho.matrix[(base | embed(x), base | embed(y))];
            }
        }
    }
    DensityMatrix::new(2, out)
}

fn spin_flip_operator() -> DenseMatrix<Complex64> {
    // σy ⊗ σy
    let mut y = DenseMatrix::<Complex64>::zeros(4);
    y[(0, 3)] = Complex64::new(-1.0, 0.0);
    y[(1, 2)] = Complex64::new(1.0, 0.0);
    y[(2, 1)] = Complex64::new(1.0, 0.0);
    y[(3, 0)] = Complex64::new(-1.0, 0.0);
    y
}

/// `λ₁ − λ₂ − λ₃ − λ₄` before clipping, with `λᵢ` the descending square
/// roots of the eigenvalues of `√ρ ρ̃ √ρ`, `ρ̃ = (σy⊗σy) ρ* (σy⊗σy)`.
pub fn wootters_witness(rho: &DensityMatrix) -> Result<f64> {
    if rho.n_qubits != 2 {
        return domain("concurrence needs a two-qubit state");
    }
    let m = &rho.matrix;
    let y = spin_flip_operator();
    let conj = DenseMatrix::from_fn(4, |i, j| m[(i, j)].conj());
    let tilde = y.matmul(&conj).matmul(&y);

    let e = eigh(m)?;
    let roots: Vec<Complex64> = e
        .values
        .iter()
        .map(|&l| Complex64::new(l.max(0.0).sqrt(), 0.0))
        .collect();
    let sqrt_rho = e
        .vectors
        .matmul(&DenseMatrix::from_diagonal(&roots))
        .matmul(&e.vectors.adjoint());
    let r = sqrt_rho.matmul(&tilde).matmul(&sqrt_rho);
    let r = DenseMatrix::from_fn(4, |i, j| (r[(i, j)] + r[(j, i)].conj()) * 0.5);
    let mut mu = eigh(&r)?.values;
    if let Some(&lowest) = mu.first() {
        if lowest < -1e-9 {
            return domain(format!("R matrix has negative eigenvalue {lowest:e}"));
        }
    }
    mu.reverse();
    let l: Vec<f64> = mu.iter().map(|&x| x.max(0.0).sqrt()).collect();
    Ok(l[0] - l[1] - l[2] - l[3])
}

pub fn wootters_concurrence(rho: &DensityMatrix) -> Result<f64> {
    Ok(wootters_witness(rho)?.max(0.0))
}

/// `1 − Tr ρ²`, with `Tr ρ²` the squared Frobenius norm.
pub fn purity_linear_entropy(rho: &DensityMatrix) -> f64 {
    1.0 - rho
        .matrix
        .as_slice()
        .iter()
        .map(|z| z.norm_sqr())
        .sum::<f64>()
}

/// `Tr[e^{−βH} σz_0 σz_1] / Z`.
pub fn gzz_trace(p: &ModelParams, beta: f64) -> Result<f64> {
    Ok(thermal_state(p, beta)?.zz(0, 1 % p.n_sites))
}
