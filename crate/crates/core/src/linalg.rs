//! Dense self-adjoint matrices and a cyclic Jacobi eigensolver.
//!
//! The solver works for real-symmetric and complex-Hermitian input through
//! the [`Scalar`] trait. A complex pivot `a_pq = |a_pq| e^{iφ}` is first
//! rotated to the real axis by a diagonal phase, after which the classical
//! real Jacobi rotation annihilates it.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{domain, Error, Result};

/// Largest dimension accepted by [`eigh`].
pub const MAX_EIGEN_DIM: usize = 1 << 14;

/// Hard limit on Jacobi sweeps. Quadratic convergence means well-posed
/// input finishes in well under 20.
const MAX_SWEEPS: usize = 100;

/// Off-diagonal convergence threshold relative to the Frobenius norm.
pub const JACOBI_REL_TOL: f64 = 1e-13;

/// Tolerance on `‖M − M†‖_max` (scaled by `max(1, ‖M‖_F)`) for input to be
/// accepted as self-adjoint.
pub const SELF_ADJOINT_TOL: f64 = 1e-12;

/// Field element usable in the eigensolver: `f64` or `Complex64`.
pub trait Scalar:
    Copy
    + Default
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    fn from_re(x: f64) -> Self;
    fn conj(self) -> Self;
    fn re(self) -> f64;
    fn modulus(self) -> f64;
    fn norm_sqr(self) -> f64;
    fn scale(self, x: f64) -> Self;
    fn to_complex(self) -> Complex64;
}

impl Scalar for f64 {
    fn from_re(x: f64) -> Self {
        x
    }
    fn conj(self) -> Self {
        self
    }
    fn re(self) -> f64 {
        self
    }
    fn modulus(self) -> f64 {
        self.abs()
    }
    fn norm_sqr(self) -> f64 {
        self * self
    }
    fn scale(self, x: f64) -> Self {
        self * x
    }
    fn to_complex(self) -> Complex64 {
        Complex64::new(self, 0.0)
    }
}

impl Scalar for Complex64 {
    fn from_re(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    fn conj(self) -> Self {
        Complex64::conj(&self)
    }
    fn re(self) -> f64 {
        self.re
    }
    fn modulus(self) -> f64 {
        self.norm()
    }
    fn norm_sqr(self) -> f64 {
        Complex64::norm_sqr(&self)
    }
    fn scale(self, x: f64) -> Self {
        self * x
    }
    fn to_complex(self) -> Complex64 {
        self
    }
}

/// Square dense matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct DenseMatrix<T> {
    dim: usize,
    data: Vec<T>,
}

impl<T: Scalar> DenseMatrix<T> {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![T::default(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = T::from_re(1.0);
        }
        m
    }

    pub fn from_diagonal(diag: &[T]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    /// Builds from row slices; every row must have `rows.len()` entries.
    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return domain("matrix rows must form a square array");
        }
        Ok(Self {
            dim,
            data: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.dim == 0
    }

    pub fn trace(&self) -> T {
        (0..self.dim).fold(T::default(), |acc, i| acc + self[(i, i)])
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `max |M_ij − conj(M_ji)|`.
    pub fn adjoint_deviation(&self) -> f64 {
        let mut dev = 0.0_f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).modulus());
            }
        }
        dev
    }

    pub fn is_self_adjoint(&self, tol: f64) -> bool {
        self.adjoint_deviation() <= tol
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for l in 0..n {
                let a = self[(i, l)];
                if a == T::default() {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] = out[(i, j)] + a * other[(l, j)];
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.dim, v.len(), "dimension mismatch");
        (0..self.dim)
            .map(|i| (0..self.dim).fold(T::default(), |acc, j| acc + self[(i, j)] * v[j]))
            .collect()
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| (a - b).modulus())
            .fold(0.0, f64::max)
    }

    pub fn to_complex(&self) -> DenseMatrix<Complex64> {
        DenseMatrix {
            dim: self.dim,
            data: self.data.iter().map(|x| x.to_complex()).collect(),
        }
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.dim).map(|i| self[(i, j)]).collect()
    }

    /// Principal submatrix on `indices`.
    pub fn submatrix(&self, indices: &[usize]) -> Self {
        Self::from_fn(indices.len(), |a, b| self[(indices[a], indices[b])])
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }
}

impl<T> Index<(usize, usize)> for DenseMatrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.dim + j]
    }
}

impl<T> IndexMut<(usize, usize)> for DenseMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.dim + j]
    }
}

impl<T: fmt::Debug> fmt::Debug for DenseMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut list = f.debug_list();
        for row in self.data.chunks(self.dim.max(1)) {
            list.entry(&row);
        }
        list.finish()
    }
}

/// Eigenvalues in ascending order with eigenvectors stored as columns.
#[derive(Clone, Debug)]
pub struct Eigen<T> {
    pub values: Vec<f64>,
    pub vectors: DenseMatrix<T>,
}

impl<T: Scalar> Eigen<T> {
    pub fn vector(&self, j: usize) -> Vec<T> {
        self.vectors.column(j)
    }
}

fn check_input<T: Scalar>(m: &DenseMatrix<T>) -> Result<()> {
    if m.dim > MAX_EIGEN_DIM {
        return domain(format!(
            "matrix dimension {} exceeds eigensolver limit {}",
            m.dim, MAX_EIGEN_DIM
        ));
    }
    if m.data.iter().any(|x| !x.modulus().is_finite()) {
        return domain("matrix has non-finite entries");
    }
    let dev = m.adjoint_deviation();
    if dev > SELF_ADJOINT_TOL * m.frobenius_norm().max(1.0) {
        return domain(format!("matrix is not self-adjoint (deviation {dev:e})"));
    }
    Ok(())
}

/// Full eigendecomposition of a self-adjoint matrix by cyclic Jacobi sweeps.
pub fn eigh<T: Scalar>(m: &DenseMatrix<T>) -> Result<Eigen<T>> {
    check_input(m)?;
    let n = m.dim;
    let mut a = m.clone();
    let mut v = DenseMatrix::<T>::identity(n);
    let tol = JACOBI_REL_TOL * m.frobenius_norm();

    if n > 1 && tol > 0.0 {
        let mut sweeps = 0;
        loop {
            let off = max_off_diagonal(&a);
            if off <= tol {
                break;
            }
            if sweeps == MAX_SWEEPS {
                return Err(Error::NotConverged { sweeps, off });
            }
            for p in 0..n {
                for q in p + 1..n {
                    rotate(&mut a, &mut v, p, q, tol);
                }
            }
            sweeps += 1;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re()).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));
    let values = order.iter().map(|&i| diag[i]).collect();
    let vectors = DenseMatrix::from_fn(n, |row, col| v[(row, order[col])]);
    Ok(Eigen { values, vectors })
}

/// Eigenvalues only, ascending.
pub fn eigvalsh<T: Scalar>(m: &DenseMatrix<T>) -> Result<Vec<f64>> {
    Ok(eigh(m)?.values)
}

fn max_off_diagonal<T: Scalar>(a: &DenseMatrix<T>) -> f64 {
    let mut off = 0.0_f64;
    for p in 0..a.dim {
        for q in p + 1..a.dim {
            off = off.max(a[(p, q)].modulus());
        }
    }
    off
}

fn rotate<T: Scalar>(a: &mut DenseMatrix<T>, v: &mut DenseMatrix<T>, p: usize, q: usize, tol: f64) {
    let apq = a[(p, q)];
    let mag = apq.modulus();
    if mag <= tol {
        return;
    }
    let phase = apq.scale(1.0 / mag);
    let app = a[(p, p)].re();
    let aqq = a[(q, q)].re();
    let theta = (aqq - app) / (2.0 * mag);
    let t = if theta == 0.0 {
        1.0
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // V = diag(1, conj(phase)) · [[c, s], [-s, c]] acting on (p, q)
    let vpp = T::from_re(c);
    let vpq = T::from_re(s);
    let vqp = phase.conj().scale(-s);
    let vqq = phase.conj().scale(c);

    let n = a.dim;
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * vpp + akq * vqp;
        a[(k, q)] = akp * vpq + akq * vqq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = vpp.conj() * apk + vqp.conj() * aqk;
        a[(q, k)] = vpq.conj() * apk + vqq.conj() * aqk;
    }
    a[(p, q)] = T::default();
    a[(q, p)] = T::default();
    a[(p, p)] = T::from_re(app - t * mag);
    a[(q, q)] = T::from_re(aqq + t * mag);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * vpp + vkq * vqp;
        v[(k, q)] = vkp * vpq + vkq * vqq;
    }
}

/// One irreducible diagonal block of a matrix and its eigendecomposition.
#[derive(Clone, Debug)]
pub struct Block<T> {
    /// Row/column indices of the block in the parent matrix, ascending.
    pub indices: Vec<usize>,
    pub eigen: Eigen<T>,
}

/// Eigendecomposition of a matrix split along its sparsity graph.
#[derive(Clone, Debug)]
pub struct BlockEigen<T> {
    pub dim: usize,
    pub blocks: Vec<Block<T>>,
}

impl<T: Scalar> BlockEigen<T> {
    /// All eigenvalues, ascending.
    pub fn values(&self) -> Vec<f64> {
        let mut vals: Vec<f64> = self
            .blocks
            .iter()
            .flat_map(|b| b.eigen.values.iter().copied())
            .collect();
        vals.sort_by(f64::total_cmp);
        vals
    }

    pub fn min_value(&self) -> f64 {
        self.blocks
            .iter()
            .filter_map(|b| b.eigen.values.first().copied())
            .fold(f64::INFINITY, f64::min)
    }
}

/// Diagonalizes each connected component of the nonzero pattern of `m`
/// separately. Exact structural zeros decide the split, so the result is
/// identical to a dense solve up to rounding.
pub fn eigh_reducible<T: Scalar>(m: &DenseMatrix<T>) -> Result<BlockEigen<T>> {
    check_input(m)?;
    let n = m.dim;
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for i in 0..n {
        for j in i + 1..n {
            if m[(i, j)] != T::default() || m[(j, i)] != T::default() {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..n {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().push(i);
    }
    let blocks = groups
        .into_values()
        .map(|indices| {
            let eigen = eigh(&m.submatrix(&indices))?;
            Ok(Block { indices, eigen })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BlockEigen { dim: n, blocks })
}
