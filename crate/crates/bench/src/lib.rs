//! Fixtures shared by the benchmarks.

use num_complex::Complex64;
use xxz_core::DenseMatrix;

/// Dense complex-Hermitian matrix with no zero entries, so the eigensolver
/// cannot split it into blocks. Deterministic in `dim`.
pub fn dense_hermitian(dim: usize) -> DenseMatrix<Complex64> {
    DenseMatrix::from_fn(dim, |i, j| {
        let (a, b) = (i.min(j) as f64, i.max(j) as f64);
        let re = (0.7 * a + 1.3 * b).sin() + if i == j { a + 1.0 } else { 0.0 };
        let im = if i == j {
            0.0
        } else {
            (0.4 * a - 0.9 * b).cos()
        };
        Complex64::new(re, if i < j { im } else { -im })
    })
}

/// `Δ` values spread over the default sweep range.
pub fn anisotropies(count: usize) -> Vec<f64> {
    (0..count)
        .map(|i| 6.0 * i as f64 / count.max(1) as f64)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_is_self_adjoint_and_full() {
        let m = dense_hermitian(24);
        assert!(m.is_self_adjoint(0.0));
        assert!(m.as_slice().iter().all(|z| z.norm() > 0.0));
    }
}
