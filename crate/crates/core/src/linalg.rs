//! Dense complex linear algebra used by the exact (oracle) layer.
//!
//! Everything here works on `nalgebra::DMatrix<C64>`. Sizes are capped at
//! [`dense_qubit_cap`] qubits; the cap defaults to 14 and can be overridden
//! through the `SYK_DENSE_QUBIT_CAP` environment variable.

use std::sync::OnceLock;

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};

pub type C64 = nalgebra::Complex<f64>;
pub type Matrix = DMatrix<C64>;

pub const DEFAULT_DENSE_QUBIT_CAP: usize = 14;
pub const DENSE_CAP_ENV: &str = "SYK_DENSE_QUBIT_CAP";

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Largest qubit count for which dense matrices are built.
pub fn dense_qubit_cap() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var(DENSE_CAP_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_DENSE_QUBIT_CAP)
    })
}

pub fn check_dense_cap(n_qubits: usize) -> Result<()> {
    let cap = dense_qubit_cap();
    if n_qubits > cap {
        return Err(Error::DenseCapExceeded { n_qubits, cap });
    }
    Ok(())
}

pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    a.kronecker(b)
}

pub fn identity(dim: usize) -> Matrix {
    Matrix::identity(dim, dim)
}

/// Largest element-wise modulus of `a - b`.
pub fn max_abs_diff(a: &Matrix, b: &Matrix) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Spectral norm (largest singular value).
pub fn operator_norm(a: &Matrix) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    a.clone()
        .svd(false, false)
        .singular_values
        .iter()
        .cloned()
        .fold(0.0, f64::max)
}

/// Distance between unitaries ignoring global phase: `1 - |tr(U†V)| / d`.
pub fn phase_insensitive_distance(u: &Matrix, v: &Matrix) -> f64 {
    assert_eq!(u.shape(), v.shape());
    let d = u.nrows() as f64;
    let overlap: C64 = u.iter().zip(v.iter()).map(|(a, b)| a.conj() * b).sum();
    (1.0 - overlap.norm() / d).max(0.0)
}

/// `max |e^{iθ}U − V|` with `θ` chosen to align the global phases through
/// `tr(U†V)`. Linear in the error, unlike [`phase_insensitive_distance`].
pub fn phase_aligned_max_diff(u: &Matrix, v: &Matrix) -> f64 {
    assert_eq!(u.shape(), v.shape());
    let overlap: C64 = u.iter().zip(v.iter()).map(|(a, b)| a.conj() * b).sum();
    let phase = if overlap.norm() > 0.0 { overlap / overlap.norm() } else { ONE };
    u.iter().zip(v.iter()).map(|(a, b)| (a * phase - b).norm()).fold(0.0, f64::max)
}

/// `‖U U† − I‖_max`.
pub fn unitarity_defect(u: &Matrix) -> f64 {
    let prod = u * u.adjoint();
    max_abs_diff(&prod, &identity(u.nrows()))
}

/// Eigendecomposition of a hermitian matrix, kept around so that `exp(-iHt)`
/// can be evaluated for many `t` cheaply.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub eigenvalues: DVector<f64>,
    pub eigenvectors: Matrix,
}

impl HermitianEigen {
    pub fn new(h: &Matrix) -> Self {
        // symmetrize first so round-off in the input cannot leak an
        // anti-hermitian part into the decomposition
        let herm = (h + h.adjoint()).scale(0.5);
        let eig = SymmetricEigen::new(herm);
        HermitianEigen {
            eigenvalues: eig.eigenvalues,
            eigenvectors: eig.eigenvectors,
        }
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `exp(-i H t)`.
    pub fn evolution(&self, t: f64) -> Matrix {
        if t == 0.0 {
            return identity(self.dim());
        }
        let v = &self.eigenvectors;
        let mut scaled = v.clone();
        for (col, &lambda) in self.eigenvalues.iter().enumerate() {
            let phase = C64::from_polar(1.0, -lambda * t);
            for entry in scaled.column_mut(col).iter_mut() {
                *entry *= phase;
            }
        }
        scaled * v.adjoint()
    }
}

/// Single-qubit Pauli matrices in the computational basis `{|0⟩, |1⟩}`.
pub mod paulis {
    use super::{Matrix, C64};

    pub fn i2() -> Matrix {
        Matrix::identity(2, 2)
    }

    pub fn x() -> Matrix {
        Matrix::from_row_slice(
            2,
            2,
            &[C64::new(0., 0.), C64::new(1., 0.), C64::new(1., 0.), C64::new(0., 0.)],
        )
    }

    pub fn y() -> Matrix {
        Matrix::from_row_slice(
            2,
            2,
            &[C64::new(0., 0.), C64::new(0., -1.), C64::new(0., 1.), C64::new(0., 0.)],
        )
    }

    pub fn z() -> Matrix {
        Matrix::from_row_slice(
            2,
            2,
            &[C64::new(1., 0.), C64::new(0., 0.), C64::new(0., 0.), C64::new(-1., 0.)],
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evolution_of_diagonal_hamiltonian() {
        let h = paulis::z().scale(0.7);
        let eig = HermitianEigen::new(&h);
        let u = eig.evolution(1.3);
        let expect = Matrix::from_diagonal(&DVector::from_vec(vec![
            C64::from_polar(1.0, -0.7 * 1.3),
            C64::from_polar(1.0, 0.7 * 1.3),
        ]));
        assert!(max_abs_diff(&u, &expect) < 1e-14);
    }

    #[test]
    fn phase_insensitive_distance_ignores_global_phase() {
        let u = paulis::x();
        let v = u.scale(1.0) * C64::from_polar(1.0, 0.4);
        assert!(phase_insensitive_distance(&u, &v) < 1e-15);
        assert!(phase_insensitive_distance(&u, &paulis::z()) > 0.5);
    }

    #[test]
    fn operator_norm_of_pauli_is_one() {
        assert!((operator_norm(&paulis::y()) - 1.0).abs() < 1e-14);
        assert!((operator_norm(&paulis::y().scale(3.0)) - 3.0).abs() < 1e-13);
    }
}
