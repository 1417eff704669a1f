//! Dense complex linear algebra used by the frame algorithms.
//!
//! Matrices are `nalgebra::DMatrix<Complex64>`. Eigendecompositions and
//! singular value decompositions are computed by cyclic Jacobi methods
//! (two-sided for Hermitian matrices, one-sided for general ones), which are
//! backward stable and give a full set of right singular vectors, so kernel
//! and cokernel bases come out of the same factorization.

mod jacobi;
mod random;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{FrameError, Result};

pub use jacobi::{
    cokernel_basis, hermitian_eig, null_basis, psd_sqrt, svd, svd_with_null, HermitianEig, Svd,
};
pub use random::haar_isometry;

pub type ComplexMatrix = DMatrix<Complex64>;

/// Numerical tolerance policy shared by all rank and equality decisions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    /// Singular values at or below `rank_rel_tol * sigma_max` count as zero.
    pub rank_rel_tol: f64,
    /// Absolute tolerance for equality comparisons.
    pub eq_abs_tol: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            rank_rel_tol: 1e-10,
            eq_abs_tol: 1e-9,
        }
    }
}

impl Tolerance {
    pub fn new(rank_rel_tol: f64, eq_abs_tol: f64) -> Result<Self> {
        for (name, v) in [("rank_rel_tol", rank_rel_tol), ("eq_abs_tol", eq_abs_tol)] {
            if !(v > 0.0 && v < 1.0) {
                return Err(FrameError::InvalidTolerance(format!(
                    "{name} must lie in (0, 1), got {v}"
                )));
            }
        }
        Ok(Self {
            rank_rel_tol,
            eq_abs_tol,
        })
    }
}

/// Builds a matrix from entries listed row by row.
pub fn matrix_from_row_major(
    rows: usize,
    cols: usize,
    entries: &[Complex64],
) -> Result<ComplexMatrix> {
    if rows == 0 || cols == 0 {
        return Err(FrameError::BadShape(format!(
            "matrix must be at least 1x1, got {rows}x{cols}"
        )));
    }
    if entries.len() != rows * cols {
        return Err(FrameError::BadShape(format!(
            "{rows}x{cols} matrix needs {} entries, got {}",
            rows * cols,
            entries.len()
        )));
    }
    let m = ComplexMatrix::from_row_slice(rows, cols, entries);
    ensure_finite(&m)?;
    Ok(m)
}

/// Real matrix embedded into the complex field.
pub fn real_matrix(rows: usize, cols: usize, entries: &[f64]) -> Result<ComplexMatrix> {
    let entries: Vec<Complex64> = entries.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    matrix_from_row_major(rows, cols, &entries)
}

pub fn ensure_finite(m: &ComplexMatrix) -> Result<()> {
    for j in 0..m.ncols() {
        for i in 0..m.nrows() {
            let z = m[(i, j)];
            if !(z.re.is_finite() && z.im.is_finite()) {
                return Err(FrameError::NonFinite { row: i, col: j });
            }
        }
    }
    Ok(())
}

/// Count of singular values strictly above `rank_rel_tol * sigma_1`.
///
/// `singulars` must be sorted in descending order.
pub fn numerical_rank(singulars: &[f64], policy: &Tolerance) -> usize {
    let Some(&largest) = singulars.first() else {
        return 0;
    };
    if largest <= 0.0 {
        return 0;
    }
    let cutoff = policy.rank_rel_tol * largest;
    singulars.iter().take_while(|&&s| s > cutoff).count()
}

/// Neumaier-compensated sum in iteration order.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut sum = 0.0_f64;
    let mut carry = 0.0_f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            carry += (sum - t) + v;
        } else {
            carry += (v - t) + sum;
        }
        sum = t;
    }
    sum + carry
}

/// Squared Frobenius norm, summed column-major with compensation.
pub fn frobenius_norm_sq(a: &ComplexMatrix) -> f64 {
    compensated_sum(a.iter().map(|z| z.norm_sqr()))
}

/// Frobenius (Hilbert-Schmidt) norm.
pub fn frobenius_norm(a: &ComplexMatrix) -> f64 {
    frobenius_norm_sq(a).sqrt()
}

/// `||A^* A - I||_F`, the deviation of the columns from orthonormality.
pub fn orthonormality_residual(a: &ComplexMatrix) -> f64 {
    let gram = a.adjoint() * a;
    frobenius_norm(&(gram - ComplexMatrix::identity(a.ncols(), a.ncols())))
}

pub(crate) fn identity(n: usize) -> ComplexMatrix {
    ComplexMatrix::identity(n, n)
}

/// Multiplies a column by the unit scalar that makes its largest-magnitude
/// entry real and positive. Returns the scalar applied.
pub(crate) fn fix_column_phase(m: &mut ComplexMatrix, col: usize) -> Complex64 {
    let mut largest = 0.0_f64;
    for i in 0..m.nrows() {
        largest = largest.max(m[(i, col)].norm());
    }
    if largest == 0.0 {
        return Complex64::new(1.0, 0.0);
    }
    // first entry within rounding of the maximum, so exact ties resolve by index
    let pivot = (0..m.nrows())
        .find(|&i| m[(i, col)].norm() >= largest * (1.0 - 1e-10))
        .unwrap_or(0);
    let z = m[(pivot, col)];
    let phase = z.conj() / z.norm();
    for i in 0..m.nrows() {
        m[(i, col)] *= phase;
    }
    phase
}
