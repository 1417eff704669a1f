//! Finite frames: synthesis operator, frame bounds, classification,
//! weak similarity and quadratic distance.

mod io;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{FrameError, Result};
use crate::linalg::{
    compensated_sum, ensure_finite, null_basis, svd, ComplexMatrix, Tolerance,
};

pub use io::{frame_from_json, frame_from_value, frame_to_value, FieldKind};

/// An ordered system of `n` vectors in `C^m`, stored as the columns of its
/// synthesis matrix. Zero vectors are allowed.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    synthesis: ComplexMatrix,
    label: String,
}

impl Frame {
    pub fn new(ambient_dim: usize, vectors: &[Vec<Complex64>], label: impl Into<String>) -> Result<Self> {
        if ambient_dim == 0 {
            return Err(FrameError::BadShape("ambient dimension must be at least 1".into()));
        }
        if vectors.is_empty() {
            return Err(FrameError::BadShape("a frame needs at least one vector".into()));
        }
        let mut synthesis = ComplexMatrix::zeros(ambient_dim, vectors.len());
        for (j, v) in vectors.iter().enumerate() {
            if v.len() != ambient_dim {
                return Err(FrameError::BadShape(format!(
                    "vector {j} has {} entries, expected {ambient_dim}",
                    v.len()
                )));
            }
            for (i, &z) in v.iter().enumerate() {
                synthesis[(i, j)] = z;
            }
        }
        Self::from_synthesis(synthesis, label)
    }

    /// Real vectors embedded with zero imaginary parts.
    pub fn from_real(ambient_dim: usize, vectors: &[Vec<f64>], label: impl Into<String>) -> Result<Self> {
        let vectors: Vec<Vec<Complex64>> = vectors
            .iter()
            .map(|v| v.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::new(ambient_dim, &vectors, label)
    }

    /// Frame whose `i`-th vector is column `i` of `synthesis`.
    pub fn from_synthesis(synthesis: ComplexMatrix, label: impl Into<String>) -> Result<Self> {
        if synthesis.nrows() == 0 || synthesis.ncols() == 0 {
            return Err(FrameError::BadShape(format!(
                "synthesis matrix must be at least 1x1, got {}x{}",
                synthesis.nrows(),
                synthesis.ncols()
            )));
        }
        ensure_finite(&synthesis)?;
        Ok(Self {
            synthesis,
            label: label.into(),
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.synthesis.nrows()
    }

    /// Number of vectors.
    pub fn len(&self) -> usize {
        self.synthesis.ncols()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn vector(&self, i: usize) -> Vec<Complex64> {
        self.synthesis.column(i).iter().copied().collect()
    }

    pub fn vectors(&self) -> Vec<Vec<Complex64>> {
        (0..self.len()).map(|i| self.vector(i)).collect()
    }

    pub fn synthesis(&self) -> &ComplexMatrix {
        &self.synthesis
    }

    pub fn into_synthesis(self) -> ComplexMatrix {
        self.synthesis
    }

    pub fn is_zero(&self) -> bool {
        self.synthesis.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }

    /// Applies `op` to every vector: the frame `{op f_i}`.
    pub fn map(&self, op: &ComplexMatrix) -> Result<Frame> {
        if op.ncols() != self.ambient_dim() {
            return Err(FrameError::AmbientMismatch {
                left: op.ncols(),
                right: self.ambient_dim(),
            });
        }
        Frame::from_synthesis(op * &self.synthesis, self.label.clone())
    }

    /// Reorders the vectors: result `i` is input `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Frame> {
        let mut seen = vec![false; self.len()];
        if perm.len() != self.len() || perm.iter().any(|&p| p >= self.len() || std::mem::replace(&mut seen[p], true)) {
            return Err(FrameError::BadShape("not a permutation of the index set".into()));
        }
        Frame::from_synthesis(self.synthesis.select_columns(perm), self.label.clone())
    }
}

/// The synthesis operator `F: C^n -> C^m`, `F e_i = f_i`.
pub fn synthesis_matrix(frame: &Frame) -> ComplexMatrix {
    frame.synthesis.clone()
}

/// The frame operator `F F^*`.
pub fn frame_operator(frame: &Frame) -> ComplexMatrix {
    &frame.synthesis * frame.synthesis.adjoint()
}

/// `sum_j |<x, f_j>|^2`.
pub fn frame_sum(frame: &Frame, x: &[Complex64]) -> Result<f64> {
    if x.len() != frame.ambient_dim() {
        return Err(FrameError::AmbientMismatch {
            left: x.len(),
            right: frame.ambient_dim(),
        });
    }
    Ok(compensated_sum((0..frame.len()).map(|j| {
        let col = frame.synthesis.column(j);
        let inner: Complex64 = col.iter().zip(x).map(|(f, xi)| xi * f.conj()).sum();
        inner.norm_sqr()
    })))
}

/// Optimal frame bounds of a frame for its own span.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrameBounds {
    /// Smallest nonzero eigenvalue of `F F^*`.
    pub lower: f64,
    /// Largest eigenvalue of `F F^*`.
    pub upper: f64,
}

/// Computes the bounds `C`, `D` restricted to `span{f_i}`.
pub fn frame_bounds(frame: &Frame, policy: &Tolerance) -> Result<FrameBounds> {
    let s = svd(&frame.synthesis, policy)?;
    match (s.singulars.first(), s.singulars.last()) {
        (Some(&hi), Some(&lo)) => Ok(FrameBounds {
            lower: lo * lo,
            upper: hi * hi,
        }),
        _ => Err(FrameError::ZeroFrame),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameClass {
    pub is_frame_of_span: bool,
    pub is_tight: bool,
    pub is_normalized_tight: bool,
    /// `N = dim ker F`; for a finite frame this is its excess.
    pub kernel_dim: usize,
    pub rank: usize,
}

/// Tightness classification. Total: a zero system is reported as a non-frame.
pub fn classify(frame: &Frame, policy: &Tolerance) -> Result<FrameClass> {
    let n = frame.len();
    let bounds = match frame_bounds(frame, policy) {
        Ok(b) => b,
        Err(FrameError::ZeroFrame) => {
            return Ok(FrameClass {
                is_frame_of_span: false,
                is_tight: false,
                is_normalized_tight: false,
                kernel_dim: n,
                rank: 0,
            })
        }
        Err(e) => return Err(e),
    };
    let rank = svd(&frame.synthesis, policy)?.rank();
    let is_tight = bounds.upper - bounds.lower <= policy.eq_abs_tol * bounds.upper;
    let is_normalized_tight = is_tight
        && (bounds.lower - 1.0).abs() <= policy.eq_abs_tol
        && (bounds.upper - 1.0).abs() <= policy.eq_abs_tol;
    Ok(FrameClass {
        is_frame_of_span: true,
        is_tight,
        is_normalized_tight,
        kernel_dim: n - rank,
        rank,
    })
}

fn projection_residual(basis: &ComplexMatrix, onto: &ComplexMatrix) -> f64 {
    // || B - Q Q^* B ||_F for orthonormal Q
    let projected = onto * (onto.adjoint() * basis);
    crate::linalg::frobenius_norm(&(basis - projected))
}

/// Weak similarity, decided by equality of the kernels of the synthesis
/// operators.
pub fn weakly_similar(a: &Frame, b: &Frame, policy: &Tolerance) -> Result<bool> {
    if a.len() != b.len() {
        return Err(FrameError::IndexMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let ka = null_basis(&a.synthesis, policy)?;
    let kb = null_basis(&b.synthesis, policy)?;
    if ka.ncols() != kb.ncols() {
        return Ok(false);
    }
    Ok(projection_residual(&ka, &kb) <= policy.eq_abs_tol
        && projection_residual(&kb, &ka) <= policy.eq_abs_tol)
}

/// `sum_j ||f_j - g_j||^2` with compensated summation.
pub fn quadratic_distance(a: &Frame, b: &Frame) -> Result<f64> {
    if a.len() != b.len() {
        return Err(FrameError::IndexMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    if a.ambient_dim() != b.ambient_dim() {
        return Err(FrameError::AmbientMismatch {
            left: a.ambient_dim(),
            right: b.ambient_dim(),
        });
    }
    Ok(compensated_sum(
        a.synthesis
            .iter()
            .zip(b.synthesis.iter())
            .map(|(x, y)| (x - y).norm_sqr()),
    ))
}
