//! Symmetric approximation of a frame by a normalized tight frame and
//! symmetric (Löwdin) orthogonalization.
//!
//! Both constructions start from the polar decomposition `F = W |F|` of the
//! synthesis operator. The symmetric approximation is `{W e_i}`: among all
//! normalized tight frames whose synthesis operator has the same kernel as
//! `F`, it minimizes `sum_i ||mu_i - f_i||^2`, and the minimum equals
//! `||P - |F|||_2^2 = ||I - |F|||_2^2 - dim ker F`.

mod orthogonalize;
mod polar;

use crate::error::{FrameError, Result};
use crate::frame::{classify, quadratic_distance, Frame};
use crate::linalg::{compensated_sum, frobenius_norm, ComplexMatrix, Tolerance};

pub use orthogonalize::{
    extend_orthogonalization, loewdin_orthogonalization, CokernelChoice, OrthogonalizationResult,
};
pub use polar::{approximation_distance_formulas, polar_decompose, PolarDecomposition};

/// Largest tolerated disagreement between the direct distance and its
/// closed forms before the result is rejected as numerically broken.
pub const IDENTITY_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone)]
pub struct ApproximationResult {
    /// `{W e_i}`.
    pub nu: Frame,
    /// `sum_j ||nu_j - f_j||^2`, computed directly.
    pub distance: f64,
    /// `||P - |F|||_2`.
    pub hs_p_minus_abs_f: f64,
    /// `||I - |F|||_2`.
    pub hs_i_minus_abs_f: f64,
    pub kernel_dim: usize,
    /// Nonzero eigenvalues of `|F|`, descending.
    pub singulars: Vec<f64>,
}

/// Computes the symmetric approximation `{W e_i}` and checks the direct
/// distance against both closed forms.
pub fn symmetric_approximation(frame: &Frame, policy: &Tolerance) -> Result<ApproximationResult> {
    let pd = polar_decompose(frame.synthesis(), policy)?;
    if pd.rank() == 0 {
        return Err(FrameError::ZeroFrame);
    }
    let nu = Frame::from_synthesis(pd.w.clone(), format!("{} (symmetric approximation)", frame.label()))?;
    let distance = quadratic_distance(&nu, frame)?;
    let (via_identity, via_projection) = approximation_distance_formulas(&pd);
    if (distance - via_identity).abs() > IDENTITY_TOLERANCE
        || (distance - via_projection).abs() > IDENTITY_TOLERANCE
    {
        return Err(FrameError::IdentityMismatch {
            direct: distance,
            via_identity,
            via_projection,
        });
    }
    let n = pd.domain_dim();
    Ok(ApproximationResult {
        nu,
        distance,
        hs_p_minus_abs_f: frobenius_norm(&(&pd.projection - &pd.abs_f)),
        hs_i_minus_abs_f: frobenius_norm(&(ComplexMatrix::identity(n, n) - &pd.abs_f)),
        kernel_dim: pd.kernel_dim,
        singulars: pd.singulars,
    })
}

/// `(sum_j ||T h_j||^2)^{1/2}` for a normalized tight frame `{h_j}` of the
/// whole domain of `T`; it equals the Hilbert-Schmidt norm of `T` whatever
/// the frame.
pub fn hs_norm_via_tight_frame(t: &ComplexMatrix, tight: &Frame, policy: &Tolerance) -> Result<f64> {
    if tight.ambient_dim() != t.ncols() {
        return Err(FrameError::AmbientMismatch {
            left: t.ncols(),
            right: tight.ambient_dim(),
        });
    }
    let class = classify(tight, policy)?;
    if !class.is_normalized_tight || class.rank != tight.ambient_dim() {
        return Err(FrameError::NotNormalizedTight);
    }
    let images = t * tight.synthesis();
    Ok(compensated_sum(images.iter().map(|z| z.norm_sqr())).sqrt())
}
