use super::{polar_decompose, IDENTITY_TOLERANCE};
use crate::error::{FrameError, Result};
use crate::frame::{quadratic_distance, Frame};
use crate::linalg::{
    frobenius_norm, frobenius_norm_sq, hermitian_eig, identity, null_basis,
    orthonormality_residual, ComplexMatrix, Tolerance,
};

/// Target columns for the kernel of `F` in `extend_orthogonalization`.
#[derive(Debug, Clone)]
pub enum CokernelChoice {
    /// The first `N` columns of the phase-normalized basis of `(ran F)^perp`.
    Canonical,
    /// `N` orthonormal columns in `(ran F)^perp`, supplied by the caller.
    Explicit(ComplexMatrix),
}

#[derive(Debug, Clone)]
pub struct OrthogonalizationResult {
    pub exists: bool,
    /// True iff `ker F = {0}`.
    pub unique: bool,
    /// `{(V + W) e_i}`, present iff `exists`.
    pub nu: Option<Frame>,
    /// `m x n` partial isometry with initial space `ker |F|` and range
    /// orthogonal to `ran W`; zero when `ker F` is trivial or no extension exists.
    pub extension: ComplexMatrix,
    /// `sum_j ||nu_j - f_j||^2`, present iff `exists`.
    pub distance: Option<f64>,
    /// `||I - |F|||_2`; its square is the optimal distance when one exists.
    pub hs_i_minus_abs_f: f64,
    /// `||nu^* nu - I||_F`.
    pub gram_residual: Option<f64>,
    /// For injective `F`: `||W - F (F^*F)^{-1/2}||_F`, comparing the polar
    /// factor with the Gram-matrix route.
    pub inverse_sqrt_residual: Option<f64>,
    pub kernel_dim: usize,
    /// `dim (ran F)^perp`.
    pub cokernel_dim: usize,
}

/// Symmetric orthogonalization of `{f_i}`.
///
/// Injective `F` gives the unique answer `{W e_i}`. Otherwise the canonical
/// extension is used when `dim (ran F)^perp >= dim ker F`, and `exists` is
/// false when it is not.
pub fn loewdin_orthogonalization(frame: &Frame, policy: &Tolerance) -> Result<OrthogonalizationResult> {
    match extend_orthogonalization(frame, &CokernelChoice::Canonical, policy) {
        Err(FrameError::NoExtension {
            cokernel_dim,
            kernel_dim,
        }) => {
            let pd = polar_decompose(frame.synthesis(), policy)?;
            let n = frame.len();
            Ok(OrthogonalizationResult {
                exists: false,
                unique: false,
                nu: None,
                extension: ComplexMatrix::zeros(frame.ambient_dim(), n),
                distance: None,
                hs_i_minus_abs_f: frobenius_norm(&(identity(n) - &pd.abs_f)),
                gram_residual: None,
                inverse_sqrt_residual: None,
                kernel_dim,
                cokernel_dim,
            })
        }
        other => other,
    }
}

/// Builds `{(V + W) e_i}` where `V` maps an orthonormal basis of `ker F`
/// isometrically onto the chosen columns of `(ran F)^perp`.
///
/// Every symmetric orthogonalization arises this way; the choice of columns
/// is free, so the result is unique only when `ker F = {0}`.
pub fn extend_orthogonalization(
    frame: &Frame,
    choice: &CokernelChoice,
    policy: &Tolerance,
) -> Result<OrthogonalizationResult> {
    let f = frame.synthesis();
    let (m, n) = f.shape();
    let pd = polar_decompose(f, policy)?;
    let r = pd.rank();
    let kernel_dim = pd.kernel_dim;
    let cokernel_dim = m - r;
    if cokernel_dim < kernel_dim {
        return Err(FrameError::NoExtension {
            cokernel_dim,
            kernel_dim,
        });
    }

    let targets = match choice {
        CokernelChoice::Canonical => {
            // complement of ran F taken from U_r^*, whose singular values are all 1
            let complement = null_basis(&pd.range_basis.adjoint(), policy)?;
            complement.columns(0, kernel_dim).into_owned()
        }
        CokernelChoice::Explicit(cols) => {
            validate_cokernel(cols, &pd.range_basis, kernel_dim, policy)?;
            cols.clone()
        }
    };

    let extension = &targets * pd.kernel_basis.adjoint();
    let combined = &extension + &pd.w;
    let nu = Frame::from_synthesis(combined.clone(), format!("{} (symmetric orthogonalization)", frame.label()))?;
    let distance = quadratic_distance(&nu, frame)?;
    let hs_i_sq = frobenius_norm_sq(&(identity(n) - &pd.abs_f));
    if (distance - hs_i_sq).abs() > IDENTITY_TOLERANCE {
        return Err(FrameError::IdentityMismatch {
            direct: distance,
            via_identity: hs_i_sq,
            via_projection: frobenius_norm_sq(&(&pd.projection - &pd.abs_f)) + kernel_dim as f64,
        });
    }
    let inverse_sqrt_residual = if kernel_dim == 0 {
        Some(inverse_sqrt_route(f, &pd.w, policy)?)
    } else {
        None
    };

    Ok(OrthogonalizationResult {
        exists: true,
        unique: kernel_dim == 0,
        nu: Some(nu),
        extension,
        distance: Some(distance),
        hs_i_minus_abs_f: hs_i_sq.sqrt(),
        gram_residual: Some(orthonormality_residual(&combined)),
        inverse_sqrt_residual,
        kernel_dim,
        cokernel_dim,
    })
}

fn validate_cokernel(
    cols: &ComplexMatrix,
    range_basis: &ComplexMatrix,
    kernel_dim: usize,
    policy: &Tolerance,
) -> Result<()> {
    if cols.nrows() != range_basis.nrows() || cols.ncols() != kernel_dim {
        return Err(FrameError::BadCokernel(format!(
            "expected {}x{kernel_dim} columns, got {}x{}",
            range_basis.nrows(),
            cols.nrows(),
            cols.ncols()
        )));
    }
    let ortho = orthonormality_residual(cols);
    if ortho > policy.eq_abs_tol {
        return Err(FrameError::BadCokernel(format!(
            "columns are not orthonormal (residual {ortho:.3e})"
        )));
    }
    let overlap = frobenius_norm(&(range_basis.adjoint() * cols));
    if overlap > policy.eq_abs_tol {
        return Err(FrameError::BadCokernel(format!(
            "columns are not orthogonal to ran F (overlap {overlap:.3e})"
        )));
    }
    Ok(())
}

/// `||W - F (F^*F)^{-1/2}||_F` with the inverse square root taken from an
/// eigendecomposition of the Gram matrix.
fn inverse_sqrt_route(f: &ComplexMatrix, w: &ComplexMatrix, policy: &Tolerance) -> Result<f64> {
    let gram = f.adjoint() * f;
    let eig = hermitian_eig(&gram, policy)?;
    let mut scaled = eig.eigenvectors.clone();
    for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
        scaled.column_mut(k).scale_mut(1.0 / lambda.max(f64::MIN_POSITIVE).sqrt());
    }
    let inv_sqrt = scaled * eig.eigenvectors.adjoint();
    Ok(frobenius_norm(&(f * inv_sqrt - w)))
}
