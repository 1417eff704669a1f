use crate::error::Result;
use crate::linalg::{frobenius_norm_sq, identity, svd_with_null, ComplexMatrix, Tolerance};

/// Polar decomposition `F = W |F|` of a synthesis operator.
///
/// `W` is the partial isometry with initial space `(ker F)^perp`, `|F|` is
/// `(F^* F)^{1/2}` and `P` projects onto `ran |F|`. Singular values below the
/// rank cutoff are folded into the kernel, so `|F|` and `P` have rank exactly
/// `r = n - kernel_dim`.
#[derive(Debug, Clone)]
pub struct PolarDecomposition {
    /// `m x n` partial isometry.
    pub w: ComplexMatrix,
    /// `n x n`, Hermitian positive semidefinite.
    pub abs_f: ComplexMatrix,
    /// `n x n` orthogonal projection onto `(ker F)^perp`.
    pub projection: ComplexMatrix,
    /// Nonzero singular values of `F`, descending (the nonzero eigenvalues of `|F|`).
    pub singulars: Vec<f64>,
    pub kernel_dim: usize,
    /// `m x r`, orthonormal basis of `ran F`.
    pub range_basis: ComplexMatrix,
    /// `n x r`, orthonormal basis of `(ker F)^perp`.
    pub initial_basis: ComplexMatrix,
    /// `n x N`, orthonormal basis of `ker F`.
    pub kernel_basis: ComplexMatrix,
}

impl PolarDecomposition {
    pub fn rank(&self) -> usize {
        self.singulars.len()
    }

    /// Number of vectors `n`.
    pub fn domain_dim(&self) -> usize {
        self.abs_f.nrows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.w.nrows()
    }
}

/// Polar decomposition through the thin SVD `F = U S V^*`:
/// `W = U V^*`, `|F| = V S V^*`, `P = V V^*`.
pub fn polar_decompose(f: &ComplexMatrix, policy: &Tolerance) -> Result<PolarDecomposition> {
    let (s, kernel_basis) = svd_with_null(f, policy)?;
    let n = f.ncols();
    let w = &s.u * s.v.adjoint();
    let mut vs = s.v.clone();
    for (k, &sigma) in s.singulars.iter().enumerate() {
        vs.column_mut(k).scale_mut(sigma);
    }
    let abs_f = hermitian_part(&vs * s.v.adjoint());
    let projection = hermitian_part(&s.v * s.v.adjoint());
    Ok(PolarDecomposition {
        w,
        abs_f,
        projection,
        kernel_dim: n - s.rank(),
        singulars: s.singulars,
        range_basis: s.u,
        initial_basis: s.v,
        kernel_basis,
    })
}

fn hermitian_part(a: ComplexMatrix) -> ComplexMatrix {
    (&a + a.adjoint()).scale(0.5)
}

/// The two closed forms of the approximation distance:
/// `(||I - |F|||^2 - N, ||P - |F|||^2)`. Analytically both equal
/// `sum (1 - lambda_i)^2` over the nonzero eigenvalues of `|F|`.
pub fn approximation_distance_formulas(pd: &PolarDecomposition) -> (f64, f64) {
    let n = pd.domain_dim();
    let via_identity = frobenius_norm_sq(&(identity(n) - &pd.abs_f)) - pd.kernel_dim as f64;
    let via_projection = frobenius_norm_sq(&(&pd.projection - &pd.abs_f));
    (via_identity, via_projection)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{frobenius_norm, orthonormality_residual, psd_sqrt, real_matrix};
    use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn check_invariants(f: &ComplexMatrix, pd: &PolarDecomposition) {
        let scale = 1.0 + frobenius_norm(f);
        assert!(frobenius_norm(&(&pd.w * &pd.abs_f - f)) <= 1e-9 * scale);
        assert!(frobenius_norm(&(pd.w.adjoint() * &pd.w - &pd.projection)) <= 1e-9);
        let root = psd_sqrt(&(f.adjoint() * f), &tol()).unwrap();
        assert!(frobenius_norm(&(root - &pd.abs_f)) <= 1e-9 * scale);
        assert!(frobenius_norm(&(&pd.projection * &pd.abs_f - &pd.abs_f)) <= 1e-9 * scale);
        assert!(frobenius_norm(&(&pd.abs_f * &pd.projection - &pd.abs_f)) <= 1e-9 * scale);
        assert!(orthonormality_residual(&pd.kernel_basis) <= 1e-12);
        assert!(frobenius_norm(&(f * &pd.kernel_basis)) <= 1e-9 * scale);
    }

    #[test]
    fn two_copies_of_one() {
        let f = real_matrix(1, 2, &[1.0, 1.0]).unwrap();
        let pd = polar_decompose(&f, &tol()).unwrap();
        let w = real_matrix(1, 2, &[FRAC_1_SQRT_2, FRAC_1_SQRT_2]).unwrap();
        assert!(frobenius_norm(&(&pd.w - w)) < 1e-15);
        let abs = real_matrix(2, 2, &[1.0, 1.0, 1.0, 1.0]).unwrap().scale(FRAC_1_SQRT_2);
        assert!(frobenius_norm(&(&pd.abs_f - abs)) < 1e-15);
        assert_eq!(pd.singulars.len(), 1);
        assert!((pd.singulars[0] - SQRT_2).abs() < 1e-15);
        assert_eq!(pd.kernel_dim, 1);
        check_invariants(&f, &pd);
    }

    #[test]
    fn identity_and_diagonal() {
        let id = identity(3);
        let pd = polar_decompose(&id, &tol()).unwrap();
        assert_eq!(pd.kernel_dim, 0);
        for m in [&pd.w, &pd.abs_f, &pd.projection] {
            assert!(frobenius_norm(&(m - &id)) < 1e-15);
        }

        let d = real_matrix(2, 2, &[1.0, 0.0, 0.0, 2.0]).unwrap();
        let pd = polar_decompose(&d, &tol()).unwrap();
        assert!(frobenius_norm(&(&pd.w - identity(2))) < 1e-15);
        assert!(frobenius_norm(&(&pd.abs_f - &d)) < 1e-15);
        check_invariants(&d, &pd);
    }

    #[test]
    fn zero_matrix_has_full_kernel() {
        let z = ComplexMatrix::zeros(2, 3);
        let pd = polar_decompose(&z, &tol()).unwrap();
        assert_eq!(pd.kernel_dim, 3);
        assert_eq!(frobenius_norm(&pd.w), 0.0);
    }

    #[test]
    fn distance_formula_examples() {
        let f = real_matrix(1, 2, &[1.0, 1.0]).unwrap();
        let (a, b) = approximation_distance_formulas(&polar_decompose(&f, &tol()).unwrap());
        let expected = 3.0 - 2.0 * SQRT_2;
        assert!((a - expected).abs() < 1e-14 && (b - expected).abs() < 1e-14);

        let (a, b) = approximation_distance_formulas(&polar_decompose(&identity(3), &tol()).unwrap());
        assert!(a.abs() < 1e-15 && b.abs() < 1e-15);

        let two = real_matrix(1, 1, &[2.0]).unwrap();
        let (a, b) = approximation_distance_formulas(&polar_decompose(&two, &tol()).unwrap());
        assert!((a - 1.0).abs() < 1e-15 && (b - 1.0).abs() < 1e-15);
    }
}
