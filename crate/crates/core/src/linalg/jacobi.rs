use num_complex::Complex64;

use super::{fix_column_phase, frobenius_norm, identity, numerical_rank, ComplexMatrix, Tolerance};
use crate::error::{FrameError, Result};

const EPS: f64 = f64::EPSILON;

/// Eigendecomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEig {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors, one per column, in eigenvalue order.
    pub eigenvectors: ComplexMatrix,
}

/// Thin singular value decomposition truncated at the numerical rank.
#[derive(Debug, Clone)]
pub struct Svd {
    /// `m x r`, orthonormal columns.
    pub u: ComplexMatrix,
    /// Descending, all above the rank cutoff.
    pub singulars: Vec<f64>,
    /// `n x r`, orthonormal columns.
    pub v: ComplexMatrix,
}

impl Svd {
    pub fn rank(&self) -> usize {
        self.singulars.len()
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        let mut us = self.u.clone();
        for (k, &s) in self.singulars.iter().enumerate() {
            us.column_mut(k).scale_mut(s);
        }
        us * self.v.adjoint()
    }
}

/// Full decomposition `A V = W` with `V` unitary (`n x n`) and the columns of
/// `W` mutually orthogonal, sorted by descending norm.
struct FullSvd {
    w: ComplexMatrix,
    sigma: Vec<f64>,
    v: ComplexMatrix,
}

fn sweep_budget(n: usize) -> usize {
    100 * n.max(1)
}

/// Cosine and sine of the real Jacobi rotation annihilating the off-diagonal
/// entry of `[[dp, off], [off, dq]]`, choosing the smaller angle.
fn rotation(dp: f64, dq: f64, off: f64) -> (f64, f64) {
    let zeta = (dq - dp) / (2.0 * off);
    let root = (1.0 + zeta * zeta).sqrt();
    let t = if zeta >= 0.0 {
        1.0 / (zeta + root)
    } else {
        -1.0 / (-zeta + root)
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    (c, c * t)
}

// X <- X J with J = diag(1, phase_conj) [[c, s], [-s, c]] acting on columns p, q.
fn rotate_columns(x: &mut ComplexMatrix, p: usize, q: usize, c: f64, s: f64, phase_conj: Complex64) {
    for k in 0..x.nrows() {
        let xp = x[(k, p)];
        let xq = x[(k, q)] * phase_conj;
        x[(k, p)] = xp * c - xq * s;
        x[(k, q)] = xp * s + xq * c;
    }
}

// X <- J^* X for the same J.
fn rotate_rows(x: &mut ComplexMatrix, p: usize, q: usize, c: f64, s: f64, phase: Complex64) {
    for k in 0..x.ncols() {
        let xp = x[(p, k)];
        let xq = x[(q, k)] * phase;
        x[(p, k)] = xp * c - xq * s;
        x[(q, k)] = xp * s + xq * c;
    }
}

fn off_diagonal_norm(b: &ComplexMatrix) -> f64 {
    let n = b.nrows();
    let mut acc = 0.0;
    for j in 0..n {
        for i in 0..n {
            if i != j {
                acc += b[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

fn check_square(a: &ComplexMatrix, what: &str) -> Result<usize> {
    if a.nrows() != a.ncols() {
        return Err(FrameError::BadShape(format!(
            "{what} needs a square matrix, got {}x{}",
            a.nrows(),
            a.ncols()
        )));
    }
    Ok(a.nrows())
}

/// Eigendecomposition of a Hermitian matrix by the cyclic Jacobi method.
pub fn hermitian_eig(a: &ComplexMatrix, policy: &Tolerance) -> Result<HermitianEig> {
    let n = check_square(a, "hermitian_eig")?;
    let norm = frobenius_norm(a);
    let asymmetry = frobenius_norm(&(a - a.adjoint()));
    if asymmetry > policy.eq_abs_tol * (1.0 + norm) {
        return Err(FrameError::NotHermitian { asymmetry });
    }

    let mut b = (a + a.adjoint()).scale(0.5);
    for i in 0..n {
        b[(i, i)].im = 0.0;
    }
    let mut v = identity(n);
    let budget = sweep_budget(n);
    let mut sweep = 0;
    loop {
        if off_diagonal_norm(&b) <= 0.1 * EPS * norm {
            break;
        }
        if sweep == budget {
            return Err(FrameError::NoConvergence { sweeps: budget });
        }
        sweep += 1;
        let mut rotated = false;
        for p in 0..n.saturating_sub(1) {
            for q in p + 1..n {
                let bpq = b[(p, q)];
                let off = bpq.norm();
                let dp = b[(p, p)].re;
                let dq = b[(q, q)].re;
                if off == 0.0 || off <= EPS * (dp.abs() * dq.abs()).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = bpq / off;
                let (c, s) = rotation(dp, dq, off);
                rotate_columns(&mut b, p, q, c, s, phase.conj());
                rotate_rows(&mut b, p, q, c, s, phase);
                b[(p, q)] = Complex64::new(0.0, 0.0);
                b[(q, p)] = Complex64::new(0.0, 0.0);
                b[(p, p)].im = 0.0;
                b[(q, q)].im = 0.0;
                rotate_columns(&mut v, p, q, c, s, phase.conj());
            }
        }
        if !rotated {
            break;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| b[(i, i)].re.total_cmp(&b[(j, j)].re));
    let eigenvalues = order.iter().map(|&i| b[(i, i)].re).collect();
    let mut eigenvectors = v.select_columns(&order);
    for k in 0..n {
        fix_column_phase(&mut eigenvectors, k);
    }
    Ok(HermitianEig {
        eigenvalues,
        eigenvectors,
    })
}

fn column_norm_sq(x: &ComplexMatrix, j: usize) -> f64 {
    x.column(j).iter().map(|z| z.norm_sqr()).sum()
}

/// One-sided (Hestenes) Jacobi: orthogonalizes the columns of `A` by plane
/// rotations accumulated into a unitary `V`.
fn jacobi_svd_full(a: &ComplexMatrix) -> Result<FullSvd> {
    let (m, n) = a.shape();
    let norm = frobenius_norm(a);
    let mut w = a.clone();
    let mut v = identity(n);

    if norm > 0.0 {
        let floor = (1e-3 * EPS * norm).powi(2);
        let tol = EPS * (m.max(1) as f64).sqrt();
        let budget = sweep_budget(n);
        let mut sweep = 0;
        loop {
            if sweep == budget {
                return Err(FrameError::NoConvergence { sweeps: budget });
            }
            sweep += 1;
            let mut rotated = false;
            for p in 0..n.saturating_sub(1) {
                for q in p + 1..n {
                    let alpha = column_norm_sq(&w, p);
                    let beta = column_norm_sq(&w, q);
                    if alpha <= floor || beta <= floor {
                        continue;
                    }
                    let gamma = w.column(p).dotc(&w.column(q));
                    let g = gamma.norm();
                    if g <= tol * (alpha * beta).sqrt() {
                        continue;
                    }
                    rotated = true;
                    let phase = gamma / g;
                    let (c, s) = rotation(alpha, beta, g);
                    rotate_columns(&mut w, p, q, c, s, phase.conj());
                    rotate_columns(&mut v, p, q, c, s, phase.conj());
                }
            }
            if !rotated {
                break;
            }
        }
    }

    let norms: Vec<f64> = (0..n).map(|j| column_norm_sq(&w, j).sqrt()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));
    let sigma = order.iter().map(|&i| norms[i]).collect();
    let mut w = w.select_columns(&order);
    let mut v = v.select_columns(&order);
    for k in 0..n {
        let phase = fix_column_phase(&mut v, k);
        for i in 0..m {
            w[(i, k)] *= phase;
        }
    }
    Ok(FullSvd { w, sigma, v })
}

/// Thin SVD keeping only singular values above `rank_rel_tol * sigma_max`.
///
/// A zero matrix yields rank 0 and factors with no columns. Right singular
/// vectors are phase-normalized (largest entry real positive); the left
/// vectors follow from `u_k = A v_k / sigma_k`.
pub fn svd(a: &ComplexMatrix, policy: &Tolerance) -> Result<Svd> {
    let full = jacobi_svd_full(a)?;
    let r = numerical_rank(&full.sigma, policy);
    Ok(thin(full, r))
}

fn thin(full: FullSvd, r: usize) -> Svd {
    let mut u = full.w.columns(0, r).into_owned();
    for k in 0..r {
        let s = full.sigma[k];
        for i in 0..u.nrows() {
            u[(i, k)] /= s;
        }
    }
    Svd {
        u,
        singulars: full.sigma[..r].to_vec(),
        v: full.v.columns(0, r).into_owned(),
    }
}

/// Orthonormal basis of `ker A` (`n x (n - r)`); no columns when `A` is injective.
pub fn null_basis(a: &ComplexMatrix, policy: &Tolerance) -> Result<ComplexMatrix> {
    Ok(svd_with_null(a, policy)?.1)
}

/// Thin SVD together with the kernel basis from the same factorization, so
/// that `svd.rank() + kernel.ncols() == n` always holds.
pub fn svd_with_null(a: &ComplexMatrix, policy: &Tolerance) -> Result<(Svd, ComplexMatrix)> {
    let full = jacobi_svd_full(a)?;
    let r = numerical_rank(&full.sigma, policy);
    let n = a.ncols();
    let kernel = full.v.columns(r, n - r).into_owned();
    Ok((thin(full, r), kernel))
}

/// Orthonormal basis of `(ran A)^perp` (`m x (m - r)`).
pub fn cokernel_basis(a: &ComplexMatrix, policy: &Tolerance) -> Result<ComplexMatrix> {
    null_basis(&a.adjoint(), policy)
}

/// Principal square root of a Hermitian positive semidefinite matrix.
///
/// Eigenvalues in `[-sqrt(eq_abs_tol) * ||A||_F, 0)` are clamped to zero.
pub fn psd_sqrt(a: &ComplexMatrix, policy: &Tolerance) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(a, policy)?;
    let norm = frobenius_norm(a);
    if let Some(&lowest) = eig.eigenvalues.first() {
        if lowest < -policy.eq_abs_tol.sqrt() * norm {
            return Err(FrameError::NotPsd { eigenvalue: lowest });
        }
    }
    let mut scaled = eig.eigenvectors.clone();
    for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
        scaled.column_mut(k).scale_mut(lambda.max(0.0).sqrt());
    }
    let root = scaled * eig.eigenvectors.adjoint();
    Ok((&root + root.adjoint()).scale(0.5))
}
