//! Randomized checks of the minimality statements.
//!
//! Tight-frame candidates are `{G e_i}` with `G = R B^*`, where `B` is an
//! orthonormal basis of `(ker F)^perp` and `R` a Haar-random isometry: every
//! such system is a normalized tight frame whose synthesis operator has the
//! same kernel as `F`. Orthonormal candidates are Haar-random isometries.
//! Trial `t` draws from its own seed derived from `(seed, t)`, so trials run
//! in parallel and the aggregate (a minimum and a count) does not depend on
//! evaluation order.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{FrameError, Result};
use crate::frame::{quadratic_distance, Frame};
use crate::linalg::{
    compensated_sum, frobenius_norm, frobenius_norm_sq, haar_isometry, hermitian_eig, identity,
    ComplexMatrix, Tolerance,
};
use crate::symmetric::{
    hs_norm_via_tight_frame, loewdin_orthogonalization, polar_decompose, symmetric_approximation,
    PolarDecomposition,
};

/// Agreement required between `hs_norm_via_tight_frame` and the Frobenius norm.
pub const LEMMA_TOLERANCE: f64 = 1e-8;
/// Candidates at most this far above the baseline count as attaining it.
pub const NEAR_OPTIMAL_GAP: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinimalityReport {
    /// Distance attained by the symmetric construction.
    pub baseline: f64,
    pub trials: usize,
    /// Smallest distance over the random candidates.
    pub min_observed: f64,
    /// Candidates with distance below `baseline - eq_abs_tol`.
    pub violations: usize,
    pub seed: u64,
    /// `|distance(optimum) - baseline|` for the injected optimal candidate.
    pub optimum_gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EqualityReport {
    pub baseline: f64,
    pub candidates: usize,
    /// Candidates within `NEAR_OPTIMAL_GAP` of the baseline.
    pub near_optimal: usize,
    /// Largest column deviation from `{W e_i}` among near-optimal candidates.
    pub max_near_deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub hs_norm: f64,
    pub frames_checked: usize,
    pub max_deviation: f64,
}

/// SplitMix64 finalizer over `(seed, index)`.
pub fn trial_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn tight_candidate(pd: &PolarDecomposition, seed: u64) -> Result<ComplexMatrix> {
    let r = haar_isometry(pd.ambient_dim(), pd.rank(), seed)?;
    Ok(r * pd.initial_basis.adjoint())
}

/// Random normalized tight frame weakly similar to `frame`.
pub fn random_weakly_similar_tight(frame: &Frame, seed: u64, policy: &Tolerance) -> Result<Frame> {
    let pd = polar_decompose(frame.synthesis(), policy)?;
    if pd.rank() == 0 {
        return Err(FrameError::ZeroFrame);
    }
    Frame::from_synthesis(tight_candidate(&pd, seed)?, "random weakly similar tight frame")
}

/// `n` Haar-random orthonormal vectors in `C^m`.
pub fn random_orthonormal_system(m: usize, n: usize, seed: u64) -> Result<Frame> {
    if n == 0 || n > m {
        return Err(FrameError::BadShape(format!(
            "orthonormal system needs 1 <= n <= m, got m={m}, n={n}"
        )));
    }
    Frame::from_synthesis(haar_isometry(m, n, seed)?, "random orthonormal system")
}

/// Random normalized tight frame of `C^k` with `n >= k` vectors of unequal
/// norms: the columns of `X^*` for a Haar isometry `X` (`n x k`).
pub fn random_parseval_frame(k: usize, n: usize, seed: u64) -> Result<Frame> {
    let x = haar_isometry(n, k, seed)?;
    Frame::from_synthesis(x.adjoint(), "random Parseval frame")
}

/// `2k` vectors `Q e_j / sqrt 2`, each repeated twice, for a Haar unitary `Q`.
pub fn doubled_tight_frame(k: usize, seed: u64) -> Result<Frame> {
    let q = haar_isometry(k, k, seed)?;
    let half = q.scale(std::f64::consts::FRAC_1_SQRT_2);
    let mut s = ComplexMatrix::zeros(k, 2 * k);
    s.columns_mut(0, k).copy_from(&half);
    s.columns_mut(k, k).copy_from(&half);
    Frame::from_synthesis(s, "doubled tight frame")
}

fn synthesis_distance(a: &ComplexMatrix, f: &ComplexMatrix) -> f64 {
    compensated_sum(a.iter().zip(f.iter()).map(|(x, y)| (x - y).norm_sqr()))
}

fn summarize(
    baseline: f64,
    distances: &[f64],
    seed: u64,
    optimum_gap: f64,
    policy: &Tolerance,
) -> MinimalityReport {
    MinimalityReport {
        baseline,
        trials: distances.len(),
        min_observed: distances.iter().copied().fold(f64::INFINITY, f64::min),
        violations: distances
            .iter()
            .filter(|&&d| d < baseline - policy.eq_abs_tol)
            .count(),
        seed,
        optimum_gap,
    }
}

fn check_trials(trials: usize) -> Result<()> {
    if trials == 0 {
        return Err(FrameError::BadSize("at least one trial is required".into()));
    }
    Ok(())
}

/// Compares the symmetric approximation against `trials` random weakly
/// similar normalized tight frames.
pub fn verify_tight_minimality(
    frame: &Frame,
    trials: usize,
    seed: u64,
    policy: &Tolerance,
) -> Result<MinimalityReport> {
    check_trials(trials)?;
    let approx = symmetric_approximation(frame, policy)?;
    let pd = polar_decompose(frame.synthesis(), policy)?;
    let f = frame.synthesis();
    let distances = (0..trials as u64)
        .into_par_iter()
        .map(|t| Ok(synthesis_distance(&tight_candidate(&pd, trial_seed(seed, t))?, f)))
        .collect::<Result<Vec<f64>>>()?;
    // the optimum rebuilt as a candidate: R = U_r gives G = U_r V_r^* = W
    let optimum = &pd.range_basis * pd.initial_basis.adjoint();
    let optimum_gap = (synthesis_distance(&optimum, f) - approx.distance).abs();
    Ok(summarize(approx.distance, &distances, seed, optimum_gap, policy))
}

/// Compares `||I - |F|||_2^2` against `sum ||mu_j - f_j||^2` for random
/// orthonormal systems `{mu_j}` in `C^m`.
pub fn verify_orthonormal_minimality(
    frame: &Frame,
    trials: usize,
    seed: u64,
    policy: &Tolerance,
) -> Result<MinimalityReport> {
    check_trials(trials)?;
    let (m, n) = (frame.ambient_dim(), frame.len());
    if n > m {
        return Err(FrameError::BadShape(format!(
            "no orthonormal systems of {n} vectors in C^{m}"
        )));
    }
    let pd = polar_decompose(frame.synthesis(), policy)?;
    let baseline = frobenius_norm_sq(&(identity(n) - &pd.abs_f));
    let f = frame.synthesis();
    let distances = (0..trials as u64)
        .into_par_iter()
        .map(|t| Ok(synthesis_distance(&haar_isometry(m, n, trial_seed(seed, t))?, f)))
        .collect::<Result<Vec<f64>>>()?;
    let ortho = loewdin_orthogonalization(frame, policy)?;
    let optimum = ortho
        .nu
        .as_ref()
        .map(|nu| quadratic_distance(nu, frame))
        .transpose()?
        .unwrap_or(f64::INFINITY);
    Ok(summarize(baseline, &distances, seed, (optimum - baseline).abs(), policy))
}

/// Unitary `exp(i eps H)` for Hermitian `H`.
fn unitary_exp(h: &ComplexMatrix, eps: f64, policy: &Tolerance) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(h, policy)?;
    let mut scaled = eig.eigenvectors.clone();
    for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
        let phase = num_complex::Complex64::from_polar(1.0, eps * lambda);
        for i in 0..scaled.nrows() {
            scaled[(i, k)] *= phase;
        }
    }
    Ok(scaled * eig.eigenvectors.adjoint())
}

fn random_hermitian(r: usize, seed: u64) -> Result<ComplexMatrix> {
    let g = haar_isometry(r, r, seed)?;
    let h = &g + g.adjoint();
    let norm = frobenius_norm(&h);
    Ok(if norm > 0.0 { h.unscale(norm) } else { identity(r) })
}

fn max_column_deviation(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    (0..a.ncols())
        .map(|j| (a.column(j) - b.column(j)).norm())
        .fold(0.0, f64::max)
}

/// Equality case: every candidate that attains the baseline (within
/// `NEAR_OPTIMAL_GAP`) must coincide with `{W e_i}`.
///
/// The pool holds the optimum itself, `trials` random candidates and, for
/// each trial, perturbations `U_r exp(i eps H) V_r^*` of the optimum with
/// `eps` running from `1e-1` down to `1e-9`.
pub fn verify_equality_case(
    frame: &Frame,
    trials: usize,
    seed: u64,
    policy: &Tolerance,
) -> Result<EqualityReport> {
    check_trials(trials)?;
    let approx = symmetric_approximation(frame, policy)?;
    let pd = polar_decompose(frame.synthesis(), policy)?;
    let f = frame.synthesis();
    let w = approx.nu.synthesis();
    let baseline = approx.distance;

    let per_trial = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let s = trial_seed(seed, t);
            let mut pool = vec![tight_candidate(&pd, s)?];
            let h = random_hermitian(pd.rank(), trial_seed(s, 1))?;
            for k in 1..=9 {
                let q = unitary_exp(&h, 10f64.powi(-k), policy)?;
                pool.push(&pd.range_basis * q * pd.initial_basis.adjoint());
            }
            Ok(pool
                .iter()
                .map(|g| (synthesis_distance(g, f), max_column_deviation(g, w)))
                .collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>>>()?;

    let mut scored: Vec<(f64, f64)> = per_trial.into_iter().flatten().collect();
    let optimum = &pd.range_basis * pd.initial_basis.adjoint();
    scored.push((synthesis_distance(&optimum, f), max_column_deviation(&optimum, w)));

    let near: Vec<f64> = scored
        .iter()
        .filter(|(d, _)| *d <= baseline + NEAR_OPTIMAL_GAP)
        .map(|&(_, dev)| dev)
        .collect();
    Ok(EqualityReport {
        baseline,
        candidates: scored.len(),
        near_optimal: near.len(),
        max_near_deviation: near.into_iter().fold(0.0, f64::max),
    })
}

/// Evaluates `hs_norm_via_tight_frame` on `pair_count` pairs of random
/// normalized tight frames of the domain of `t`. The first frame of each
/// pair is a Haar-random orthonormal basis; the second alternates between
/// the doubled pattern and a Parseval frame with unequal norms.
pub fn lemma_frame_independence(
    t: &ComplexMatrix,
    pair_count: usize,
    seed: u64,
    policy: &Tolerance,
) -> Result<LemmaReport> {
    if pair_count == 0 {
        return Err(FrameError::BadSize("at least one frame pair is required".into()));
    }
    let k = t.ncols();
    let hs_norm = frobenius_norm(t);
    let basis = Frame::from_synthesis(identity(k), "standard basis")?;
    let mut max_deviation = 0.0_f64;
    for p in 0..pair_count as u64 {
        let s = trial_seed(seed, p);
        let first = random_weakly_similar_tight(&basis, trial_seed(s, 0), policy)?;
        let second = if p % 2 == 0 {
            doubled_tight_frame(k, trial_seed(s, 1))?
        } else {
            random_parseval_frame(k, k + 1 + (p as usize / 2) % 3, trial_seed(s, 1))?
        };
        for frame in [&first, &second] {
            let v = hs_norm_via_tight_frame(t, frame, policy)?;
            max_deviation = max_deviation.max((v - hs_norm).abs());
        }
    }
    Ok(LemmaReport {
        hs_norm,
        frames_checked: 2 * pair_count,
        max_deviation,
    })
}

/// True when every frame sum agrees with the Frobenius norm to `LEMMA_TOLERANCE`.
pub fn verify_lemma_frame_independence(
    t: &ComplexMatrix,
    pair_count: usize,
    seed: u64,
    policy: &Tolerance,
) -> Result<bool> {
    Ok(lemma_frame_independence(t, pair_count, seed, policy)?.max_deviation <= LEMMA_TOLERANCE)
}
