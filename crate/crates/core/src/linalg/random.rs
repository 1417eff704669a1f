use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::ComplexMatrix;
use crate::error::{FrameError, Result};

fn gaussian_column(rng: &mut ChaCha8Rng, m: usize) -> Vec<Complex64> {
    (0..m)
        .map(|_| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            Complex64::new(re, im)
        })
        .collect()
}

/// Haar-distributed `m x r` isometry, deterministic in `seed`.
///
/// QR of an i.i.d. complex Gaussian matrix, computed by Gram-Schmidt with one
/// reorthogonalization pass. Gram-Schmidt produces a triangular factor with a
/// positive real diagonal, which is exactly the phase normalization that makes
/// the orthonormal factor Haar-distributed.
pub fn haar_isometry(m: usize, r: usize, seed: u64) -> Result<ComplexMatrix> {
    if r > m {
        return Err(FrameError::BadShape(format!(
            "isometry needs r <= m, got m={m}, r={r}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut q = ComplexMatrix::zeros(m, r);
    let mut k = 0;
    while k < r {
        let mut col = gaussian_column(&mut rng, m);
        let start: f64 = col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for _ in 0..2 {
            for j in 0..k {
                let mut proj = Complex64::new(0.0, 0.0);
                for i in 0..m {
                    proj += q[(i, j)].conj() * col[i];
                }
                for i in 0..m {
                    col[i] -= q[(i, j)] * proj;
                }
            }
        }
        let norm: f64 = col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        // measure-zero degeneracy: draw again
        if norm <= 1e-8 * start {
            continue;
        }
        for i in 0..m {
            q[(i, k)] = col[i] / norm;
        }
        k += 1;
    }
    Ok(q)
}
