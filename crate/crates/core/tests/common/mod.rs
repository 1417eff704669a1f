#![allow(dead_code)]

use framekit_core::{ComplexMatrix, Complex64, Frame};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

pub fn gaussian(m: usize, n: usize, seed: u64) -> ComplexMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    ComplexMatrix::from_fn(m, n, |_, _| {
        let re: f64 = StandardNormal.sample(&mut rng);
        let im: f64 = StandardNormal.sample(&mut rng);
        Complex64::new(re, im)
    })
}

/// Product of `m x r` and `r x n` Gaussian factors: rank `r` almost surely.
pub fn low_rank(m: usize, n: usize, r: usize, seed: u64) -> ComplexMatrix {
    gaussian(m, r, seed) * gaussian(r, n, seed.wrapping_add(0x5151))
}

pub fn hermitian(n: usize, seed: u64) -> ComplexMatrix {
    let g = gaussian(n, n, seed);
    (&g + g.adjoint()).scale(0.5)
}

pub fn frame(m: usize, n: usize, seed: u64) -> Frame {
    Frame::from_synthesis(gaussian(m, n, seed), format!("gaussian {m}x{n} #{seed}")).unwrap()
}

/// Random frame; when `deficient` the synthesis rank is forced below min(m, n).
pub fn test_frame(m: usize, n: usize, deficient: bool, seed: u64) -> Frame {
    let s = if deficient {
        let r = (m.min(n) / 2).max(1);
        low_rank(m, n, r, seed)
    } else {
        gaussian(m, n, seed)
    };
    Frame::from_synthesis(s, format!("test {m}x{n} #{seed}")).unwrap()
}

pub fn max_abs(a: &ComplexMatrix) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}
