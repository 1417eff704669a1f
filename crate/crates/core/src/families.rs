//! Infinite example systems in `l_2`, truncated to their first `n` vectors
//! in `C^n`.
//!
//! | family            | vectors (1-based)                                              |
//! |-------------------|----------------------------------------------------------------|
//! | `shift-weighted`  | `f_1 = 0`, `f_i = alpha_{i-1} e_{i-1}`                         |
//! | `even-odd`        | `f_{2i} = e_{2i}`, `f_{2i+1} = 0`                              |
//! | `sum-spike`       | `f_1 = e_1`, `f_i = e_1 + e_i`                                 |
//! | `difference-chain`| `f_1 = e_1`, `f_i = e_i - i/(i-1) e_{i-1}`                     |
//! | `geometric-kernel`| `f_1 = e_1`, `f_2 = (e_1 + e_2)/sqrt2`,                        |
//! |                   | `f_k = s^{k-1} e_1 - sum_{j=2}^{k-1} s^{k-j+1} e_j + s e_k`, `s = 1/sqrt2` |
//!
//! Every vector `f_i` only involves `e_1, ..., e_i`, so truncation never cuts
//! a vector; what changes with `n` is which vectors are present.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{FrameError, Result};
use crate::frame::Frame;
use crate::linalg::{frobenius_norm, identity, svd, ComplexMatrix, Tolerance};
use crate::symmetric::polar_decompose;

#[derive(Debug, Clone, PartialEq)]
pub enum AlphaRule {
    Constant(Complex64),
    /// `alpha_1, alpha_2, ...`; a truncation to `n` needs at least `n - 1` values.
    List(Vec<Complex64>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum FamilySpec {
    ShiftWeighted(AlphaRule),
    EvenOdd,
    SumSpike,
    DifferenceChain,
    GeometricKernel,
}

impl FamilySpec {
    /// Parses a CLI family name. `alpha` is required by `shift-weighted` only.
    pub fn from_name(name: &str, alpha: Option<f64>) -> Result<Self> {
        let spec = match name {
            "shift-weighted" => {
                let a = alpha.ok_or_else(|| {
                    FrameError::BadParameter("shift-weighted needs --alpha".into())
                })?;
                FamilySpec::ShiftWeighted(AlphaRule::Constant(Complex64::new(a, 0.0)))
            }
            "even-odd" => FamilySpec::EvenOdd,
            "sum-spike" => FamilySpec::SumSpike,
            "difference-chain" => FamilySpec::DifferenceChain,
            "geometric-kernel" => FamilySpec::GeometricKernel,
            other => {
                return Err(FrameError::BadParameter(format!("unknown family \"{other}\"")))
            }
        };
        if alpha.is_some() && !matches!(spec, FamilySpec::ShiftWeighted(_)) {
            return Err(FrameError::BadParameter(format!("{name} takes no --alpha")));
        }
        Ok(spec)
    }

    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::ShiftWeighted(_) => "shift-weighted",
            FamilySpec::EvenOdd => "even-odd",
            FamilySpec::SumSpike => "sum-spike",
            FamilySpec::DifferenceChain => "difference-chain",
            FamilySpec::GeometricKernel => "geometric-kernel",
        }
    }

    fn min_size(&self) -> usize {
        match self {
            FamilySpec::DifferenceChain => 3,
            _ => 2,
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::ShiftWeighted(AlphaRule::Constant(a)) => {
                write!(f, "shift-weighted(alpha={}{:+}i)", a.re, a.im)
            }
            FamilySpec::ShiftWeighted(AlphaRule::List(list)) => {
                write!(f, "shift-weighted(alpha=[")?;
                for (i, a) in list.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{}{:+}i", a.re, a.im)?;
                }
                write!(f, "])")
            }
            other => f.write_str(other.name()),
        }
    }
}

fn alpha(rule: &AlphaRule, k: usize) -> Result<Complex64> {
    let a = match rule {
        AlphaRule::Constant(a) => *a,
        AlphaRule::List(list) => *list.get(k - 1).ok_or_else(|| {
            FrameError::BadSize(format!("alpha list has {} values, needs alpha_{k}", list.len()))
        })?,
    };
    if !(a.re.is_finite() && a.im.is_finite()) || a.norm() == 0.0 {
        return Err(FrameError::BadParameter(format!(
            "alpha_{k} must be finite and nonzero, got {a}"
        )));
    }
    Ok(a)
}

/// The first `n` vectors of the family, in `C^n`.
pub fn truncate(spec: &FamilySpec, n: usize) -> Result<Frame> {
    if n < spec.min_size() {
        return Err(FrameError::BadSize(format!(
            "{} needs size >= {}, got {n}",
            spec.name(),
            spec.min_size()
        )));
    }
    let mut s = ComplexMatrix::zeros(n, n);
    let one = Complex64::new(1.0, 0.0);
    // column c holds f_{c+1}; row r is coordinate e_{r+1}
    match spec {
        FamilySpec::ShiftWeighted(rule) => {
            for c in 1..n {
                s[(c - 1, c)] = alpha(rule, c)?;
            }
        }
        FamilySpec::EvenOdd => {
            for c in (1..n).step_by(2) {
                s[(c, c)] = one;
            }
        }
        FamilySpec::SumSpike => {
            s[(0, 0)] = one;
            for c in 1..n {
                s[(0, c)] = one;
                s[(c, c)] = one;
            }
        }
        FamilySpec::DifferenceChain => {
            s[(0, 0)] = one;
            for c in 1..n {
                let i = (c + 1) as f64;
                s[(c, c)] = one;
                s[(c - 1, c)] = Complex64::new(-i / (i - 1.0), 0.0);
            }
        }
        FamilySpec::GeometricKernel => {
            let h = std::f64::consts::FRAC_1_SQRT_2;
            s[(0, 0)] = one;
            s[(0, 1)] = Complex64::new(h, 0.0);
            s[(1, 1)] = Complex64::new(h, 0.0);
            for c in 2..n {
                let k = (c + 1) as i32;
                s[(0, c)] = Complex64::new(h.powi(k - 1), 0.0);
                for j in 2..k {
                    s[((j - 1) as usize, c)] = Complex64::new(-h.powi(k - j + 1), 0.0);
                }
                s[(c, c)] = Complex64::new(h, 0.0);
            }
        }
    }
    Frame::from_synthesis(s, format!("{spec} n={n}"))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruncationDiagnostics {
    pub size: usize,
    /// `||I - |F|||_2`.
    pub hs_i_minus_abs_f: f64,
    /// `||P - |F|||_2`.
    pub hs_p_minus_abs_f: f64,
    /// Largest singular value of `F`.
    pub operator_norm: f64,
    pub kernel_dim: usize,
    /// Lower frame bound of the truncation for its span.
    pub lower_bound: f64,
    /// `||I - F^*F||_2`.
    pub hs_i_minus_gram: f64,
}

fn check_sizes(sizes: &[usize]) -> Result<()> {
    if sizes.is_empty() {
        return Err(FrameError::BadSize("no sizes given".into()));
    }
    if sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(FrameError::BadSize("sizes must be strictly ascending".into()));
    }
    Ok(())
}

/// Hilbert-Schmidt and spectral quantities of each truncation.
pub fn diagnostics(
    spec: &FamilySpec,
    sizes: &[usize],
    policy: &Tolerance,
) -> Result<Vec<TruncationDiagnostics>> {
    check_sizes(sizes)?;
    sizes
        .iter()
        .map(|&n| {
            let frame = truncate(spec, n)?;
            let f = frame.synthesis();
            let pd = polar_decompose(f, policy)?;
            let id = identity(n);
            Ok(TruncationDiagnostics {
                size: n,
                hs_i_minus_abs_f: frobenius_norm(&(&id - &pd.abs_f)),
                hs_p_minus_abs_f: frobenius_norm(&(&pd.projection - &pd.abs_f)),
                operator_norm: pd.singulars.first().copied().unwrap_or(0.0),
                kernel_dim: pd.kernel_dim,
                lower_bound: pd.singulars.last().map_or(0.0, |s| s * s),
                hs_i_minus_gram: frobenius_norm(&(&id - f.adjoint() * f)),
            })
        })
        .collect()
}

/// Residual of the truncated kernel witness.
///
/// `difference-chain`: `||F_n(sum_j e_j / j) - e_n / n||`, exactly zero in
/// exact arithmetic. `geometric-kernel`: `||F_n x_n|| / ||x_n||` for
/// `x_n = -e_1 + sum_{j=2}^n sqrt2^{-(j-1)} e_j`, which decays with `n`.
pub fn kernel_witness_check(spec: &FamilySpec, n: usize) -> Result<f64> {
    let x: Vec<f64> = match spec {
        FamilySpec::DifferenceChain => (1..=n).map(|j| 1.0 / j as f64).collect(),
        FamilySpec::GeometricKernel => (1..=n)
            .map(|j| {
                if j == 1 {
                    -1.0
                } else {
                    std::f64::consts::FRAC_1_SQRT_2.powi(j as i32 - 1)
                }
            })
            .collect(),
        other => {
            return Err(FrameError::WrongFamily {
                operation: "kernel_witness_check",
                family: other.name().into(),
            })
        }
    };
    let frame = truncate(spec, n)?;
    let xv = nalgebra::DVector::from_iterator(n, x.iter().map(|&v| Complex64::new(v, 0.0)));
    let image = frame.synthesis() * &xv;
    Ok(match spec {
        FamilySpec::DifferenceChain => {
            let mut target = nalgebra::DVector::zeros(n);
            target[n - 1] = Complex64::new(1.0 / n as f64, 0.0);
            (image - target).norm()
        }
        _ => image.norm() / xv.norm(),
    })
}

/// Largest singular value of each `sum-spike` truncation.
pub fn unboundedness_probe(spec: &FamilySpec, sizes: &[usize], policy: &Tolerance) -> Result<Vec<f64>> {
    if *spec != FamilySpec::SumSpike {
        return Err(FrameError::WrongFamily {
            operation: "unboundedness_probe",
            family: spec.name().into(),
        });
    }
    check_sizes(sizes)?;
    sizes
        .iter()
        .map(|&n| {
            let s = svd(truncate(spec, n)?.synthesis(), policy)?;
            Ok(s.singulars.first().copied().unwrap_or(0.0))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::real_matrix;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn even_odd_four() {
        let f = truncate(&FamilySpec::EvenOdd, 4).unwrap();
        let expected = real_matrix(
            4,
            4,
            &[
                0.0, 0.0, 0.0, 0.0, //
                0.0, 1.0, 0.0, 0.0, //
                0.0, 0.0, 0.0, 0.0, //
                0.0, 0.0, 0.0, 1.0,
            ],
        )
        .unwrap();
        assert_eq!(f.synthesis(), &expected);
    }

    #[test]
    fn sum_spike_three() {
        let f = truncate(&FamilySpec::SumSpike, 3).unwrap();
        let expected = real_matrix(
            3,
            3,
            &[
                1.0, 1.0, 1.0, //
                0.0, 1.0, 0.0, //
                0.0, 0.0, 1.0,
            ],
        )
        .unwrap();
        assert_eq!(f.synthesis(), &expected);
    }

    #[test]
    fn difference_chain_three() {
        let f = truncate(&FamilySpec::DifferenceChain, 3).unwrap();
        let expected = real_matrix(
            3,
            3,
            &[
                1.0, -2.0, 0.0, //
                0.0, 1.0, -1.5, //
                0.0, 0.0, 1.0,
            ],
        )
        .unwrap();
        assert_eq!(f.synthesis(), &expected);
    }

    #[test]
    fn geometric_kernel_columns() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let f = truncate(&FamilySpec::GeometricKernel, 4).unwrap();
        // f_3 = h^2 e_1 - h^2 e_2 + h e_3; f_4 = h^3 e_1 - h^3 e_2 - h^2 e_3 + h e_4
        let expected = real_matrix(
            4,
            4,
            &[
                1.0, h, h * h, h * h * h, //
                0.0, h, -h * h, -h * h * h, //
                0.0, 0.0, h, -h * h, //
                0.0, 0.0, 0.0, h,
            ],
        )
        .unwrap();
        assert!(frobenius_norm(&(f.synthesis() - expected)) < 1e-15);
        // columns 2.. are unit vectors orthogonal to each other
        let g = f.synthesis().adjoint() * f.synthesis();
        for i in 1..4 {
            for j in 1..4 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((g[(i, j)].re - want).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn shift_weighted_layout() {
        let spec = FamilySpec::ShiftWeighted(AlphaRule::List(vec![
            Complex64::new(2.0, 0.0),
            Complex64::new(0.0, 3.0),
        ]));
        let f = truncate(&spec, 3).unwrap();
        assert_eq!(f.vector(0), vec![Complex64::new(0.0, 0.0); 3]);
        assert_eq!(f.vector(1)[0], Complex64::new(2.0, 0.0));
        assert_eq!(f.vector(2)[1], Complex64::new(0.0, 3.0));
        assert!(matches!(truncate(&spec, 4), Err(FrameError::BadSize(_))));
        let zero = FamilySpec::ShiftWeighted(AlphaRule::Constant(Complex64::new(0.0, 0.0)));
        assert!(matches!(truncate(&zero, 3), Err(FrameError::BadParameter(_))));
    }

    #[test]
    fn size_limits() {
        assert!(matches!(truncate(&FamilySpec::EvenOdd, 1), Err(FrameError::BadSize(_))));
        assert!(matches!(truncate(&FamilySpec::DifferenceChain, 2), Err(FrameError::BadSize(_))));
        assert!(truncate(&FamilySpec::DifferenceChain, 3).is_ok());
    }

    #[test]
    fn names_round_trip() {
        for name in ["even-odd", "sum-spike", "difference-chain", "geometric-kernel"] {
            assert_eq!(FamilySpec::from_name(name, None).unwrap().name(), name);
        }
        let sw = FamilySpec::from_name("shift-weighted", Some(2.0)).unwrap();
        assert_eq!(sw.to_string(), "shift-weighted(alpha=2+0i)");
        assert!(FamilySpec::from_name("shift-weighted", None).is_err());
        assert!(FamilySpec::from_name("even-odd", Some(1.0)).is_err());
        assert!(FamilySpec::from_name("mexican-hat", None).is_err());
    }

    #[test]
    fn shift_weighted_unit_alpha_is_one() {
        let spec = FamilySpec::ShiftWeighted(AlphaRule::Constant(Complex64::new(1.0, 0.0)));
        for d in diagnostics(&spec, &[10, 20], &tol()).unwrap() {
            assert!((d.hs_i_minus_abs_f - 1.0).abs() < 1e-12);
            assert_eq!(d.kernel_dim, 1);
        }
    }

    #[test]
    fn shift_weighted_two_grows_like_n() {
        let spec = FamilySpec::ShiftWeighted(AlphaRule::Constant(Complex64::new(2.0, 0.0)));
        let d = diagnostics(&spec, &[10, 40], &tol()).unwrap();
        // 1 + (n - 1)(1 - 2)^2 = n
        assert!((d[0].hs_i_minus_abs_f.powi(2) - 10.0).abs() < 1e-10);
        assert!((d[1].hs_i_minus_abs_f.powi(2) - 40.0).abs() < 1e-10);
    }

    #[test]
    fn geometric_kernel_hs_limit() {
        let d = diagnostics(&FamilySpec::GeometricKernel, &[60], &tol()).unwrap();
        assert!((d[0].hs_i_minus_gram - 2f64.sqrt()).abs() < 1e-6);
    }

    #[test]
    fn witness_examples() {
        assert!(kernel_witness_check(&FamilySpec::DifferenceChain, 3).unwrap() < 1e-15);
        assert!(kernel_witness_check(&FamilySpec::DifferenceChain, 50).unwrap() <= 1e-12);
        let a = kernel_witness_check(&FamilySpec::GeometricKernel, 20).unwrap();
        let b = kernel_witness_check(&FamilySpec::GeometricKernel, 40).unwrap();
        assert!(b < a);
        assert!(matches!(
            kernel_witness_check(&FamilySpec::EvenOdd, 4),
            Err(FrameError::WrongFamily { .. })
        ));
    }

    #[test]
    fn sum_spike_probe() {
        let norms = unboundedness_probe(&FamilySpec::SumSpike, &[2, 4, 16, 64], &tol()).unwrap();
        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((norms[0] - golden).abs() < 1e-14);
        assert!(norms.windows(2).all(|w| w[0] < w[1]));
        assert!(norms[3] > 63f64.sqrt());
        assert!(unboundedness_probe(&FamilySpec::EvenOdd, &[4], &tol()).is_err());
        assert!(unboundedness_probe(&FamilySpec::SumSpike, &[4, 4], &tol()).is_err());
    }
}
