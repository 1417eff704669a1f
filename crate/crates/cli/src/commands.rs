use std::fs;
use std::path::Path;

use framekit_core::frame::{frame_from_json, frame_to_value};
use framekit_core::{
    classify, diagnostics, extend_orthogonalization, frame_bounds, kernel_witness_check,
    loewdin_orthogonalization, symmetric_approximation, truncate, verify_orthonormal_minimality,
    verify_tight_minimality, CokernelChoice, ComplexMatrix, FamilySpec, Frame, FrameBounds,
    FrameClass, FrameError, MinimalityReport, Tolerance, TruncationDiagnostics,
};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::args::{FamilyArgs, InputArgs, OrthogonalizeArgs, VerifyArgs};
use crate::error::CliError;
use crate::report::{Input, Report};

/// Outcome of a command: the report, plus an error that sets the exit
/// code after the report has been written.
pub struct Outcome {
    pub report: Report,
    pub csv: Option<String>,
    pub after: Option<CliError>,
}

impl Outcome {
    fn ok(report: Report) -> Self {
        Outcome { report, csv: None, after: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyzeResults {
    pub ambient_dim: usize,
    pub vectors: usize,
    pub bounds: FrameBounds,
    pub classification: FrameClass,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApproxResults {
    pub ambient_dim: usize,
    pub vectors: usize,
    /// `sum ||nu_j - f_j||^2`, computed directly.
    pub distance: f64,
    /// `||I - |F|||^2 - dim ker F`.
    pub distance_via_identity: f64,
    /// `||P - |F|||^2`.
    pub distance_via_projection: f64,
    #[serde(rename = "hs_I_minus_absF")]
    pub hs_i_minus_abs_f: f64,
    #[serde(rename = "hs_P_minus_absF")]
    pub hs_p_minus_abs_f: f64,
    pub kernel_dim: usize,
    pub singulars: Vec<f64>,
    pub nu: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrthogonalizeResults {
    pub exists: bool,
    pub unique: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub cokernel: String,
    pub kernel_dim: usize,
    pub cokernel_dim: usize,
    pub distance: Option<f64>,
    #[serde(rename = "hs_I_minus_absF")]
    pub hs_i_minus_abs_f: f64,
    pub gram_residual: Option<f64>,
    pub inverse_sqrt_residual: Option<f64>,
    pub nu: Option<Value>,
    /// `V`, row-major, entries `[re, im]`.
    pub extension: Vec<Vec<[f64; 2]>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyResults {
    pub tight: MinimalityReport,
    /// Present when the vectors fit in the ambient space as an orthonormal system.
    pub orthonormal: Option<MinimalityReport>,
    pub violations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub size: usize,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyResults {
    pub family: String,
    pub diagnostics: Vec<TruncationDiagnostics>,
    pub kernel_witness: Option<Vec<Witness>>,
}

pub const CSV_HEADER: [&str; 7] = [
    "size",
    "hs_I_minus_absF",
    "hs_P_minus_absF",
    "operator_norm",
    "kernel_dim",
    "lower_bound",
    "hs_I_minus_gram",
];

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("result types serialize to JSON")
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|source| CliError::ReadInput { path: path.to_path_buf(), source })
}

fn parse_frame(bytes: &[u8], label: &str) -> Result<Frame, CliError> {
    let text = std::str::from_utf8(bytes).map_err(|_| FrameError::Parse("input is not UTF-8".into()))?;
    Ok(frame_from_json(text, label)?)
}

pub fn load_input(args: &InputArgs) -> Result<(Frame, Input), CliError> {
    match (&args.file, &args.family) {
        (Some(path), None) => {
            let bytes = read(path)?;
            let label = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            let frame = parse_frame(&bytes, &label)?;
            let name = path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            Ok((frame, Input::from_bytes(name, &bytes)))
        }
        (None, Some(name)) => {
            let spec = FamilySpec::from_name(name, args.alpha)?;
            let size = args
                .size
                .ok_or_else(|| CliError::Usage("--family needs --size".into()))?;
            let frame = truncate(&spec, size)?;
            let description = format!("family {spec} size {size}");
            Ok((frame, Input::from_bytes(description.clone(), description.as_bytes())))
        }
        _ => Err(CliError::Usage("give a frame FILE or --family NAME --size N".into())),
    }
}

pub fn analyze(args: &InputArgs, tol: Tolerance) -> Result<Outcome, CliError> {
    let (frame, input) = load_input(args)?;
    let results = AnalyzeResults {
        ambient_dim: frame.ambient_dim(),
        vectors: frame.len(),
        bounds: frame_bounds(&frame, &tol)?,
        classification: classify(&frame, &tol)?,
    };
    Ok(Outcome::ok(Report::new("analyze", &input, to_value(&results), tol, None)))
}

pub fn approx(args: &InputArgs, tol: Tolerance) -> Result<Outcome, CliError> {
    let (frame, input) = load_input(args)?;
    let r = symmetric_approximation(&frame, &tol)?;
    let n = r.kernel_dim as f64;
    let results = ApproxResults {
        ambient_dim: frame.ambient_dim(),
        vectors: frame.len(),
        distance: r.distance,
        distance_via_identity: r.hs_i_minus_abs_f.powi(2) - n,
        distance_via_projection: r.hs_p_minus_abs_f.powi(2),
        hs_i_minus_abs_f: r.hs_i_minus_abs_f,
        hs_p_minus_abs_f: r.hs_p_minus_abs_f,
        kernel_dim: r.kernel_dim,
        singulars: r.singulars,
        nu: frame_to_value(&r.nu),
    };
    Ok(Outcome::ok(Report::new("approx", &input, to_value(&results), tol, None)))
}

fn matrix_rows(m: &ComplexMatrix) -> Vec<Vec<[f64; 2]>> {
    m.row_iter()
        .map(|row| row.iter().map(|z| [z.re, z.im]).collect())
        .collect()
}

pub fn orthogonalize(args: &OrthogonalizeArgs, tol: Tolerance) -> Result<Outcome, CliError> {
    let (frame, mut input) = load_input(&args.input)?;
    let (result, cokernel) = match &args.cokernel {
        None => (loewdin_orthogonalization(&frame, &tol)?, "canonical"),
        Some(path) => {
            let bytes = read(path)?;
            let cols = parse_frame(&bytes, "cokernel")?;
            if cols.ambient_dim() != frame.ambient_dim() {
                return Err(FrameError::BadCokernel(format!(
                    "cokernel vectors live in C^{}, the frame in C^{}",
                    cols.ambient_dim(),
                    frame.ambient_dim()
                ))
                .into());
            }
            // the digest covers both files
            let mut all = input.digest.clone().into_bytes();
            all.extend_from_slice(&bytes);
            input = Input::from_bytes(format!("{} + cokernel", input.description), &all);
            let choice = CokernelChoice::Explicit(cols.into_synthesis());
            match extend_orthogonalization(&frame, &choice, &tol) {
                Err(FrameError::NoExtension { .. }) => (loewdin_orthogonalization(&frame, &tol)?, "explicit"),
                other => (other?, "explicit"),
            }
        }
    };
    let results = OrthogonalizeResults {
        exists: result.exists,
        unique: result.unique,
        reason: (!result.exists).then(|| "cokernel too small".to_string()),
        cokernel: cokernel.to_string(),
        kernel_dim: result.kernel_dim,
        cokernel_dim: result.cokernel_dim,
        distance: result.distance,
        hs_i_minus_abs_f: result.hs_i_minus_abs_f,
        gram_residual: result.gram_residual,
        inverse_sqrt_residual: result.inverse_sqrt_residual,
        nu: result.nu.as_ref().map(frame_to_value),
        extension: matrix_rows(&result.extension),
    };
    let after = (!result.exists).then_some(CliError::NoExtension {
        cokernel_dim: result.cokernel_dim,
        kernel_dim: result.kernel_dim,
    });
    Ok(Outcome {
        report: Report::new("orthogonalize", &input, to_value(&results), tol, None),
        csv: None,
        after,
    })
}

pub fn verify(args: &VerifyArgs, tol: Tolerance) -> Result<Outcome, CliError> {
    let (frame, input) = load_input(&args.input)?;
    let tight = verify_tight_minimality(&frame, args.trials, args.seed, &tol)?;
    let orthonormal = if frame.len() <= frame.ambient_dim() {
        Some(verify_orthonormal_minimality(&frame, args.trials, args.seed, &tol)?)
    } else {
        None
    };
    let violations = tight.violations + orthonormal.as_ref().map_or(0, |r| r.violations);
    let results = VerifyResults { tight, orthonormal, violations };
    Ok(Outcome {
        report: Report::new("verify", &input, to_value(&results), tol, Some(args.seed)),
        csv: None,
        after: (violations > 0).then_some(CliError::Violation { violations }),
    })
}

fn float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn family_csv(rows: &[TruncationDiagnostics]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("writing to memory");
    for d in rows {
        w.write_record([
            d.size.to_string(),
            float(d.hs_i_minus_abs_f),
            float(d.hs_p_minus_abs_f),
            float(d.operator_norm),
            d.kernel_dim.to_string(),
            float(d.lower_bound),
            float(d.hs_i_minus_gram),
        ])
        .expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("flushing to memory")).expect("CSV of ASCII fields")
}

pub fn family(args: &FamilyArgs, tol: Tolerance) -> Result<Outcome, CliError> {
    let spec = FamilySpec::from_name(&args.family, args.alpha)?;
    let rows = diagnostics(&spec, &args.sizes, &tol)?;
    let kernel_witness = match spec {
        FamilySpec::DifferenceChain | FamilySpec::GeometricKernel => Some(
            args.sizes
                .iter()
                .map(|&size| Ok(Witness { size, residual: kernel_witness_check(&spec, size)? }))
                .collect::<Result<Vec<_>, FrameError>>()?,
        ),
        _ => None,
    };
    let sizes: Vec<String> = args.sizes.iter().map(usize::to_string).collect();
    let description = format!("family {spec} sizes {}", sizes.join(","));
    let input = Input::from_bytes(description.clone(), description.as_bytes());
    let csv = family_csv(&rows);
    let results = FamilyResults {
        family: spec.to_string(),
        diagnostics: rows,
        kernel_witness,
    };
    Ok(Outcome {
        report: Report::new("family", &input, to_value(&results), tol, None),
        csv: Some(csv),
        after: None,
    })
}
