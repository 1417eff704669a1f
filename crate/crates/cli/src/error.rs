use std::path::PathBuf;

use framekit_core::FrameError;
use serde_json::json;

use crate::report::{to_json, SCHEMA};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NO_EXTENSION: i32 = 3;
pub const EXIT_VIOLATION: i32 = 4;
pub const EXIT_NUMERICAL: i32 = 5;

#[derive(Debug)]
pub enum CliError {
    Frame(FrameError),
    Usage(String),
    ReadInput { path: PathBuf, source: std::io::Error },
    WriteOutput { path: PathBuf, source: std::io::Error },
    /// The orthogonalization does not exist; the report was still written.
    NoExtension { cokernel_dim: usize, kernel_dim: usize },
    /// A minimality harness found candidates below the baseline.
    Violation { violations: usize },
}

impl From<FrameError> for CliError {
    fn from(e: FrameError) -> Self {
        match e {
            FrameError::NoExtension { cokernel_dim, kernel_dim } => CliError::NoExtension { cokernel_dim, kernel_dim },
            other => CliError::Frame(other),
        }
    }
}

fn frame_kind(e: &FrameError) -> &'static str {
    match e {
        FrameError::NotHermitian { .. } => "not_hermitian",
        FrameError::NoConvergence { .. } => "no_convergence",
        FrameError::BadShape(_) => "bad_shape",
        FrameError::NotPsd { .. } => "not_psd",
        FrameError::NonFinite { .. } => "non_finite",
        FrameError::InvalidTolerance(_) => "invalid_tolerance",
        FrameError::ZeroFrame => "zero_frame",
        FrameError::IndexMismatch { .. } => "index_mismatch",
        FrameError::AmbientMismatch { .. } => "ambient_mismatch",
        FrameError::IdentityMismatch { .. } => "identity_mismatch",
        FrameError::NotNormalizedTight => "not_normalized_tight",
        FrameError::NoExtension { .. } => "no_extension",
        FrameError::BadCokernel(_) => "bad_cokernel",
        FrameError::BadSize(_) => "bad_size",
        FrameError::BadParameter(_) => "bad_parameter",
        FrameError::WrongFamily { .. } => "wrong_family",
        FrameError::Parse(_) => "parse",
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Frame(FrameError::NoConvergence { .. } | FrameError::IdentityMismatch { .. }) => EXIT_NUMERICAL,
            CliError::Frame(_) | CliError::Usage(_) | CliError::ReadInput { .. } => EXIT_INVALID,
            CliError::WriteOutput { .. } => EXIT_IO,
            CliError::NoExtension { .. } => EXIT_NO_EXTENSION,
            CliError::Violation { .. } => EXIT_VIOLATION,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Frame(e) => frame_kind(e),
            CliError::Usage(_) => "usage",
            CliError::ReadInput { .. } => "read_input",
            CliError::WriteOutput { .. } => "write_output",
            CliError::NoExtension { .. } => "no_extension",
            CliError::Violation { .. } => "verification_violation",
        }
    }

    pub fn message(&self) -> String {
        match self {
            CliError::Frame(e) => e.to_string(),
            CliError::Usage(m) => m.clone(),
            CliError::ReadInput { path, source } => format!("cannot read {}: {source}", path.display()),
            CliError::WriteOutput { path, source } => format!("cannot write {}: {source}", path.display()),
            CliError::NoExtension { cokernel_dim, kernel_dim } => {
                format!("dim (ran F)^perp = {cokernel_dim} is smaller than dim ker F = {kernel_dim}")
            }
            CliError::Violation { violations } => format!("{violations} candidates beat the baseline"),
        }
    }

    /// Machine-readable error document written to stderr.
    pub fn to_json(&self) -> String {
        let mut doc = json!({
            "schema": SCHEMA,
            "error": {
                "kind": self.kind(),
                "exit_code": self.exit_code(),
                "message": self.message(),
            }
        });
        let reason = match self {
            CliError::NoExtension { .. } => Some("cokernel too small"),
            CliError::Violation { .. } => Some("minimality violated"),
            _ => None,
        };
        if let Some(r) = reason {
            doc["error"]["reason"] = json!(r);
        }
        to_json(&doc)
    }
}
