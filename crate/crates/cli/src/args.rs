use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "framekit", version, about = "Symmetric approximation and orthogonalization of finite frames")]
pub struct Cli {
    /// Relative cutoff for numerical rank decisions.
    #[arg(long, global = true, env = "FRAMEKIT_TOL_RANK", value_name = "TOL")]
    pub tol_rank: Option<f64>,
    /// Absolute tolerance for equality checks.
    #[arg(long, global = true, env = "FRAMEKIT_TOL_EQ", value_name = "TOL")]
    pub tol_eq: Option<f64>,
    /// Write the JSON report here (atomically) instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Frame bounds, rank, kernel dimension and tightness.
    Analyze(InputArgs),
    /// Symmetric approximation by a normalized tight frame.
    Approx(InputArgs),
    /// Symmetric (Loewdin) orthogonalization.
    Orthogonalize(OrthogonalizeArgs),
    /// Randomized check that no candidate beats the symmetric approximation.
    Verify(VerifyArgs),
    /// Truncation diagnostics of a built-in family over several sizes.
    Family(FamilyArgs),
}

/// A frame file, or a built-in family truncated to one size.
#[derive(Debug, Args)]
pub struct InputArgs {
    /// Frame JSON file.
    #[arg(value_name = "FILE", conflicts_with = "family")]
    pub file: Option<PathBuf>,
    /// Built-in family: shift-weighted, even-odd, sum-spike, difference-chain, geometric-kernel.
    #[arg(long, value_name = "NAME")]
    pub family: Option<String>,
    /// Truncation size for --family.
    #[arg(long, requires = "family", value_name = "N")]
    pub size: Option<usize>,
    /// Weight for shift-weighted.
    #[arg(long, requires = "family", value_name = "A", allow_hyphen_values = true)]
    pub alpha: Option<f64>,
}

#[derive(Debug, Args)]
pub struct OrthogonalizeArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Frame JSON file whose vectors are orthonormal columns in (ran F)^perp.
    #[arg(long, value_name = "FILE")]
    pub cokernel: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    #[arg(long, value_name = "NAME")]
    pub family: String,
    /// Comma-separated ascending sizes, e.g. 10,20,40.
    #[arg(long, value_delimiter = ',', required = true, num_args = 1..)]
    pub sizes: Vec<usize>,
    #[arg(long, value_name = "A", allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    /// Also write the diagnostics as CSV.
    #[arg(long, value_name = "PATH")]
    pub csv: Option<PathBuf>,
}
