//! `framekit` command-line front end. Every command writes a versioned JSON
//! report; errors go to stderr as JSON and select the exit code.

pub mod args;
pub mod commands;
pub mod error;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::error::ErrorKind;
use clap::Parser;
use framekit_core::Tolerance;

use args::{Cli, Command};
use commands::Outcome;
use error::{CliError, EXIT_OK};

pub use report::Report;

fn tolerance(cli: &Cli) -> Result<Tolerance, CliError> {
    let d = Tolerance::default();
    Ok(Tolerance::new(
        cli.tol_rank.unwrap_or(d.rank_rel_tol),
        cli.tol_eq.unwrap_or(d.eq_abs_tol),
    )?)
}

/// Writes `contents` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<(), CliError> {
    let wrap = |source| CliError::WriteOutput { path: path.to_path_buf(), source };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(wrap)?;
    tmp.write_all(contents).map_err(wrap)?;
    tmp.as_file().sync_all().map_err(wrap)?;
    tmp.persist(path).map_err(|e| wrap(e.error))?;
    Ok(())
}

fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let tol = tolerance(cli)?;
    match &cli.command {
        Command::Analyze(a) => commands::analyze(a, tol),
        Command::Approx(a) => commands::approx(a, tol),
        Command::Orthogonalize(a) => commands::orthogonalize(a, tol),
        Command::Verify(a) => commands::verify(a, tol),
        Command::Family(a) => commands::family(a, tol),
    }
}

fn emit(cli: &Cli, outcome: &Outcome) -> Result<(), CliError> {
    if let (Command::Family(a), Some(csv)) = (&cli.command, &outcome.csv) {
        if let Some(path) = &a.csv {
            write_atomic(path, csv.as_bytes())?;
        }
    }
    let json = outcome.report.to_json();
    match &cli.out {
        Some(path) => write_atomic(path, json.as_bytes()),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(json.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| CliError::WriteOutput { path: "<stdout>".into(), source })
        }
    }
}

fn fail(e: &CliError) -> i32 {
    eprint!("{}", e.to_json());
    e.exit_code()
}

/// Parses `argv`, runs the command and returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return EXIT_OK;
        }
        Err(e) => return fail(&CliError::Usage(e.to_string().trim_end().to_string())),
    };
    let outcome = match execute(&cli) {
        Ok(o) => o,
        Err(e) => return fail(&e),
    };
    if let Err(e) = emit(&cli, &outcome) {
        return fail(&e);
    }
    match &outcome.after {
        Some(e) => fail(e),
        None => EXIT_OK,
    }
}
