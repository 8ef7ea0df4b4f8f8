//! `ballspec`: eigenvalues of the unit ball with constant impedance.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 usage or input
//! error, 3 numerical failure.

mod document;
mod plot;
mod scan;
mod spectrum;
mod verify;

use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use ballspec::Error;
use clap::{Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "ballspec", version, about = "Eigenvalues of the dissipative Maxwell generator on the unit ball")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute all eigenvalues from modes 1..=n_max.
    Spectrum(spectrum::SpectrumArgs),
    /// Run verification suites and print `PASS|FAIL name margin` lines.
    Verify(verify::VerifyArgs),
    /// Tabulate the boundary symbols on a contour as CSV.
    ScanSymbols(scan::ScanArgs),
    /// Draw a spectrum over the fitted eigenvalue regions as SVG.
    Plot(plot::PlotArgs),
}

#[derive(Debug)]
pub enum CliError {
    /// Exit 1.
    ChecksFailed,
    /// Exit 2.
    Usage(String),
    /// Exit 3.
    Numerical(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::ChecksFailed => 1,
            CliError::Usage(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::ConvergenceFailure { .. }
            | Error::ModeConvergenceFailure { .. }
            | Error::CertificationFailure { .. } => CliError::Numerical(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

pub fn check_gamma(gamma: f64) -> CliResult<()> {
    if !gamma.is_finite() || gamma <= 0.0 {
        return Err(usage(format!("--gamma must be a positive finite number, got {gamma}")));
    }
    Ok(())
}

pub fn check_n_max(n_max: usize) -> CliResult<()> {
    if n_max == 0 {
        return Err(usage("--n-max must be at least 1"));
    }
    Ok(())
}

pub fn check_precision(bits: u32) -> CliResult<()> {
    if bits < 64 {
        return Err(usage(format!("--precision must be at least 64 bits, got {bits}")));
    }
    Ok(())
}

/// Writes `contents` to `path` through a temporary file in the same
/// directory, so readers never observe a partial file.
pub fn write_atomic(path: &Path, contents: &[u8]) -> CliResult<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let io = |e: std::io::Error| usage(format!("cannot write {}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(contents).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

/// Writes to `path` atomically, or to stdout when `path` is `None`.
pub fn emit(path: Option<&Path>, contents: &str) -> CliResult<()> {
    match path {
        Some(p) => write_atomic(p, contents.as_bytes()),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(contents.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| usage(format!("cannot write to stdout: {e}")))
        }
    }
}

pub fn read_input(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Spectrum(args) => spectrum::run(&args),
        Command::Verify(args) => verify::run(&args),
        Command::ScanSymbols(args) => scan::run(&args),
        Command::Plot(args) => plot::run(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                CliError::ChecksFailed => eprintln!("ballspec: verification failed"),
                CliError::Usage(msg) => eprintln!("ballspec: error: {msg}"),
                CliError::Numerical(msg) => eprintln!("ballspec: numerical failure: {msg}"),
            }
            ExitCode::from(e.code())
        }
    }
}
