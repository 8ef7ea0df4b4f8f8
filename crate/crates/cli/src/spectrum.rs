use std::path::PathBuf;

use ballspec::spectrum::eigenvalues_ball;
use ballspec::{MpFloat, SpectrumOptions};
use clap::{Args, ValueEnum};

use crate::document::SpectrumDocument;
use crate::{check_gamma, check_n_max, check_precision, emit, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    /// Boundary impedance, > 0.
    #[arg(long, allow_negative_numbers = true)]
    pub gamma: f64,
    /// Largest spherical mode.
    #[arg(long, default_value_t = 40)]
    pub n_max: usize,
    /// Working precision in bits.
    #[arg(long, default_value_t = 256)]
    pub precision: u32,
    /// Output path; written atomically. Defaults to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

pub fn compute(gamma: f64, n_max: usize, precision: u32) -> CliResult<SpectrumDocument> {
    check_gamma(gamma)?;
    check_n_max(n_max)?;
    check_precision(precision)?;
    let eigs = eigenvalues_ball::<MpFloat>(gamma, n_max, &SpectrumOptions::with_precision(precision))?;
    Ok(SpectrumDocument::new(gamma, n_max, precision, &eigs))
}

pub fn run(args: &SpectrumArgs) -> CliResult<()> {
    let doc = compute(args.gamma, args.n_max, args.precision)?;
    let text = match args.format {
        Format::Json => doc.to_json(),
        Format::Csv => doc.to_csv(),
    };
    emit(args.out.as_deref(), &text)
}
