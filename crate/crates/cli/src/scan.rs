use std::fmt::Write as _;
use std::path::PathBuf;

use ballspec::regions::Contour;
use ballspec::symbols::{min_modulus, scan_grid, ScanGrid, Symbol};
use clap::{Args, ValueEnum};

use crate::document::fmt17;
use crate::{check_gamma, emit, CliResult};

pub const SCAN_HEADER: &str = "r0,z_re,z_im,abs_c,abs_d,im_rho";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ContourArg {
    Z1,
    Z2,
    Z3,
}

impl From<ContourArg> for Contour {
    fn from(c: ContourArg) -> Self {
        match c {
            ContourArg::Z1 => Contour::Z1,
            ContourArg::Z2 => Contour::Z2,
            ContourArg::Z3 => Contour::Z3,
        }
    }
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub gamma: f64,
    #[arg(long, value_enum)]
    pub contour: ContourArg,
    /// Semiclassical parameter, in (0, 1).
    #[arg(long, default_value_t = 0.01)]
    pub h: f64,
    /// Lower edge exponent of Z1, in (0, 1/2).
    #[arg(long, default_value_t = 0.4)]
    pub delta: f64,
    /// Upper end of the r0 axis; beyond it rho grows like sqrt(r0) and the
    /// symbols are trivially elliptic.
    #[arg(long, default_value_t = 25.0)]
    pub r0_max: f64,
    /// Points per axis.
    #[arg(long, default_value_t = 100)]
    pub grid: usize,
    /// Output path; written atomically. Defaults to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run(args: &ScanArgs) -> CliResult<()> {
    check_gamma(args.gamma)?;
    let grid = ScanGrid {
        gamma: args.gamma,
        contour: args.contour.into(),
        h: args.h,
        delta: args.delta,
        r0_max: args.r0_max,
        grid: args.grid,
    };
    let samples = scan_grid::<f64>(&grid, 53)?;
    let mut csv = String::with_capacity(samples.len() * 120);
    csv.push_str(SCAN_HEADER);
    csv.push('\n');
    for s in &samples {
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{}",
            fmt17(s.r0),
            fmt17(s.z.re),
            fmt17(s.z.im),
            fmt17(s.c.norm()),
            fmt17(s.d.norm()),
            fmt17(s.rho.im)
        );
    }
    emit(args.out.as_deref(), &csv)?;

    let c = min_modulus(&samples, Symbol::C).expect("grid is non-empty");
    let d = min_modulus(&samples, Symbol::D).expect("grid is non-empty");
    let im_rho = samples.iter().map(|s| s.rho.im).fold(f64::INFINITY, f64::min);
    eprintln!(
        "min |c| = {:.6e} at r0={}, z={}; min |d| = {:.6e} at r0={}, z={}; min Im rho = {:.6e}",
        c.value, c.r0, c.z, d.value, d.r0, d.z, im_rho
    );
    Ok(())
}
