use std::path::PathBuf;

use ballspec::regions::verify_regions;
use ballspec::report::{all_passed, CheckResult, CheckStatus};
use ballspec::spectrum::{eigenvalues_ball, verify_appendix};
use ballspec::symbols::verify_symbols;
use ballspec::{MpFloat, SpectrumOptions};
use clap::{Args, ValueEnum};
use serde::Serialize;

use crate::{check_gamma, check_n_max, check_precision, usage, write_atomic, CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Appendix,
    Regions,
    Symbols,
    All,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub gamma: f64,
    #[arg(long, default_value_t = 40)]
    pub n_max: usize,
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    /// Exponent in the width of the Lambda_eps region, in (0, 1/2).
    #[arg(long, default_value_t = 0.05)]
    pub eps: f64,
    /// Decay order of the R_N region.
    #[arg(long = "N", default_value_t = 4)]
    pub n_region: u32,
    /// Semiclassical parameter for the contour and round-trip checks, in (0, 1).
    #[arg(long, default_value_t = 0.01)]
    pub h: f64,
    /// Lower edge exponent of the contour Z1, in (0, 1/2).
    #[arg(long, default_value_t = 0.4)]
    pub delta: f64,
    #[arg(long, default_value_t = 256)]
    pub precision: u32,
    /// Also write the report as JSON to this path.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Serialize)]
struct CheckRecord<'a> {
    suite: &'a str,
    name: &'a str,
    status: &'a str,
    margin: Option<f64>,
    detail: &'a str,
}

#[derive(Serialize)]
struct Report<'a> {
    gamma: f64,
    n_max: usize,
    passed: bool,
    checks: Vec<CheckRecord<'a>>,
}

fn validate(args: &VerifyArgs) -> CliResult<()> {
    check_gamma(args.gamma)?;
    check_n_max(args.n_max)?;
    check_precision(args.precision)?;
    if !(args.eps > 0.0 && args.eps < 0.5) {
        return Err(usage(format!("--eps must lie in (0, 1/2), got {}", args.eps)));
    }
    if args.n_region == 0 {
        return Err(usage("--N must be at least 1"));
    }
    if !(args.h > 0.0 && args.h < 1.0) {
        return Err(usage(format!("--h must lie in (0, 1), got {}", args.h)));
    }
    if !(args.delta > 0.0 && args.delta < 0.5) {
        return Err(usage(format!("--delta must lie in (0, 1/2), got {}", args.delta)));
    }
    Ok(())
}

fn margin_text(m: Option<f64>) -> String {
    m.map_or_else(|| "-".to_string(), |m| format!("{m:.6e}"))
}

pub fn run(args: &VerifyArgs) -> CliResult<()> {
    validate(args)?;
    let opts = SpectrumOptions::with_precision(args.precision);
    let wants = |s: Suite| args.suite == s || args.suite == Suite::All;
    let mut results: Vec<(&str, CheckResult)> = Vec::new();

    if wants(Suite::Appendix) {
        let report = verify_appendix::<MpFloat>(args.gamma, args.n_max, &opts);
        eprintln!(
            "appendix: {} eigenvalues, {} non-real, {} coincident pairs",
            report.eigenvalue_count, report.complex_count, report.coincidence_count
        );
        results.extend(report.checks.into_iter().map(|c| ("appendix", c)));
    }
    if wants(Suite::Regions) {
        let eigs = eigenvalues_ball::<MpFloat>(args.gamma, args.n_max, &opts).map_err(CliError::from)?;
        let lambdas: Vec<_> = eigs.into_iter().map(|e| e.lambda).collect();
        let checks = verify_regions(&lambdas, args.eps, args.n_region, args.h);
        results.extend(checks.into_iter().map(|c| ("regions", c)));
    }
    if wants(Suite::Symbols) {
        let checks = verify_symbols(args.gamma, args.h, args.delta);
        results.extend(checks.into_iter().map(|c| ("symbols", c)));
    }

    for (_, c) in &results {
        match c.status {
            CheckStatus::Skipped => eprintln!("SKIP {} ({})", c.name, c.detail),
            s => {
                println!("{} {} {}", s.label(), c.name, margin_text(c.margin));
                eprintln!("  {}", c.detail);
            }
        }
    }
    let checks: Vec<CheckResult> = results.iter().map(|(_, c)| c.clone()).collect();
    let passed = all_passed(&checks);

    if let Some(path) = &args.json {
        let report = Report {
            gamma: args.gamma,
            n_max: args.n_max,
            passed,
            checks: results
                .iter()
                .map(|(suite, c)| CheckRecord {
                    suite,
                    name: &c.name,
                    status: c.status.label(),
                    margin: c.margin.filter(|m| m.is_finite()),
                    detail: &c.detail,
                })
                .collect(),
        };
        let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
        text.push('\n');
        write_atomic(path, text.as_bytes())?;
    }

    if passed {
        Ok(())
    } else {
        Err(CliError::ChecksFailed)
    }
}
