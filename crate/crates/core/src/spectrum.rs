//! Eigenvalues of the generator for the unit ball with constant impedance.
//!
//! Each spherical mode `n >= 1` contributes two scalar boundary equations,
//! one per [`ModeFamily`], with couplings `kappa = gamma` and `kappa = 1/gamma`.
//! After the substitution `w = i/(2 mu)` both become
//! `q_n(w) = (1 - kappa)/2 R_n(w) + w^2 R_n'(w) = 0`; roots with `Re w > 0`
//! give eigenvalues `lambda = -1/(2 w)` in the open left half-plane.

use std::cmp::Ordering;
use std::f64::consts::FRAC_PI_4;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactpoly::{rn_coefficients, Poly};
use crate::hankel::boundary_residual;
pub use crate::report::{CheckResult, CheckStatus};
use crate::rootfind::{find_all_roots, RootOptions};
use crate::scalar::{cabs, carg, cinv, complex_to_f64, Real};

/// `|gamma - 1|` at or below this is treated as `gamma = 1`.
pub const GAMMA_ONE_TOL: f64 = 1e-14;

/// The two decoupled boundary equations of a mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ModeFamily {
    /// Coupling `kappa = gamma`.
    Alpha,
    /// Coupling `kappa = 1/gamma`.
    Beta,
}

impl ModeFamily {
    pub const ALL: [ModeFamily; 2] = [ModeFamily::Alpha, ModeFamily::Beta];

    pub fn tag(self) -> &'static str {
        match self {
            ModeFamily::Alpha => "alpha",
            ModeFamily::Beta => "beta",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        match tag {
            "alpha" => Some(ModeFamily::Alpha),
            "beta" => Some(ModeFamily::Beta),
            _ => None,
        }
    }

    pub fn swapped(self) -> Self {
        match self {
            ModeFamily::Alpha => ModeFamily::Beta,
            ModeFamily::Beta => ModeFamily::Alpha,
        }
    }

    /// Coupling constant of this family for impedance `gamma`.
    pub fn kappa<T: Real>(self, gamma: &T) -> T {
        match self {
            ModeFamily::Alpha => gamma.clone(),
            ModeFamily::Beta => T::from_f64_prec(1.0, gamma.precision()) / gamma.clone(),
        }
    }
}

impl fmt::Display for ModeFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// `q_n(w) = w g_n(w)` for one coupling value.
#[derive(Clone, Debug)]
pub struct BoundaryPolynomial<T> {
    pub n: usize,
    pub kappa: T,
    /// Ascending coefficients, degree `n + 1`.
    pub poly: Poly<T>,
}

/// Builds `q_n` for coupling `kappa` at the precision of `kappa`.
///
/// The coefficient of `w^m` is `(1 - kappa)/2 * a_m + (m - 1) a_{m-1}`; the
/// integer part `(m - 1) a_{m-1}` is formed exactly before rounding.
pub fn boundary_polynomial<T: Real>(n: usize, kappa: &T) -> Result<BoundaryPolynomial<T>> {
    if n == 0 {
        return Err(Error::InvalidMode(0));
    }
    if !(*kappa > T::zero()) {
        return Err(Error::InvalidCoupling(kappa.to_f64()));
    }
    let prec = kappa.precision();
    let half = (T::from_f64_prec(1.0, prec) - kappa.clone()) / T::from_f64_prec(2.0, prec);
    let a = rn_coefficients(n);
    let a = a.coeffs();
    let coeffs = (0..=n + 1)
        .map(|m| {
            let mut c = T::from_f64_prec(0.0, prec);
            if m <= n {
                c = half.clone() * T::from_bigint(&a[m], prec);
            }
            if m >= 2 {
                let shifted = BigInt::from(m - 1) * &a[m - 1];
                c = c + T::from_bigint(&shifted, prec);
            }
            c
        })
        .collect();
    Ok(BoundaryPolynomial { n, kappa: kappa.clone(), poly: Poly::new(coeffs) })
}

/// Options for [`eigenvalues_ball`].
#[derive(Clone, Debug)]
pub struct SpectrumOptions {
    /// Working precision in bits.
    pub precision: u32,
    /// Root acceptance tolerance; `None` uses the root finder default.
    pub root_tol: Option<f64>,
    /// Real-root snapping and the strict `Re w > real_tol` acceptance bound.
    pub real_tol: f64,
    /// Bound on the Hankel boundary residual of every accepted eigenvalue.
    pub hankel_tol: f64,
}

impl Default for SpectrumOptions {
    fn default() -> Self {
        SpectrumOptions { precision: 256, root_tol: None, real_tol: 1e-9, hankel_tol: 1e-8 }
    }
}

impl SpectrumOptions {
    pub fn with_precision(precision: u32) -> Self {
        SpectrumOptions { precision, ..Default::default() }
    }

    fn root_options(&self, precision: u32) -> RootOptions {
        RootOptions { precision, tol: self.root_tol, real_tol: self.real_tol, ..Default::default() }
    }
}

/// A certified eigenvalue and the root it came from.
#[derive(Clone, Debug)]
pub struct Eigenvalue<T> {
    /// `-1/(2 w0)`, always with `Re < 0`.
    pub lambda: Complex<T>,
    pub n: usize,
    pub family: ModeFamily,
    /// `2n + 1`, one eigenfunction per spherical harmonic order; a lower bound
    /// when different modes share a root.
    pub multiplicity: usize,
    pub w0: Complex<T>,
    /// `i/(2 w0)`, always with `Im > 0`.
    pub mu: Complex<T>,
    pub residual_poly: f64,
    pub residual_hankel: f64,
}

impl<T: Real> Eigenvalue<T> {
    pub fn is_real(&self) -> bool {
        self.lambda.im.is_zero()
    }

    pub fn lambda_f64(&self) -> Complex<f64> {
        complex_to_f64(&self.lambda)
    }
}

fn is_gamma_one(gamma: f64) -> bool {
    (gamma - 1.0).abs() <= GAMMA_ONE_TOL
}

fn check_gamma(gamma: f64) -> Result<()> {
    if !(gamma > 0.0) || !gamma.is_finite() {
        return Err(Error::InvalidGamma(format!("gamma must be positive and finite, got {gamma}")));
    }
    Ok(())
}

/// Roots of `q_n` for one family, retried once at doubled precision.
fn mode_roots<T: Real>(
    n: usize,
    family: ModeFamily,
    gamma: f64,
    opts: &SpectrumOptions,
) -> Result<(u32, T, Vec<crate::rootfind::CertifiedRoot<T>>)> {
    let mut precision = opts.precision;
    let mut last_err = None;
    for _ in 0..2 {
        let g = T::from_f64_prec(gamma, precision);
        let kappa = family.kappa(&g);
        let q = boundary_polynomial(n, &kappa)?;
        match find_all_roots(&q.poly, &opts.root_options(precision)) {
            Ok(roots) => return Ok((precision, kappa, roots)),
            Err(e @ Error::ConvergenceFailure { .. }) => {
                last_err = Some(e);
                precision *= 2;
            }
            Err(e) => return Err(e),
        }
    }
    match last_err {
        Some(Error::ConvergenceFailure { index, residual }) => {
            Err(Error::ModeConvergenceFailure { n, family: family.tag().to_string(), index, residual })
        }
        Some(e) => Err(e),
        None => unreachable!("loop runs at least once"),
    }
}

fn mode_eigenvalues<T: Real>(
    n: usize,
    family: ModeFamily,
    gamma: f64,
    opts: &SpectrumOptions,
) -> Result<Vec<Eigenvalue<T>>> {
    let (precision, kappa, roots) = mode_roots::<T>(n, family, gamma, opts)?;
    let mut out = Vec::new();
    for root in roots {
        if !(root.w.re.to_f64() > opts.real_tol) {
            continue;
        }
        let w0 = root.w;
        let two_w = Complex::new(T::from_f64_prec(2.0, precision), T::zero()) * w0.clone();
        let inv = cinv(&two_w);
        let lambda = -inv.clone();
        let mu = Complex::new(-inv.im.clone(), inv.re.clone());
        let residual_hankel = boundary_residual(n, &kappa, &mu)?;
        if !(residual_hankel < opts.hankel_tol) {
            return Err(Error::CertificationFailure {
                n,
                family: family.tag().to_string(),
                residual: residual_hankel,
                tol: opts.hankel_tol,
            });
        }
        out.push(Eigenvalue {
            lambda,
            n,
            family,
            multiplicity: 2 * n + 1,
            w0,
            mu,
            residual_poly: root.residual_rel,
            residual_hankel,
        });
    }
    Ok(out)
}

/// Output order: `Re lambda` descending, then `(n, family, Im lambda)`.
pub fn spectrum_order<T: Real>(a: &Eigenvalue<T>, b: &Eigenvalue<T>) -> Ordering {
    b.lambda
        .re
        .partial_cmp(&a.lambda.re)
        .unwrap_or(Ordering::Equal)
        .then(a.n.cmp(&b.n))
        .then(a.family.cmp(&b.family))
        .then(a.lambda.im.partial_cmp(&b.lambda.im).unwrap_or(Ordering::Equal))
}

/// All eigenvalues from modes `1..=n_max` of both families.
///
/// Returns an empty list for `gamma = 1` (within [`GAMMA_ONE_TOL`]), where no
/// eigenvalue exists in the left half-plane.
pub fn eigenvalues_ball<T: Real>(gamma: f64, n_max: usize, opts: &SpectrumOptions) -> Result<Vec<Eigenvalue<T>>> {
    check_gamma(gamma)?;
    if n_max == 0 {
        return Err(Error::InvalidMode(0));
    }
    if is_gamma_one(gamma) {
        return Ok(Vec::new());
    }
    let jobs: Vec<(usize, ModeFamily)> =
        (1..=n_max).flat_map(|n| ModeFamily::ALL.into_iter().map(move |f| (n, f))).collect();
    let parts: Vec<Result<Vec<Eigenvalue<T>>>> =
        jobs.par_iter().map(|&(n, f)| mode_eigenvalues::<T>(n, f, gamma, opts)).collect();
    let mut all = Vec::new();
    for part in parts {
        all.extend(part?);
    }
    all.sort_by(spectrum_order);
    Ok(all)
}

/// `max(gamma, 1/gamma)`.
pub fn gamma0<T: Real>(gamma: &T) -> T {
    let inv = T::from_f64_prec(1.0, gamma.precision()) / gamma.clone();
    gamma.clone().max_of(inv)
}

fn check_gamma_not_one<T: Real>(gamma: &T) -> Result<()> {
    if !(*gamma > T::zero()) {
        return Err(Error::InvalidGamma(format!("gamma must be positive, got {gamma}")));
    }
    if (gamma.to_f64() - 1.0).abs() <= GAMMA_ONE_TOL {
        return Err(Error::GammaIsOne);
    }
    Ok(())
}

/// The eigenvalue closest to the imaginary axis,
/// `-2 / ((g0 - 1)(1 + sqrt(1 + 4/(g0 - 1))))` with `g0 = max(gamma, 1/gamma)`.
pub fn lambda1_closed_form<T: Real>(gamma: &T) -> Result<T> {
    check_gamma_not_one(gamma)?;
    let prec = gamma.precision();
    let one = T::from_f64_prec(1.0, prec);
    let d = gamma0(gamma) - one.clone();
    let root = (one.clone() + T::from_f64_prec(4.0, prec) / d.clone()).sqrt();
    Ok(-T::from_f64_prec(2.0, prec) / (d * (one + root)))
}

/// Upper bound `-1 / max(g0 - 1, sqrt(g0 - 1))` on every real eigenvalue
/// other than [`lambda1_closed_form`].
pub fn real_eigenvalue_bound<T: Real>(gamma: &T) -> Result<T> {
    check_gamma_not_one(gamma)?;
    let prec = gamma.precision();
    let d = gamma0(gamma) - T::from_f64_prec(1.0, prec);
    let m = d.clone().max_of(d.sqrt());
    Ok(-T::from_f64_prec(1.0, prec) / m)
}

/// Roots of `R_n` at the given options.
pub fn rn_roots<T: Real>(n: usize, opts: &RootOptions) -> Result<Vec<Complex<T>>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    let p = rn_coefficients(n).to_real::<T>(opts.precision);
    Ok(find_all_roots(&p, opts)?.into_iter().map(|r| r.w).collect())
}

/// The bracket whose positivity rules out a root of `g_n` with `Re w0 > 0` and
/// `Im w0 != 0` when `gamma > 1`:
///
/// ```text
/// B = (gamma - 1)/(2|w0|^2) - sum_j Re z_j / |w0 - z_j|^2
///     + sum_{Im z_j > 0} 4 Re w0 (Im z_j)^2 / (|w0 - z_j|^2 |w0 - conj z_j|^2)
/// ```
///
/// where `z_j` are the roots of `R_n`.
pub fn complex_root_certificate<T: Real>(n: usize, gamma: &T, w0: &Complex<T>, rn_roots: &[Complex<T>]) -> Result<T> {
    if !(gamma.to_f64() > 1.0) {
        return Err(Error::InvalidGamma(format!("certificate needs gamma > 1, got {gamma}")));
    }
    if !(w0.re > T::zero()) {
        return Err(Error::InvalidProbe(format!("Re w0 must be positive, got {}", w0.re)));
    }
    if w0.im.is_zero() {
        return Err(Error::InvalidProbe("Im w0 must be non-zero".into()));
    }
    if rn_roots.len() != n {
        return Err(Error::InvalidParameter(format!("expected {n} roots of R_n, got {}", rn_roots.len())));
    }
    let prec = gamma.precision();
    let one = T::from_f64_prec(1.0, prec);
    let two = T::from_f64_prec(2.0, prec);
    let four = T::from_f64_prec(4.0, prec);
    let mut b = (gamma.clone() - one) / (two * w0.norm_sqr());
    for z in rn_roots {
        let d = (w0.clone() - z.clone()).norm_sqr();
        b = b - z.re.clone() / d.clone();
        if z.im > T::zero() {
            let dc = (w0.clone() - z.conj()).norm_sqr();
            b = b + four.clone() * w0.re.clone() * z.im.clone() * z.im.clone() / (d * dc);
        }
    }
    Ok(b)
}

/// Index pairs of eigenvalues lying within `tol` of each other; reported, not
/// merged.
pub fn coincidences<T: Real>(eigs: &[Eigenvalue<T>], tol: f64) -> Vec<(usize, usize)> {
    let vals: Vec<Complex<f64>> = eigs.iter().map(|e| e.lambda_f64()).collect();
    let mut out = Vec::new();
    for i in 0..vals.len() {
        for j in i + 1..vals.len() {
            if (vals[i] - vals[j]).norm() <= tol {
                out.push((i, j));
            }
        }
    }
    out
}

/// Number of distinct real eigenvalues, values within `tol` counted once.
pub fn count_distinct_real<T: Real>(eigs: &[Eigenvalue<T>], tol: f64) -> usize {
    let mut re: Vec<f64> = eigs.iter().filter(|e| e.is_real()).map(|e| e.lambda.re.to_f64()).collect();
    re.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
    let mut count = 0;
    let mut last: Option<f64> = None;
    for x in re {
        if last.is_none_or(|l| (x - l).abs() > tol) {
            count += 1;
        }
        last = Some(x);
    }
    count
}

/// Compares two spectra as multisets after swapping family tags on the second.
/// Returns the largest relative deviation, or `None` when the mode labels do
/// not line up.
pub fn family_swap_deviation<T: Real>(a: &[Eigenvalue<T>], b: &[Eigenvalue<T>]) -> Option<f64> {
    if a.len() != b.len() {
        return None;
    }
    let key = |e: &Eigenvalue<T>, swap: bool| {
        let fam = if swap { e.family.swapped() } else { e.family };
        let l = e.lambda_f64();
        (e.n, fam, l)
    };
    let mut ka: Vec<_> = a.iter().map(|e| key(e, false)).collect();
    let mut kb: Vec<_> = b.iter().map(|e| key(e, true)).collect();
    let ord = |x: &(usize, ModeFamily, Complex<f64>), y: &(usize, ModeFamily, Complex<f64>)| {
        x.0.cmp(&y.0)
            .then(x.1.cmp(&y.1))
            .then(x.2.re.partial_cmp(&y.2.re).unwrap_or(Ordering::Equal))
            .then(x.2.im.partial_cmp(&y.2.im).unwrap_or(Ordering::Equal))
    };
    ka.sort_by(ord);
    kb.sort_by(ord);
    let mut worst: f64 = 0.0;
    for (x, y) in ka.iter().zip(&kb) {
        if x.0 != y.0 || x.1 != y.1 {
            return None;
        }
        let dev = (x.2 - y.2).norm() / x.2.norm().max(1.0);
        worst = worst.max(dev);
    }
    Some(worst)
}

#[derive(Clone, Debug)]
pub struct AppendixReport {
    pub gamma: f64,
    pub n_max: usize,
    pub eigenvalue_count: usize,
    pub complex_count: usize,
    pub coincidence_count: usize,
    pub checks: Vec<CheckResult>,
}

impl AppendixReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub const CHECK_GAMMA_ONE: &str = "gamma_one_empty_spectrum";
pub const CHECK_LAMBDA1: &str = "lambda1_closed_form";
pub const CHECK_BOUND: &str = "real_eigenvalue_bound";
pub const CHECK_EXCLUSION: &str = "complex_root_exclusion";
pub const CHECK_EXISTENCE: &str = "positive_root_per_mode";
pub const CHECK_SECTOR: &str = "complex_eigenvalue_sector";
pub const CHECK_SWAP: &str = "family_swap_symmetry";

/// Probes per mode for the complex-root certificate.
pub const CERTIFICATE_PROBES: usize = 100;
const PROBE_SEED: u64 = 0x004d_6178_7765_6c6c;

/// Runs every quantitative claim about the ball at desk scale.
///
/// Numerical failures are recorded as failing checks rather than returned.
pub fn verify_appendix<T: Real>(gamma: f64, n_max: usize, opts: &SpectrumOptions) -> AppendixReport {
    let mut report = AppendixReport {
        gamma,
        n_max,
        eigenvalue_count: 0,
        complex_count: 0,
        coincidence_count: 0,
        checks: Vec::new(),
    };
    let names = [CHECK_LAMBDA1, CHECK_BOUND, CHECK_EXCLUSION, CHECK_EXISTENCE, CHECK_SECTOR, CHECK_SWAP];

    if is_gamma_one(gamma) {
        report.checks.push(check_gamma_one::<T>(n_max, opts));
        for name in names {
            report.checks.push(CheckResult::skipped(name, "gamma = 1"));
        }
        return report;
    }
    report.checks.push(CheckResult::skipped(CHECK_GAMMA_ONE, "gamma != 1"));

    let eigs = match eigenvalues_ball::<T>(gamma, n_max, opts) {
        Ok(e) => e,
        Err(err) => {
            for name in names {
                report.checks.push(CheckResult::failed(name, &err));
            }
            return report;
        }
    };
    report.eigenvalue_count = eigs.len();
    report.complex_count = eigs.iter().filter(|e| !e.is_real()).count();
    report.coincidence_count = coincidences(&eigs, 1e-9).len();

    let g = T::from_f64_prec(gamma, opts.precision);
    let g0 = gamma0(&g).to_f64();
    let strong = if gamma > 1.0 { ModeFamily::Alpha } else { ModeFamily::Beta };

    report.checks.push(check_lambda1(&eigs, &g, strong));
    report.checks.push(check_bound(&eigs, &g, strong));
    report.checks.push(check_exclusion::<T>(&eigs, g0, n_max, strong, opts));
    report.checks.push(check_existence::<T>(&eigs, &g, n_max, strong));
    report.checks.push(check_sector(&eigs));
    report.checks.push(match eigenvalues_ball::<T>(1.0 / gamma, n_max, opts) {
        Ok(mirror) => match family_swap_deviation(&eigs, &mirror) {
            Some(dev) => CheckResult::new(
                CHECK_SWAP,
                dev <= 1e-9,
                Some(1e-9 - dev),
                format!("{} eigenvalues, max relative deviation {dev:.3e}", eigs.len()),
            ),
            None => CheckResult::new(CHECK_SWAP, false, None, "mode labels differ".into()),
        },
        Err(err) => CheckResult::failed(CHECK_SWAP, &err),
    });
    report
}

fn check_gamma_one<T: Real>(n_max: usize, opts: &SpectrumOptions) -> CheckResult {
    let eigs = match eigenvalues_ball::<T>(1.0, n_max.max(1), opts) {
        Ok(e) => e,
        Err(err) => return CheckResult::failed(CHECK_GAMMA_ONE, &err),
    };
    // with kappa = 1 the boundary equation reduces to R_n'(w) = 0
    let ropts = opts.root_options(opts.precision);
    let mut max_re = f64::NEG_INFINITY;
    for n in 2..=n_max {
        let d = rn_coefficients(n).derivative().to_real::<T>(opts.precision);
        match find_all_roots(&d, &ropts) {
            Ok(roots) => {
                for r in roots {
                    max_re = max_re.max(r.w.re.to_f64());
                }
            }
            Err(err) => return CheckResult::failed(CHECK_GAMMA_ONE, &err),
        }
    }
    let ok = eigs.is_empty() && max_re < 0.0;
    let margin = if max_re.is_finite() { Some(-max_re) } else { None };
    CheckResult::new(
        CHECK_GAMMA_ONE,
        ok,
        margin,
        format!("{} eigenvalues; largest Re of a root of R_n' for n <= {n_max}: {max_re:.6e}", eigs.len()),
    )
}

fn lambda1_of<T: Real>(eigs: &[Eigenvalue<T>], strong: ModeFamily) -> Option<&Eigenvalue<T>> {
    eigs.iter().find(|e| e.n == 1 && e.family == strong && e.is_real())
}

fn check_lambda1<T: Real>(eigs: &[Eigenvalue<T>], g: &T, strong: ModeFamily) -> CheckResult {
    let closed = match lambda1_closed_form(g) {
        Ok(v) => v.to_f64(),
        Err(err) => return CheckResult::failed(CHECK_LAMBDA1, &err),
    };
    let Some(l1) = lambda1_of(eigs, strong) else {
        return CheckResult::new(CHECK_LAMBDA1, false, None, "no real eigenvalue from n = 1".into());
    };
    let top_is_l1 = eigs.first().is_some_and(|e| e.n == 1 && e.family == strong);
    let got = l1.lambda.re.to_f64();
    let rel = ((got - closed) / closed).abs();
    CheckResult::new(
        CHECK_LAMBDA1,
        rel <= 1e-10 && top_is_l1,
        Some(1e-10 - rel),
        format!("computed {got:.17e}, closed form {closed:.17e}, relative error {rel:.3e}"),
    )
}

fn check_bound<T: Real>(eigs: &[Eigenvalue<T>], g: &T, strong: ModeFamily) -> CheckResult {
    let bound = match real_eigenvalue_bound(g) {
        Ok(v) => v.to_f64(),
        Err(err) => return CheckResult::failed(CHECK_BOUND, &err),
    };
    let others: Vec<f64> = eigs
        .iter()
        .filter(|e| e.is_real() && !(e.n == 1 && e.family == strong))
        .map(|e| e.lambda.re.to_f64())
        .collect();
    let Some(worst) = others.iter().cloned().reduce(f64::max) else {
        return CheckResult::new(CHECK_BOUND, true, None, format!("bound {bound:.17e}; no other real eigenvalue"));
    };
    let margin = bound + 1e-12 - worst;
    CheckResult::new(
        CHECK_BOUND,
        margin >= 0.0,
        Some(margin),
        format!("bound {bound:.17e}, largest other real eigenvalue {worst:.17e} ({} checked)", others.len()),
    )
}

fn check_exclusion<T: Real>(
    eigs: &[Eigenvalue<T>],
    g0: f64,
    n_max: usize,
    strong: ModeFamily,
    opts: &SpectrumOptions,
) -> CheckResult {
    let nonreal = eigs.iter().filter(|e| e.family == strong && !e.is_real()).count();
    let ropts = opts.root_options(opts.precision);
    let g0t = T::from_f64_prec(g0, opts.precision);
    let mut rng = ChaCha8Rng::seed_from_u64(PROBE_SEED);
    let mut min_b = f64::INFINITY;
    for n in 1..=n_max {
        let roots = match rn_roots::<T>(n, &ropts) {
            Ok(r) => r,
            Err(err) => return CheckResult::failed(CHECK_EXCLUSION, &err),
        };
        for probe in random_probes(&mut rng, CERTIFICATE_PROBES) {
            let w =
                Complex::new(T::from_f64_prec(probe.re, opts.precision), T::from_f64_prec(probe.im, opts.precision));
            match complex_root_certificate(n, &g0t, &w, &roots) {
                Ok(b) => min_b = min_b.min(b.to_f64()),
                Err(err) => return CheckResult::failed(CHECK_EXCLUSION, &err),
            }
        }
    }
    CheckResult::new(
        CHECK_EXCLUSION,
        nonreal == 0 && min_b > 0.0,
        Some(min_b),
        format!(
            "{nonreal} non-real roots in the {strong} family; smallest bracket over {} probes: {min_b:.6e}",
            n_max * CERTIFICATE_PROBES
        ),
    )
}

/// Probe points with `0 < Re w <= 2` and `0 < |Im w| <= 2`.
pub fn random_probes(rng: &mut impl Rng, count: usize) -> Vec<Complex<f64>> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let re = 2.0 * (1.0 - rng.gen::<f64>());
        let im = 4.0 * rng.gen::<f64>() - 2.0;
        if im.abs() > 1e-6 {
            out.push(Complex::new(re, im));
        }
    }
    out
}

fn check_existence<T: Real>(eigs: &[Eigenvalue<T>], g: &T, n_max: usize, strong: ModeFamily) -> CheckResult {
    let kappa = strong.kappa(g);
    let mut missing = Vec::new();
    let mut min_count = usize::MAX;
    for n in 1..=n_max {
        let q = match boundary_polynomial(n, &kappa) {
            Ok(q) => q,
            Err(err) => return CheckResult::failed(CHECK_EXISTENCE, &err),
        };
        let at_zero = q.poly.eval_real(&T::zero());
        let mut sign_change = false;
        if at_zero < T::zero() {
            let mut w = T::from_f64_prec(1.0, g.precision());
            for _ in 0..64 {
                if q.poly.eval_real(&w) > T::zero() {
                    sign_change = true;
                    break;
                }
                w = w.clone() + w;
            }
        }
        let count = eigs.iter().filter(|e| e.n == n && e.family == strong && e.is_real()).count();
        min_count = min_count.min(count);
        if !sign_change || count == 0 {
            missing.push(n);
        }
    }
    CheckResult::new(
        CHECK_EXISTENCE,
        missing.is_empty(),
        Some(min_count as f64),
        if missing.is_empty() {
            format!("every mode 1..={n_max} of the {strong} family has a positive real root")
        } else {
            format!("modes without a positive real root: {missing:?}")
        },
    )
}

fn check_sector<T: Real>(eigs: &[Eigenvalue<T>]) -> CheckResult {
    let mut min_margin: Option<f64> = None;
    let mut count = 0;
    for e in eigs.iter().filter(|e| !e.is_real()) {
        count += 1;
        let arg = carg(&e.lambda).to_f64().abs();
        let m = (arg - std::f64::consts::PI).abs() - FRAC_PI_4;
        min_margin = Some(min_margin.map_or(m, |x: f64| x.min(m)));
    }
    CheckResult::new(
        CHECK_SECTOR,
        min_margin.is_none_or(|m| m > 0.0),
        min_margin,
        format!("{count} non-real eigenvalues found"),
    )
}

/// `|lambda|` as `f64`, for reporting.
pub fn modulus<T: Real>(e: &Eigenvalue<T>) -> f64 {
    cabs(&e.lambda).to_f64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::MpFloat;
    use num_traits::Zero;

    fn coeffs_f64(q: &BoundaryPolynomial<MpFloat>) -> Vec<f64> {
        q.poly.coeffs().iter().map(|c| c.to_f64()).collect()
    }

    #[test]
    fn boundary_polynomial_examples() {
        let q = boundary_polynomial(1, &MpFloat::new(2.0, 128)).unwrap();
        assert_eq!(coeffs_f64(&q), vec![-0.5, -1.0, 2.0]);
        let q = boundary_polynomial(1, &MpFloat::new(1.0, 128)).unwrap();
        assert_eq!(coeffs_f64(&q), vec![0.0, 0.0, 2.0]);
        let q = boundary_polynomial(2, &MpFloat::new(2.0, 128)).unwrap();
        assert_eq!(coeffs_f64(&q), vec![-0.5, -3.0, 0.0, 24.0]);
    }

    #[test]
    fn boundary_polynomial_invariants() {
        for n in 1..=12 {
            for kappa in [0.3, 1.0, 2.5] {
                let q = boundary_polynomial(n, &kappa).unwrap();
                assert_eq!(q.poly.degree(), n + 1);
                assert_eq!(q.poly.coeffs()[0], (1.0 - kappa) / 2.0);
                let a_n = rn_coefficients(n).coeffs()[n].clone();
                assert_eq!(*q.poly.leading(), f64::from_bigint(&(a_n * BigInt::from(n)), 53));
            }
        }
    }

    #[test]
    fn boundary_polynomial_errors() {
        assert_eq!(boundary_polynomial(0, &2.0).unwrap_err(), Error::InvalidMode(0));
        assert!(matches!(boundary_polynomial(1, &0.0), Err(Error::InvalidCoupling(_))));
    }

    #[test]
    fn closed_forms() {
        let l = lambda1_closed_form(&2.0).unwrap();
        assert!((l - (-2.0 / (1.0 + 5f64.sqrt()))).abs() < 1e-15);
        assert!((lambda1_closed_form(&0.5).unwrap() - l).abs() < 1e-15);
        let want = -2.0 / (0.01 * (1.0 + 401f64.sqrt()));
        let got = lambda1_closed_form(&1.01).unwrap();
        assert!((got - want).abs() < 1e-9 * want.abs());
        assert!((got + 9.512).abs() < 1e-3);
        assert_eq!(lambda1_closed_form(&1.0).unwrap_err(), Error::GammaIsOne);

        assert_eq!(real_eigenvalue_bound(&2.0).unwrap(), -1.0);
        assert_eq!(real_eigenvalue_bound(&5.0).unwrap(), -0.25);
        assert_eq!(real_eigenvalue_bound(&1.25).unwrap(), -2.0);
        assert_eq!(real_eigenvalue_bound(&1.0).unwrap_err(), Error::GammaIsOne);
    }

    #[test]
    fn certificate_first_mode_by_hand() {
        let roots = vec![Complex::new(-0.5, 0.0)];
        let b = complex_root_certificate(1, &2.0, &Complex::new(0.5, 0.5), &roots).unwrap();
        assert!((b - 1.4).abs() < 1e-15);
        assert!(matches!(
            complex_root_certificate(1, &1.5, &Complex::new(1.0, 0.0), &roots),
            Err(Error::InvalidProbe(_))
        ));
        assert!(matches!(
            complex_root_certificate(1, &0.5, &Complex::new(1.0, 1.0), &roots),
            Err(Error::InvalidGamma(_))
        ));
    }

    #[test]
    fn single_mode_spectrum() {
        let eigs = eigenvalues_ball::<MpFloat>(2.0, 1, &SpectrumOptions::with_precision(128)).unwrap();
        assert_eq!(eigs.len(), 1);
        let e = &eigs[0];
        assert_eq!((e.n, e.family, e.multiplicity), (1, ModeFamily::Alpha, 3));
        assert!((e.lambda.re.to_f64() + 2.0 / (1.0 + 5f64.sqrt())).abs() < 1e-15);
        assert!(e.mu.im > MpFloat::zero());
    }

    #[test]
    fn gamma_one_is_empty() {
        let eigs = eigenvalues_ball::<f64>(1.0, 40, &SpectrumOptions::default()).unwrap();
        assert!(eigs.is_empty());
        assert!(eigenvalues_ball::<f64>(0.0, 4, &SpectrumOptions::default()).is_err());
    }

    #[test]
    fn distinct_counting_and_coincidences() {
        let eigs = eigenvalues_ball::<MpFloat>(2.0, 3, &SpectrumOptions::with_precision(128)).unwrap();
        assert_eq!(count_distinct_real(&eigs, 1e-9), 3);
        assert!(coincidences(&eigs, 1e-9).is_empty());
        let mut doubled = eigs.clone();
        doubled.push(eigs[0].clone());
        assert_eq!(coincidences(&doubled, 1e-9).len(), 1);
        assert_eq!(count_distinct_real(&doubled, 1e-9), 3);
    }
}
