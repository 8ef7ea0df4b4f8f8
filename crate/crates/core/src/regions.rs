//! Eigenvalue regions, the semiclassical change of variables, and the
//! contours `Z1`, `Z2`, `Z3`.
//!
//! All set inequalities are non-strict except `Re z < 0`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::report::CheckResult;
use crate::scalar::{cabs, csqrt, Real};

/// A region of the open left half-plane.
///
/// Constants may be zero so that fitted values (for instance `C_N = 0` for a
/// purely real spectrum) can be represented; [`RegionSpec::validate`] only
/// rejects negative or non-finite constants.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RegionSpec {
    /// `|Re z| <= C_eps (|Im z|^{1/2 + eps} + 1)`
    LambdaEps { eps: f64, c_eps: f64 },
    /// `|Im z| <= C_N (|Re z| + 1)^{-N}`
    RN { n: u32, c_n: f64 },
    /// `|arg z - pi| <= pi/4`, `|z| >= R0`
    M { r0: f64 },
    /// `|arg z - pi| <= arctan(delta0)`, `|z| >= R0`
    MDelta { delta0: f64, r0: f64 },
}

fn nonneg(name: &str, x: f64) -> Result<()> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::InvalidParameter(format!("{name} must be finite and non-negative, got {x}")));
    }
    Ok(())
}

fn positive(name: &str, x: f64) -> Result<()> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::InvalidParameter(format!("{name} must be finite and positive, got {x}")));
    }
    Ok(())
}

impl RegionSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            RegionSpec::LambdaEps { eps, c_eps } => {
                if !(eps > 0.0 && eps < 0.5) {
                    return Err(Error::InvalidParameter(format!("eps must lie in (0, 1/2), got {eps}")));
                }
                nonneg("C_eps", c_eps)
            }
            RegionSpec::RN { n, c_n } => {
                if n == 0 {
                    return Err(Error::InvalidParameter("N must be at least 1".into()));
                }
                nonneg("C_N", c_n)
            }
            RegionSpec::M { r0 } => positive("R0", r0),
            RegionSpec::MDelta { delta0, r0 } => {
                positive("delta0", delta0)?;
                positive("R0", r0)
            }
        }
    }
}

/// Membership of `lambda` in `spec`, evaluated at the precision of `lambda`.
///
/// The sector conditions use `|Im z| <= tan(theta) |Re z|`, which equals
/// `|arg z - pi| <= theta` on `Re z < 0` after folding the lower half-plane
/// onto the upper one.
pub fn in_region<T: Real>(lambda: &Complex<T>, spec: &RegionSpec) -> bool {
    if !(lambda.re < T::zero()) {
        return false;
    }
    let prec = lambda.re.precision();
    let c = |x: f64| T::from_f64_prec(x, prec);
    let re = lambda.re.clone().abs();
    let im = lambda.im.clone().abs();
    match *spec {
        RegionSpec::LambdaEps { eps, c_eps } => {
            let p = im.powf(&c(0.5 + eps));
            re <= c(c_eps) * (p + c(1.0))
        }
        RegionSpec::RN { n, c_n } => {
            let mut denom = c(1.0);
            let base = re + c(1.0);
            for _ in 0..n {
                denom = denom * base.clone();
            }
            im <= c(c_n) / denom
        }
        RegionSpec::M { r0 } => im <= re && cabs(lambda) >= c(r0),
        RegionSpec::MDelta { delta0, r0 } => im <= c(delta0) * re && cabs(lambda) >= c(r0),
    }
}

/// Membership in `Lambda_eps ∪ R_N`.
pub fn in_union<T: Real>(lambda: &Complex<T>, eps: f64, c_eps: f64, n: u32, c_n: f64) -> bool {
    in_region(lambda, &RegionSpec::LambdaEps { eps, c_eps }) || in_region(lambda, &RegionSpec::RN { n, c_n })
}

fn check_h(h: f64) -> Result<()> {
    positive("h", h)
}

/// `z = -lambda^2 h^2`. Requires `lambda` in the closed second quadrant, the
/// image of the upper half-plane under `z -> i sqrt(z)/h`.
pub fn lambda_to_z<T: Real>(lambda: &Complex<T>, h: f64) -> Result<Complex<T>> {
    check_h(h)?;
    if lambda.re > T::zero() || lambda.im < T::zero() {
        return Err(Error::BranchViolation(format!(
            "lambda = {} + {}i is outside Re <= 0, Im >= 0",
            lambda.re, lambda.im
        )));
    }
    let hh = T::from_f64_prec(h, lambda.re.precision());
    let scaled = Complex::new(lambda.re.clone() * hh.clone(), lambda.im.clone() * hh);
    Ok(-(scaled.clone() * scaled))
}

/// `lambda = i sqrt(z)/h` with the principal root, which maps `Im z >= 0`
/// onto the closed first quadrant.
pub fn z_to_lambda<T: Real>(z: &Complex<T>, h: f64) -> Result<Complex<T>> {
    check_h(h)?;
    if z.im < T::zero() {
        return Err(Error::BranchViolation(format!("z = {} + {}i has Im z < 0", z.re, z.im)));
    }
    let s = csqrt(z);
    let hh = T::from_f64_prec(h, z.re.precision());
    Ok(Complex::new(-(s.im / hh.clone()), s.re / hh))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Contour {
    /// `Re z = 1`, `h^delta <= Im z <= 1`
    Z1,
    /// `Re z = -1`, `0 <= Im z <= 1`
    Z2,
    /// `|Re z| <= 1`, `Im z = 1`
    Z3,
}

impl Contour {
    pub fn name(self) -> &'static str {
        match self {
            Contour::Z1 => "z1",
            Contour::Z2 => "z2",
            Contour::Z3 => "z3",
        }
    }
}

impl fmt::Display for Contour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Contour {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "z1" => Ok(Contour::Z1),
            "z2" => Ok(Contour::Z2),
            "z3" => Ok(Contour::Z3),
            other => Err(Error::InvalidParameter(format!("unknown contour {other:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ContourPoint<T> {
    pub contour: Contour,
    pub z: Complex<T>,
    pub h: f64,
    pub delta: f64,
}

/// `count` evenly spaced points along `contour`, endpoints included, at
/// precision `prec`.
pub fn sample_contour<T: Real>(
    contour: Contour,
    h: f64,
    delta: f64,
    count: usize,
    prec: u32,
) -> Result<Vec<ContourPoint<T>>> {
    if !(h > 0.0 && h < 1.0) {
        return Err(Error::InvalidParameter(format!("h must lie in (0, 1), got {h}")));
    }
    if !(delta > 0.0 && delta < 0.5) {
        return Err(Error::InvalidParameter(format!("delta must lie in (0, 1/2), got {delta}")));
    }
    if count < 2 {
        return Err(Error::InvalidParameter(format!("need at least 2 contour points, got {count}")));
    }
    let c = |x: f64| T::from_f64_prec(x, prec);
    let one = c(1.0);
    let (start, end) = match contour {
        Contour::Z1 => {
            let low = c(h).powf(&c(delta));
            (Complex::new(one.clone(), low), Complex::new(one.clone(), one))
        }
        Contour::Z2 => (Complex::new(-one.clone(), c(0.0)), Complex::new(-one.clone(), one)),
        Contour::Z3 => (Complex::new(-one.clone(), one.clone()), Complex::new(one.clone(), one)),
    };
    let steps = c((count - 1) as f64);
    Ok((0..count)
        .map(|k| {
            let z = if k + 1 == count {
                end.clone()
            } else {
                let t = c(k as f64) / steps.clone();
                let d = end.clone() - start.clone();
                Complex::new(start.re.clone() + d.re * t.clone(), start.im.clone() + d.im * t)
            };
            ContourPoint { contour, z, h, delta }
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FittedConstants {
    pub c_eps: f64,
    pub c_n: f64,
}

/// Smallest `C_eps` needed for `lambda`: `|Re| / (|Im|^{1/2+eps} + 1)`.
pub fn needed_c_eps<T: Real>(lambda: &Complex<T>, eps: f64) -> T {
    let prec = lambda.re.precision();
    let p = lambda.im.clone().abs().powf(&T::from_f64_prec(0.5 + eps, prec));
    lambda.re.clone().abs() / (p + T::from_f64_prec(1.0, prec))
}

/// Smallest `C_N` needed for `lambda`: `|Im| (|Re| + 1)^N`.
pub fn needed_c_n<T: Real>(lambda: &Complex<T>, n: u32) -> T {
    let base = lambda.re.clone().abs() + T::from_f64_prec(1.0, lambda.re.precision());
    let mut v = lambda.im.clone().abs();
    for _ in 0..n {
        v = v * base.clone();
    }
    v
}

/// Rounds `need` to `f64` and nudges it up until `lambda` is a member.
fn covering_constant<T: Real>(lambda: &Complex<T>, need: &T, spec: impl Fn(f64) -> RegionSpec) -> f64 {
    let mut c = need.to_f64();
    while !in_region(lambda, &spec(c)) {
        c = c.next_up();
    }
    c
}

/// Constants `(C_eps, C_N)` making every eigenvalue a member of
/// `Lambda_eps ∪ R_N`. Each eigenvalue goes to the region whose required
/// constant is smaller (`R_N` on ties); each constant is the maximum over its
/// assigned eigenvalues, or 0 when none are assigned.
pub fn fit_constants<T: Real>(lambdas: &[Complex<T>], eps: f64, n: u32) -> Result<FittedConstants> {
    if lambdas.is_empty() {
        return Err(Error::EmptyInput);
    }
    RegionSpec::LambdaEps { eps, c_eps: 0.0 }.validate()?;
    RegionSpec::RN { n, c_n: 0.0 }.validate()?;
    let mut out = FittedConstants { c_eps: 0.0, c_n: 0.0 };
    for l in lambdas {
        if !(l.re < T::zero()) {
            return Err(Error::InvalidParameter(format!("eigenvalue {} + {}i has Re >= 0", l.re, l.im)));
        }
        let ne = needed_c_eps(l, eps);
        let nn = needed_c_n(l, n);
        if nn <= ne {
            let c = covering_constant(l, &nn, |c_n| RegionSpec::RN { n, c_n });
            out.c_n = out.c_n.max(c);
        } else {
            let c = covering_constant(l, &ne, |c_eps| RegionSpec::LambdaEps { eps, c_eps });
            out.c_eps = out.c_eps.max(c);
        }
    }
    Ok(out)
}

pub const CHECK_FIT: &str = "region_constants_cover_spectrum";
pub const CHECK_ROUND_TRIP: &str = "change_of_variables_round_trip";

/// Slack of `lambda` in its better region: positive inside, negative outside.
fn union_slack<T: Real>(lambda: &Complex<T>, eps: f64, fc: &FittedConstants, n: u32) -> f64 {
    let re = lambda.re.to_f64().abs();
    let im = lambda.im.to_f64().abs();
    let le = fc.c_eps * (im.powf(0.5 + eps) + 1.0) - re;
    let rn = fc.c_n / (re + 1.0).powi(n as i32) - im;
    le.max(rn)
}

/// Fits `(C_eps, C_N)` to `lambdas` and checks that the union holds every
/// eigenvalue and its conjugate, then checks the `lambda <-> z` round trip at
/// scale `h`. An empty spectrum passes vacuously.
pub fn verify_regions<T: Real>(lambdas: &[Complex<T>], eps: f64, n: u32, h: f64) -> Vec<CheckResult> {
    let mut out = Vec::new();
    if lambdas.is_empty() {
        out.push(CheckResult::new(CHECK_FIT, true, None, "empty spectrum".into()));
        out.push(CheckResult::new(CHECK_ROUND_TRIP, true, None, "empty spectrum".into()));
        return out;
    }
    out.push(match fit_constants(lambdas, eps, n) {
        Ok(fc) => {
            let mut members = true;
            let mut slack = f64::INFINITY;
            for l in lambdas {
                for p in [l.clone(), l.conj()] {
                    members &= in_union(&p, eps, fc.c_eps, n, fc.c_n);
                    slack = slack.min(union_slack(&p, eps, &fc, n));
                }
            }
            let finite = fc.c_eps.is_finite() && fc.c_n.is_finite();
            CheckResult::new(
                CHECK_FIT,
                members && finite,
                Some(slack),
                format!("eps={eps} N={n}: C_eps={:.17e} C_N={:.17e}, {} eigenvalues", fc.c_eps, fc.c_n, lambdas.len()),
            )
        }
        Err(e) => CheckResult::failed(CHECK_FIT, &e),
    });

    let prec = lambdas[0].re.precision();
    let tol = 64.0 * T::epsilon(prec).to_f64();
    let mut worst: f64 = 0.0;
    for l in lambdas {
        let l = if l.im < T::zero() { l.conj() } else { l.clone() };
        let back = match lambda_to_z(&l, h).and_then(|z| z_to_lambda(&z, h)) {
            Ok(b) => b,
            Err(e) => {
                out.push(CheckResult::failed(CHECK_ROUND_TRIP, &e));
                return out;
            }
        };
        let err = (cabs(&(back - l.clone())) / cabs(&l)).to_f64();
        worst = worst.max(err);
    }
    out.push(CheckResult::new(
        CHECK_ROUND_TRIP,
        worst <= tol,
        Some(tol - worst),
        format!("h={h}: largest relative round-trip error {worst:.3e} (tolerance {tol:.3e})"),
    ));
    out
}
