//! All complex roots of a real polynomial, certified by backward residual.
//!
//! Roots are first located with Aberth–Ehrlich simultaneous iteration in
//! hardware precision on the max-normalised polynomial, then polished by the
//! same iteration at twice the working precision. Real coefficients are
//! exploited at the end: near-real roots are snapped onto the axis and the
//! remaining roots are paired with their conjugates.

mod hull;

pub use hull::{convex_hull_2d, point_in_hull};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::exactpoly::Poly;
use crate::scalar::{cabs, complex_to_f64, complex_with_precision, Real};

/// Tunables for [`find_all_roots`].
#[derive(Clone, Debug)]
pub struct RootOptions {
    /// Working precision in bits; refinement runs at twice this.
    pub precision: u32,
    /// Acceptance bound on the relative residual. `None` selects
    /// `2^(-p/2)` for the effective working precision `p`.
    pub tol: Option<f64>,
    /// `|Im w| <= real_tol * (1 + |w|)` marks a root as real.
    pub real_tol: f64,
    pub max_refine_iter: usize,
}

impl Default for RootOptions {
    fn default() -> Self {
        RootOptions { precision: 256, tol: None, real_tol: 1e-9, max_refine_iter: 100 }
    }
}

impl RootOptions {
    pub fn with_precision(precision: u32) -> Self {
        RootOptions { precision, ..Default::default() }
    }

    /// Residual tolerance actually applied for scalar type `T`.
    pub fn effective_tol<T: Real>(&self) -> f64 {
        self.tol.unwrap_or_else(|| {
            let p = T::from_f64_prec(1.0, self.precision).precision();
            2f64.powi(-(p as i32) / 2)
        })
    }
}

/// A root with its certificate.
#[derive(Clone, Debug)]
pub struct CertifiedRoot<T> {
    pub w: Complex<T>,
    /// `|p(w)| / sum |c_m| |w|^m`, evaluated at the refinement precision.
    pub residual_rel: f64,
    pub is_real: bool,
    pub refined_precision: u32,
}

/// Finds every root of `p`, counted with multiplicity.
///
/// Exact zero roots (vanishing low-order coefficients) are split off first.
/// The output is sorted by real part, then imaginary part.
pub fn find_all_roots<T: Real>(p: &Poly<T>, opts: &RootOptions) -> Result<Vec<CertifiedRoot<T>>> {
    let coeffs = p.coeffs();
    if coeffs.len() < 2 {
        return Err(Error::InvalidPolynomial("degree must be at least 1".into()));
    }
    if coeffs[coeffs.len() - 1].is_zero() {
        return Err(Error::InvalidPolynomial("leading coefficient is zero".into()));
    }
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(Error::InvalidPolynomial("non-finite coefficient".into()));
    }

    let work = T::from_f64_prec(1.0, opts.precision).precision();
    let refine = 2 * work;
    let tol = opts.effective_tol::<T>();

    let zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
    let reduced = Poly::new(coeffs[zeros..].iter().map(|c| c.with_precision(refine)).collect());
    let zero_root = || CertifiedRoot {
        w: Complex::new(T::from_f64_prec(0.0, work), T::from_f64_prec(0.0, work)),
        residual_rel: 0.0,
        is_real: true,
        refined_precision: refine,
    };

    let mut roots: Vec<Complex<T>> = Vec::new();
    if reduced.degree() > 0 {
        roots = polish(&reduced, refine, work, opts)?;
        roots = enforce_conjugate_symmetry(roots, opts.real_tol)?;
    }

    let mut out: Vec<CertifiedRoot<T>> = (0..zeros).map(|_| zero_root()).collect();
    for z in roots {
        let is_real = z.im.is_zero();
        let w = complex_with_precision(&z, work);
        let residual_rel = reduced.eval(&complex_with_precision(&w, refine)).relative_residual();
        out.push(CertifiedRoot { w, residual_rel, is_real, refined_precision: refine });
    }
    sort_roots(&mut out);
    for (index, r) in out.iter().enumerate() {
        if !(r.residual_rel <= tol) {
            return Err(Error::ConvergenceFailure { index, residual: r.residual_rel });
        }
    }
    Ok(out)
}

fn sort_roots<T: Real>(roots: &mut [CertifiedRoot<T>]) {
    roots.sort_by(|a, b| {
        a.w.re
            .partial_cmp(&b.w.re)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.w.im.partial_cmp(&b.w.im).unwrap_or(std::cmp::Ordering::Equal))
    });
}

/// Seeds in `f64`, then refines at `refine` bits. Falls back to a full
/// iteration at `refine` bits when the seed cannot be polished.
fn polish<T: Real>(p: &Poly<T>, refine: u32, work: u32, opts: &RootOptions) -> Result<Vec<Complex<T>>> {
    let d = p.degree();
    let lead = p.leading().clone();
    if d == 1 {
        let w = -p.coeffs()[0].clone() / lead;
        return Ok(vec![Complex::new(w, T::zero().with_precision(refine))]);
    }

    // stopping threshold for a root's relative Aberth correction
    let eps_refine = T::epsilon(refine).to_f64();
    let threshold = (2f64.powi(-(work as i32 + 16))).max(16.0 * eps_refine);
    let tol = opts.effective_tol::<T>();

    let seed = seed_roots(p);
    let start: Vec<Complex<T>> = match seed {
        Some(s) => {
            s.iter().map(|z| Complex::new(T::from_f64_prec(z.re, refine), T::from_f64_prec(z.im, refine))).collect()
        }
        None => initial_circle(p, refine),
    };
    let roots = aberth(p, start, threshold, opts.max_refine_iter);
    if roots_acceptable(p, &roots, tol) {
        return Ok(roots);
    }
    let roots = aberth(p, initial_circle(p, refine), threshold, opts.max_refine_iter.max(500));
    Ok(roots)
}

fn roots_acceptable<T: Real>(p: &Poly<T>, roots: &[Complex<T>], tol: f64) -> bool {
    roots.iter().all(|z| {
        let r = p.eval(z).relative_residual();
        r.is_finite() && r <= tol
    })
}

/// Hardware-precision starting values, or `None` if the iteration breaks down.
fn seed_roots<T: Real>(p: &Poly<T>) -> Option<Vec<Complex<f64>>> {
    let maxc = p.coeffs().iter().map(|c| c.abs()).fold(T::zero(), |a, b| a.max_of(b));
    let scaled: Vec<f64> = p.coeffs().iter().map(|c| (c.clone() / maxc.clone()).to_f64()).collect();
    if scaled[scaled.len() - 1] == 0.0 || scaled.iter().any(|c| !c.is_finite()) {
        return None;
    }
    let q = Poly::new(scaled);
    let start = initial_circle(&q, 53);
    let roots = aberth(&q, start, 4.0 * f64::EPSILON, 1000);
    if roots.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Some(roots.iter().map(complex_to_f64).collect())
    } else {
        None
    }
}

/// Starting points on a circle of radius given by the Fujiwara bound, with an
/// angular offset that keeps them off the real axis.
fn initial_circle<T: Real>(p: &Poly<T>, prec: u32) -> Vec<Complex<T>> {
    let c: Vec<f64> = {
        let maxc = p.coeffs().iter().map(|c| c.abs()).fold(T::zero(), |a, b| a.max_of(b));
        p.coeffs().iter().map(|x| (x.clone() / maxc.clone()).to_f64()).collect()
    };
    let d = c.len() - 1;
    let lead = c[d].abs();
    let mut bound: f64 = 0.0;
    for k in 1..=d {
        let mut ratio = c[d - k].abs() / lead;
        if k == d {
            ratio /= 2.0;
        }
        bound = bound.max(ratio.powf(1.0 / k as f64));
    }
    let radius = if bound > 0.0 && bound.is_finite() { 2.0 * bound } else { 1.0 };
    (0..d)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / d as f64 + 0.4;
            // slight radial jitter breaks symmetric stagnation
            let r = radius * (1.0 + 0.01 * ((k % 3) as f64));
            Complex::new(T::from_f64_prec(r * theta.cos(), prec), T::from_f64_prec(r * theta.sin(), prec))
        })
        .collect()
}

/// Gauss–Seidel Aberth–Ehrlich iteration. A root stops moving once its
/// relative correction falls below `threshold`; the sweep ends when every
/// root has stopped or `max_iter` sweeps have run.
fn aberth<T: Real>(p: &Poly<T>, mut z: Vec<Complex<T>>, threshold: f64, max_iter: usize) -> Vec<Complex<T>> {
    let n = z.len();
    let mut done = vec![false; n];
    let one = Complex::new(T::one(), T::zero());
    for _ in 0..max_iter {
        let mut all_done = true;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let (val, dval) = p.eval_with_derivative(&z[i]);
            if val.re.is_zero() && val.im.is_zero() {
                done[i] = true;
                continue;
            }
            let ratio = val / dval;
            let mut sum = Complex::new(T::zero(), T::zero());
            for j in 0..n {
                if j != i {
                    let diff = z[i].clone() - z[j].clone();
                    sum = sum + one.clone() / diff;
                }
            }
            let delta = ratio.clone() / (one.clone() - ratio * sum);
            let step = cabs(&delta).to_f64();
            let size = cabs(&z[i]).to_f64();
            if !step.is_finite() {
                continue;
            }
            z[i] = z[i].clone() - delta;
            if step <= threshold * size.max(f64::MIN_POSITIVE) {
                done[i] = true;
            } else {
                all_done = false;
            }
        }
        if all_done {
            break;
        }
    }
    z
}

/// Snaps near-real roots onto the axis and averages every remaining root with
/// the conjugate of its partner.
fn enforce_conjugate_symmetry<T: Real>(roots: Vec<Complex<T>>, real_tol: f64) -> Result<Vec<Complex<T>>> {
    let mut out = Vec::with_capacity(roots.len());
    let mut upper = Vec::new();
    let mut lower = Vec::new();
    for z in roots {
        let mag = cabs(&z).to_f64();
        if z.im.abs().to_f64() <= real_tol * (1.0 + mag) {
            let prec = z.im.precision();
            out.push(Complex::new(z.re, T::zero().with_precision(prec)));
        } else if z.im > T::zero() {
            upper.push(z);
        } else {
            lower.push(z);
        }
    }
    if upper.len() != lower.len() {
        return Err(Error::ConvergenceFailure { index: out.len(), residual: f64::INFINITY });
    }
    let two = T::from_f64_prec(2.0, 64);
    let mut used = vec![false; lower.len()];
    for u in upper {
        let mut best: Option<(usize, f64)> = None;
        for (k, l) in lower.iter().enumerate() {
            if used[k] {
                continue;
            }
            let dist = cabs(&(u.clone() - l.conj())).to_f64();
            if best.is_none_or(|(_, bd)| dist < bd) {
                best = Some((k, dist));
            }
        }
        let (k, _) = best.expect("equal partition sizes");
        used[k] = true;
        let avg = (u + lower[k].conj()) / Complex::new(two.clone(), T::zero());
        out.push(avg.conj());
        out.push(avg);
    }
    Ok(out)
}
