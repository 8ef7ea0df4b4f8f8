//! Spherical Hankel functions of the first kind.
//!
//! [`hankel_recurrence`] uses the three-term recurrence in the order, which is
//! stable upwards because `h_n` is the dominant solution. It never touches
//! the `R_n` polynomial, so [`boundary_residual`] built on it gives a check of
//! polynomial roots that does not share code with the polynomial pipeline.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::exactpoly::rn_coefficients;
use crate::scalar::{cabs, cexp, cinv, Real};

/// Below this modulus the recurrence start-up loses accuracy and the closed
/// form is used instead.
pub const SMALL_ARGUMENT: f64 = 0.05;

#[derive(Clone, Debug)]
pub struct HankelValue<T> {
    pub n: usize,
    pub z: Complex<T>,
    /// `h_n(z)`
    pub h: Complex<T>,
    /// `h_n'(z)`
    pub dh: Complex<T>,
}

fn is_zero<T: Real>(z: &Complex<T>) -> bool {
    z.re.is_zero() && z.im.is_zero()
}

fn i_unit<T: Real>(prec: u32) -> Complex<T> {
    Complex::new(T::from_f64_prec(0.0, prec), T::from_f64_prec(1.0, prec))
}

fn real<T: Real>(x: T) -> Complex<T> {
    Complex::new(x, T::zero())
}

/// `(-i)^k`
fn minus_i_pow<T: Real>(k: usize, prec: u32) -> Complex<T> {
    let (re, im) = match k % 4 {
        0 => (1.0, 0.0),
        1 => (0.0, -1.0),
        2 => (-1.0, 0.0),
        _ => (0.0, 1.0),
    };
    Complex::new(T::from_f64_prec(re, prec), T::from_f64_prec(im, prec))
}

/// `h_n(z)` and `h_n'(z)` by upward recurrence from
/// `h_0 = -i e^{iz}/z` and `h_1 = -e^{iz}(1/z + i/z^2)`.
///
/// Requires `Im z >= 0`. For `|z| < SMALL_ARGUMENT` the closed form is used.
pub fn hankel_recurrence<T: Real>(n: usize, z: &Complex<T>) -> Result<HankelValue<T>> {
    if is_zero(z) {
        return Err(Error::ZeroArgument);
    }
    if z.im < T::zero() {
        return Err(Error::LowerHalfPlane(format!("{} + {}i", z.re, z.im)));
    }
    if cabs(z).to_f64() < SMALL_ARGUMENT {
        return Ok(HankelValue {
            n,
            z: z.clone(),
            h: hankel_closed_form(n, z)?,
            dh: hankel_closed_form_derivative(n, z)?,
        });
    }
    let prec = z.re.precision().max(z.im.precision());
    let i = i_unit::<T>(prec);
    let inv = cinv(z);
    let e = cexp(&(i.clone() * z.clone()));
    let h0 = -(i.clone() * e.clone() * inv.clone());
    let h1 = -(e * (inv.clone() + i * inv.clone() * inv.clone()));
    if n == 0 {
        return Ok(HankelValue { n, z: z.clone(), h: h0, dh: -h1 });
    }
    let (mut prev, mut cur) = (h0, h1);
    for k in 1..n {
        let factor = real(T::from_usize(2 * k + 1).expect("small integer")) * inv.clone();
        let next = factor * cur.clone() - prev;
        prev = cur;
        cur = next;
    }
    let np1 = real(T::from_usize(n + 1).expect("small integer"));
    let dh = prev - np1 * inv * cur.clone();
    Ok(HankelValue { n, z: z.clone(), h: cur, dh })
}

/// `h_n(z) = (-i)^{n+1} e^{iz}/z R_n(i/(2z))`.
pub fn hankel_closed_form<T: Real>(n: usize, z: &Complex<T>) -> Result<Complex<T>> {
    if is_zero(z) {
        return Err(Error::ZeroArgument);
    }
    let prec = z.re.precision().max(z.im.precision());
    let i = i_unit::<T>(prec);
    let inv = cinv(z);
    let u = i.clone() * inv.clone() / real(T::from_f64_prec(2.0, prec));
    let r = rn_coefficients(n).eval(&u).value;
    Ok(minus_i_pow::<T>(n + 1, prec) * cexp(&(i * z.clone())) * inv * r)
}

/// Closed form of `h_n'(z)`:
/// `(-i)^{n+1} e^{iz}/z^2 [ (iz - 1) R_n(u) - u R_n'(u) ]` with `u = i/(2z)`.
pub fn hankel_closed_form_derivative<T: Real>(n: usize, z: &Complex<T>) -> Result<Complex<T>> {
    if is_zero(z) {
        return Err(Error::ZeroArgument);
    }
    let prec = z.re.precision().max(z.im.precision());
    let i = i_unit::<T>(prec);
    let inv = cinv(z);
    let u = i.clone() * inv.clone() / real(T::from_f64_prec(2.0, prec));
    let rn = rn_coefficients(n);
    let poly = rn.to_real::<T>(prec);
    let (r, dr) = poly.eval_with_derivative(&u);
    let one = real(T::from_f64_prec(1.0, prec));
    let bracket = (i.clone() * z.clone() - one) * r - u * dr;
    Ok(minus_i_pow::<T>(n + 1, prec) * cexp(&(i * z.clone())) * inv.clone() * inv * bracket)
}

/// Relative residual of the radial boundary equation
/// `(1 - i kappa mu) h_n(mu) + mu h_n'(mu) = 0`,
/// normalised by `|h_n| (1 + kappa |mu|) + |mu h_n'|`.
///
/// `kappa = gamma` gives the first mode family, `kappa = 1/gamma` the second.
pub fn boundary_residual<T: Real>(n: usize, kappa: &T, mu: &Complex<T>) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidMode(0));
    }
    if !(*kappa > T::zero()) {
        return Err(Error::InvalidCoupling(kappa.to_f64()));
    }
    if is_zero(mu) {
        return Err(Error::ZeroArgument);
    }
    if !(mu.im > T::zero()) {
        return Err(Error::InvalidParameter(format!("Im mu must be positive, got {}", mu.im)));
    }
    let prec = mu.re.precision().max(mu.im.precision());
    let hv = hankel_recurrence(n, mu)?;
    let i = i_unit::<T>(prec);
    let one = real(T::from_f64_prec(1.0, prec));
    let coupling = one - i * real(kappa.clone()) * mu.clone();
    let mu_dh = mu.clone() * hv.dh;
    let value = coupling * hv.h.clone() + mu_dh.clone();
    let scale = cabs(&hv.h) * (T::one() + kappa.clone() * cabs(mu)) + cabs(&mu_dh);
    if scale.is_zero() {
        return Ok(cabs(&value).to_f64());
    }
    Ok((cabs(&value) / scale).to_f64())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{complex, MpFloat};

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn low_orders_at_i() {
        let e1 = (-1.0f64).exp();
        let h0 = hankel_recurrence(0, &c(0.0, 1.0)).unwrap();
        assert!((h0.h - c(-e1, 0.0)).norm() < 1e-15);
        let h1 = hankel_recurrence(1, &c(0.0, 1.0)).unwrap();
        assert!((h1.h - c(0.0, 2.0 * e1)).norm() < 1e-15);
        assert!((h1.h.im - 0.735_758_882_342_884_6).abs() < 1e-15);
    }

    #[test]
    fn closed_form_examples() {
        let e1 = (-1.0f64).exp();
        assert!((hankel_closed_form(0, &c(0.0, 1.0)).unwrap() - c(-e1, 0.0)).norm() < 1e-15);
        let want = -(c(0.0, 1.0).exp() * c(1.0, 1.0));
        assert!((hankel_closed_form(1, &c(1.0, 0.0)).unwrap() - want).norm() < 1e-15);
        let want = c((-2.0f64).exp() * 13.0 / 8.0, 0.0);
        assert!((hankel_closed_form(2, &c(0.0, 2.0)).unwrap() - want).norm() < 1e-15);
    }

    #[test]
    fn zero_argument_rejected() {
        assert_eq!(hankel_recurrence::<f64>(3, &c(0.0, 0.0)).unwrap_err(), Error::ZeroArgument);
        assert_eq!(hankel_closed_form::<f64>(3, &c(0.0, 0.0)).unwrap_err(), Error::ZeroArgument);
        assert!(matches!(hankel_recurrence::<f64>(3, &c(1.0, -0.5)), Err(Error::LowerHalfPlane(_))));
    }

    #[test]
    fn derivative_closed_form_matches_recurrence() {
        for n in 0..12 {
            for z in [c(0.7, 0.3), c(-2.0, 1.5), c(5.0, 0.0)] {
                let rec = hankel_recurrence(n, &z).unwrap();
                let cf = hankel_closed_form_derivative(n, &z).unwrap();
                assert!((rec.dh - cf).norm() <= 1e-11 * cf.norm(), "n={n} z={z}");
            }
        }
    }

    #[test]
    fn small_arguments_use_closed_form() {
        let z = c(0.01, 0.02);
        let v = hankel_recurrence(4, &z).unwrap();
        assert_eq!(v.h, hankel_closed_form(4, &z).unwrap());
    }

    #[test]
    fn residual_at_first_mode_root() {
        let w0 = (1.0 + 5f64.sqrt()) / 4.0;
        let mu = complex::<MpFloat>(0.0, 1.0 / (2.0 * w0), 128);
        let r = boundary_residual(1, &MpFloat::new(2.0, 128), &mu).unwrap();
        assert!(r < 1e-10, "{r}");
    }

    #[test]
    fn residual_away_from_roots() {
        let r = boundary_residual(1, &2.0, &c(0.0, 1.0)).unwrap();
        assert!(r > 1e-2, "{r}");
        for mu in [c(0.0, 1.0), c(0.3, 0.8), c(-2.0, 0.1), c(4.0, 3.0)] {
            assert!(boundary_residual(1, &1.0, &mu).unwrap() > 0.0);
        }
        assert!(boundary_residual(1, &1.0, &c(1.0, 0.0)).is_err());
        assert_eq!(boundary_residual(0, &1.0, &c(0.0, 1.0)).unwrap_err(), Error::InvalidMode(0));
    }
}
