//! Hankel polynomials with exact integer coefficients.
//!
//! `R_n(w) = sum_{m=0}^{n} a_m w^m` with `a_m = (n+m)! / (m! (n-m)!)`. The
//! coefficients overflow every fixed-width integer type long before the mode
//! indices of interest (`a_30` is about `3e49`), so they are held as
//! [`BigInt`] and only rounded when a polynomial is evaluated.

use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{FromPrimitive, Num, One};

use crate::scalar::{cabs, Real};

/// Dense univariate polynomial, coefficients in ascending powers.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<C> {
    coeffs: Vec<C>,
}

impl<C: Clone + Num + FromPrimitive> Poly<C> {
    /// Builds a polynomial from ascending coefficients. An empty list is the
    /// zero polynomial `[0]`.
    pub fn new(coeffs: Vec<C>) -> Self {
        if coeffs.is_empty() {
            Poly { coeffs: vec![C::zero()] }
        } else {
            Poly { coeffs }
        }
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    /// Formal degree (length - 1); trailing zero coefficients are counted.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> &C {
        &self.coeffs[self.coeffs.len() - 1]
    }

    /// Formal derivative. Constants map to `[0]`.
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Poly { coeffs: vec![C::zero()] };
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(m, c)| c.clone() * C::from_usize(m).expect("index fits the coefficient type"))
            .collect();
        Poly { coeffs }
    }
}

/// Value of a polynomial at a point together with the magnitude scale
/// `sum |c_m| |w|^m`, the natural denominator for a backward-error residual.
#[derive(Clone, Debug)]
pub struct Evaluation<T> {
    pub value: Complex<T>,
    pub scale: T,
}

impl<T: Real> Evaluation<T> {
    /// `|p(w)| / sum |c_m| |w|^m`, or `|p(w)|` when the scale vanishes.
    pub fn relative_residual(&self) -> f64 {
        let v = cabs(&self.value).to_f64();
        let s = self.scale.to_f64();
        if s > 0.0 {
            v / s
        } else {
            v
        }
    }
}

impl<T: Real> Poly<T> {
    /// Horner evaluation at `w`, carried out at the precision of the inputs.
    pub fn eval(&self, w: &Complex<T>) -> Evaluation<T> {
        let aw = cabs(w);
        let mut iter = self.coeffs.iter().rev();
        let top = iter.next().expect("non-empty coefficient list");
        let mut value = Complex::new(top.clone(), T::zero());
        let mut scale = top.abs();
        for c in iter {
            value = value * w.clone() + Complex::new(c.clone(), T::zero());
            scale = scale * aw.clone() + c.abs();
        }
        Evaluation { value, scale }
    }

    /// Value and derivative at `w` in one Horner pass.
    pub fn eval_with_derivative(&self, w: &Complex<T>) -> (Complex<T>, Complex<T>) {
        let mut iter = self.coeffs.iter().rev();
        let top = iter.next().expect("non-empty coefficient list");
        let mut p = Complex::new(top.clone(), T::zero());
        let mut dp = Complex::new(T::zero(), T::zero());
        for c in iter {
            dp = dp * w.clone() + p.clone();
            p = p * w.clone() + Complex::new(c.clone(), T::zero());
        }
        (p, dp)
    }

    /// Evaluation at a real point.
    pub fn eval_real(&self, x: &T) -> T {
        let mut iter = self.coeffs.iter().rev();
        let mut acc = iter.next().expect("non-empty coefficient list").clone();
        for c in iter {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn with_precision(&self, prec: u32) -> Self {
        Poly { coeffs: self.coeffs.iter().map(|c| c.with_precision(prec)).collect() }
    }

    pub fn to_f64(&self) -> Poly<f64> {
        Poly { coeffs: self.coeffs.iter().map(|c| c.to_f64()).collect() }
    }
}

impl Poly<BigInt> {
    /// Rounds every coefficient to a `T` at `prec` bits.
    pub fn to_real<T: Real>(&self, prec: u32) -> Poly<T> {
        Poly { coeffs: self.coeffs.iter().map(|c| T::from_bigint(c, prec)).collect() }
    }
}

/// The Hankel polynomial `R_n` with exact coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RnPolynomial {
    n: usize,
    coeffs: Vec<BigInt>,
}

impl RnPolynomial {
    pub fn new(n: usize) -> Self {
        rn_coefficients(n)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn as_poly(&self) -> Poly<BigInt> {
        Poly::new(self.coeffs.clone())
    }

    /// `R_n'` with exact coefficients.
    pub fn derivative(&self) -> Poly<BigInt> {
        self.as_poly().derivative()
    }

    pub fn to_real<T: Real>(&self, prec: u32) -> Poly<T> {
        self.as_poly().to_real(prec)
    }

    /// Evaluates `R_n(w)` at the precision of `w`.
    pub fn eval<T: Real>(&self, w: &Complex<T>) -> Evaluation<T> {
        let prec = w.re.precision().max(w.im.precision());
        self.to_real::<T>(prec).eval(w)
    }
}

/// Exact coefficients of `R_n`, built with the integer ratio recurrence
/// `a_{m+1} (m+1) = a_m (n+m+1)(n-m)`, starting from `a_0 = 1`.
pub fn rn_coefficients(n: usize) -> RnPolynomial {
    let mut coeffs = Vec::with_capacity(n + 1);
    let mut a = BigInt::one();
    coeffs.push(a.clone());
    for m in 0..n {
        a = a * BigInt::from(n + m + 1) * BigInt::from(n - m);
        // exact: a_{m+1} is an integer
        a /= BigInt::from(m + 1);
        coeffs.push(a.clone());
    }
    RnPolynomial { n, coeffs }
}

/// Formal derivative for any coefficient ring; see [`Poly::derivative`].
pub fn derivative<C: Clone + Num + FromPrimitive>(p: &Poly<C>) -> Poly<C> {
    p.derivative()
}

/// Evaluates a real polynomial at `w`; see [`Poly::eval`].
pub fn eval<T: Real>(p: &Poly<T>, w: &Complex<T>) -> Evaluation<T> {
    p.eval(w)
}

/// Default working precision for mode indices up to `n_max`: 128 bits up to
/// `n = 20`, 256 up to `n = 40`, then enough to cover `log2((2n)!/n!)` with
/// headroom.
pub fn default_precision(n_max: usize) -> u32 {
    if n_max <= 20 {
        128
    } else if n_max <= 40 {
        256
    } else {
        let top = rn_coefficients(n_max).coeffs[n_max].bits() as u32;
        (2 * top + 128).div_ceil(64) * 64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{complex, MpFloat};
    use num_traits::Zero;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn factorial(k: usize) -> BigInt {
        (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
    }

    #[test]
    fn small_coefficients() {
        assert_eq!(rn_coefficients(0).coeffs(), big(&[1]).as_slice());
        assert_eq!(rn_coefficients(1).coeffs(), big(&[1, 2]).as_slice());
        assert_eq!(rn_coefficients(2).coeffs(), big(&[1, 6, 12]).as_slice());
        assert_eq!(rn_coefficients(3).coeffs(), big(&[1, 12, 60, 120]).as_slice());
    }

    #[test]
    fn coefficients_match_factorial_formula() {
        for n in 0..=30 {
            let r = rn_coefficients(n);
            assert_eq!(r.coeffs().len(), n + 1);
            for (m, a) in r.coeffs().iter().enumerate() {
                let direct = factorial(n + m) / (factorial(m) * factorial(n - m));
                assert_eq!(*a, direct, "n={n} m={m}");
            }
            assert_eq!(r.coeffs()[n], factorial(2 * n) / factorial(n));
        }
    }

    #[test]
    fn ratio_identity_holds_exactly() {
        for n in 0..=60 {
            let r = rn_coefficients(n);
            let a = r.coeffs();
            assert_eq!(a[0], BigInt::one());
            for m in 0..n {
                assert!(a[m] > BigInt::zero());
                let lhs = &a[m + 1] * BigInt::from(m + 1);
                let rhs = &a[m] * BigInt::from(n + m + 1) * BigInt::from(n - m);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(Poly::new(big(&[1, 2])).derivative().coeffs(), big(&[2]).as_slice());
        assert_eq!(Poly::new(big(&[1, 6, 12])).derivative().coeffs(), big(&[6, 24]).as_slice());
        assert_eq!(Poly::new(big(&[5])).derivative().coeffs(), big(&[0]).as_slice());
        let p = Poly::new(vec![0.5f64, -1.0, 2.0]);
        assert_eq!(derivative(&p).coeffs(), &[-1.0, 4.0]);
    }

    #[test]
    fn evaluation_examples() {
        let r1 = rn_coefficients(1);
        let e = r1.eval(&complex::<MpFloat>(-0.5, 0.0, 128));
        assert!(e.value.re.is_zero() && e.value.im.is_zero());
        assert_eq!(e.scale.to_f64(), 2.0);

        let r2 = rn_coefficients(2);
        assert_eq!(r2.eval(&complex::<f64>(0.0, 0.0, 53)).value.re, 1.0);
        assert_eq!(r2.eval(&complex::<MpFloat>(1.0, 0.0, 128)).value.re.to_f64(), 19.0);
    }

    #[test]
    fn derivative_pass_matches_formal_derivative() {
        let r = rn_coefficients(7).to_real::<f64>(53);
        let d = r.derivative();
        let w = Complex::new(0.3, -0.2);
        let (_, dp) = r.eval_with_derivative(&w);
        let direct = d.eval(&w).value;
        assert!((dp - direct).norm() < 1e-10 * direct.norm());
    }

    #[test]
    fn default_precision_tiers() {
        assert_eq!(default_precision(10), 128);
        assert_eq!(default_precision(40), 256);
        assert!(default_precision(60) >= 256);
    }
}
