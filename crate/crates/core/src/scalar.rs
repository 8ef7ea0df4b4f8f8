//! Scalar abstraction shared by every numerical routine in the crate.
//!
//! Algorithms are written once against [`Real`] and instantiated either with
//! hardware floats (`f64`, `f32`) or with [`MpFloat`], a binary floating-point
//! number with a per-value working precision. Complex values are plain
//! [`num_complex::Complex`] over a `Real`; the handful of transcendental
//! complex operations the crate needs live here as free functions because
//! `num_complex` only provides them for `num_traits::Float` (which requires
//! `Copy`).

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

/// Precision (in bits) attached to small exact constants such as `0`, `1`, or
/// integers produced through [`FromPrimitive`].
pub const EXACT_BITS: u32 = 64;

/// Real scalar used by the generic numerical code.
///
/// Precision is explicit: constructors take the number of mantissa bits, and
/// binary operations on [`MpFloat`] produce a result at the larger of the two
/// operand precisions. Hardware floats ignore the requested precision.
pub trait Real:
    Clone + fmt::Debug + fmt::Display + PartialOrd + Send + Sync + Num + Neg<Output = Self> + FromPrimitive
{
    /// Mantissa bits carried by this value.
    fn precision(&self) -> u32;
    fn from_f64_prec(x: f64, prec: u32) -> Self;
    fn from_bigint(x: &BigInt, prec: u32) -> Self;
    fn to_f64(&self) -> f64;
    /// Re-rounds (or widens) the value to `prec` bits.
    fn with_precision(&self, prec: u32) -> Self;

    fn abs(&self) -> Self;
    fn sqrt(&self) -> Self;
    fn exp(&self) -> Self;
    fn ln(&self) -> Self;
    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    /// Four-quadrant arctangent of `self / x`, in `(-pi, pi]`.
    fn atan2(&self, x: &Self) -> Self;
    fn pi(prec: u32) -> Self;
    fn is_finite(&self) -> bool;

    /// `self^e` for `self > 0`.
    /// `self^e` for `self >= 0`; `0^e = 0` for `e > 0`.
    fn powf(&self, e: &Self) -> Self {
        if self.is_zero() && *e > Self::zero() {
            return self.clone();
        }
        (self.ln() * e.clone()).exp()
    }

    /// Unit roundoff scale `2^(1 - prec)` at the given precision.
    fn epsilon(prec: u32) -> Self {
        let mut out = Self::from_f64_prec(1.0, prec);
        let mut remaining = prec.max(24) as i32 - 1;
        while remaining > 0 {
            let step = remaining.min(1000);
            out = out * Self::from_f64_prec(0.5f64.powi(step), prec);
            remaining -= step;
        }
        out
    }

    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    fn min_of(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }
}

macro_rules! impl_real_prim {
    ($t:ty, $bits:expr, $consts:path) => {
        impl Real for $t {
            fn precision(&self) -> u32 {
                $bits
            }
            fn from_f64_prec(x: f64, _prec: u32) -> Self {
                x as $t
            }
            fn from_bigint(x: &BigInt, _prec: u32) -> Self {
                x.to_f64().unwrap_or(f64::NAN) as $t
            }
            fn to_f64(&self) -> f64 {
                *self as f64
            }
            fn with_precision(&self, _prec: u32) -> Self {
                *self
            }
            fn abs(&self) -> Self {
                <$t>::abs(*self)
            }
            fn sqrt(&self) -> Self {
                <$t>::sqrt(*self)
            }
            fn exp(&self) -> Self {
                <$t>::exp(*self)
            }
            fn ln(&self) -> Self {
                <$t>::ln(*self)
            }
            fn sin(&self) -> Self {
                <$t>::sin(*self)
            }
            fn cos(&self) -> Self {
                <$t>::cos(*self)
            }
            fn atan2(&self, x: &Self) -> Self {
                <$t>::atan2(*self, *x)
            }
            fn pi(_prec: u32) -> Self {
                $consts
            }
            fn is_finite(&self) -> bool {
                <$t>::is_finite(*self)
            }
            fn powf(&self, e: &Self) -> Self {
                <$t>::powf(*self, *e)
            }
            fn epsilon(_prec: u32) -> Self {
                <$t>::EPSILON
            }
        }
    };
}

impl_real_prim!(f64, 53, std::f64::consts::PI);
impl_real_prim!(f32, 24, std::f32::consts::PI);

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constant cache"));
}

fn with_consts<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// Arbitrary-precision binary float.
///
/// Wraps [`astro_float::BigFloat`] together with its working precision so the
/// value can participate in `num_traits` arithmetic, where operators carry no
/// precision argument.
#[derive(Clone)]
pub struct MpFloat {
    v: BigFloat,
    prec: u32,
}

impl MpFloat {
    pub fn new(x: f64, prec: u32) -> Self {
        Self::from_f64_prec(x, prec)
    }

    pub fn inner(&self) -> &BigFloat {
        &self.v
    }

    fn wrap(v: BigFloat, prec: u32) -> Self {
        MpFloat { v, prec }
    }

    fn bits(&self) -> usize {
        self.prec as usize
    }

    /// Decimal rendering with `digits` significant digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        if self.v.is_zero() {
            return "0".to_string();
        }
        let bits = ((digits as f64) * std::f64::consts::LOG2_10).ceil() as usize + 8;
        let rounded = self.v.clone().add(&BigFloat::from_word(0, 64), bits, RM);
        match with_consts(|cc| rounded.format(Radix::Dec, RM, cc)) {
            Ok(s) => s,
            Err(_) => format!("{}", self.to_f64()),
        }
    }
}

impl fmt::Debug for MpFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MpFloat({}, {} bits)", self.v, self.prec)
    }
}

impl fmt::Display for MpFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl PartialEq for MpFloat {
    fn eq(&self, other: &Self) -> bool {
        self.v == other.v
    }
}

impl PartialOrd for MpFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.v.partial_cmp(&other.v)
    }
}

macro_rules! mp_binop {
    ($tr:ident, $method:ident, $call:ident) => {
        impl $tr for MpFloat {
            type Output = MpFloat;
            fn $method(self, rhs: MpFloat) -> MpFloat {
                let p = self.prec.max(rhs.prec);
                MpFloat::wrap(self.v.$call(&rhs.v, p as usize, RM), p)
            }
        }
        impl<'a> $tr<&'a MpFloat> for &'a MpFloat {
            type Output = MpFloat;
            fn $method(self, rhs: &'a MpFloat) -> MpFloat {
                let p = self.prec.max(rhs.prec);
                MpFloat::wrap(self.v.$call(&rhs.v, p as usize, RM), p)
            }
        }
    };
}

mp_binop!(Add, add, add);
mp_binop!(Sub, sub, sub);
mp_binop!(Mul, mul, mul);
mp_binop!(Div, div, div);

impl Rem for MpFloat {
    type Output = MpFloat;
    fn rem(self, rhs: MpFloat) -> MpFloat {
        let p = self.prec.max(rhs.prec);
        MpFloat::wrap(self.v.rem(&rhs.v), p)
    }
}

impl Neg for MpFloat {
    type Output = MpFloat;
    fn neg(self) -> MpFloat {
        MpFloat::wrap(self.v.neg(), self.prec)
    }
}

impl Zero for MpFloat {
    fn zero() -> Self {
        MpFloat::wrap(BigFloat::from_word(0, EXACT_BITS as usize), EXACT_BITS)
    }
    fn is_zero(&self) -> bool {
        self.v.is_zero()
    }
}

impl One for MpFloat {
    fn one() -> Self {
        MpFloat::wrap(BigFloat::from_word(1, EXACT_BITS as usize), EXACT_BITS)
    }
}

impl Num for MpFloat {
    type FromStrRadixErr = &'static str;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        let radix = match radix {
            2 => Radix::Bin,
            8 => Radix::Oct,
            10 => Radix::Dec,
            16 => Radix::Hex,
            _ => return Err("unsupported radix"),
        };
        let prec = 128;
        let v = with_consts(|cc| BigFloat::parse(s, radix, prec, RM, cc));
        if v.is_nan() {
            Err("invalid number")
        } else {
            Ok(MpFloat::wrap(v, prec as u32))
        }
    }
}

impl FromPrimitive for MpFloat {
    fn from_i64(n: i64) -> Option<Self> {
        Some(MpFloat::from_bigint(&BigInt::from(n), EXACT_BITS))
    }
    fn from_u64(n: u64) -> Option<Self> {
        Some(MpFloat::from_bigint(&BigInt::from(n), EXACT_BITS))
    }
    fn from_f64(n: f64) -> Option<Self> {
        Some(MpFloat::from_f64_prec(n, EXACT_BITS))
    }
}

impl Real for MpFloat {
    fn precision(&self) -> u32 {
        self.prec
    }

    fn from_f64_prec(x: f64, prec: u32) -> Self {
        let prec = prec.max(EXACT_BITS);
        MpFloat::wrap(BigFloat::from_f64(x, prec as usize), prec)
    }

    fn from_bigint(x: &BigInt, prec: u32) -> Self {
        let prec = prec.max(EXACT_BITS);
        let bits = x.bits();
        if bits == 0 {
            return MpFloat::wrap(BigFloat::from_word(0, prec as usize), prec);
        }
        // normalise so the top word carries the most significant bit
        let words = bits.div_ceil(64);
        let shifted = x.abs() << (words * 64 - bits);
        let (_, digits) = shifted.to_u64_digits();
        let sign = if x.is_negative() { Sign::Neg } else { Sign::Pos };
        let mut v = BigFloat::from_words(&digits, sign, bits as i32);
        if v.set_precision(prec as usize, RM).is_err() {
            v = BigFloat::nan(None);
        }
        MpFloat::wrap(v, prec)
    }

    fn to_f64(&self) -> f64 {
        if self.v.is_nan() {
            return f64::NAN;
        }
        if self.v.is_inf_pos() {
            return f64::INFINITY;
        }
        if self.v.is_inf_neg() {
            return f64::NEG_INFINITY;
        }
        let Some((m, _, s, e, _)) = self.v.as_raw_parts() else {
            return f64::NAN;
        };
        if m.is_empty() || m.iter().all(|w| *w == 0) {
            return 0.0;
        }
        let top = m[m.len() - 1] as f64;
        let next = if m.len() > 1 { m[m.len() - 2] as f64 } else { 0.0 };
        let frac = (top + next * 2f64.powi(-64)) * 2f64.powi(-64);
        let mag = if e > 1000 {
            f64::INFINITY
        } else if e < -1100 {
            0.0
        } else {
            frac * 2f64.powi(e)
        };
        if s == Sign::Neg {
            -mag
        } else {
            mag
        }
    }

    fn with_precision(&self, prec: u32) -> Self {
        let prec = prec.max(EXACT_BITS);
        let mut v = self.v.clone();
        if v.set_precision(prec as usize, RM).is_err() {
            v = BigFloat::nan(None);
        }
        MpFloat::wrap(v, prec)
    }

    fn abs(&self) -> Self {
        MpFloat::wrap(self.v.abs(), self.prec)
    }

    fn sqrt(&self) -> Self {
        MpFloat::wrap(self.v.sqrt(self.bits(), RM), self.prec)
    }

    fn exp(&self) -> Self {
        let p = self.bits();
        MpFloat::wrap(with_consts(|cc| self.v.exp(p, RM, cc)), self.prec)
    }

    fn ln(&self) -> Self {
        let p = self.bits();
        MpFloat::wrap(with_consts(|cc| self.v.ln(p, RM, cc)), self.prec)
    }

    fn sin(&self) -> Self {
        let p = self.bits();
        MpFloat::wrap(with_consts(|cc| self.v.sin(p, RM, cc)), self.prec)
    }

    fn cos(&self) -> Self {
        let p = self.bits();
        MpFloat::wrap(with_consts(|cc| self.v.cos(p, RM, cc)), self.prec)
    }

    fn atan2(&self, x: &Self) -> Self {
        let prec = self.prec.max(x.prec);
        let p = prec as usize;
        let y = self;
        let zero = MpFloat::zero();
        let pi = MpFloat::pi(prec);
        if x.v.is_zero() {
            return if y.v.is_zero() {
                zero
            } else if *y > zero {
                MpFloat::wrap(pi.v.div(&BigFloat::from_word(2, 64), p, RM), prec)
            } else {
                MpFloat::wrap(pi.v.div(&BigFloat::from_word(2, 64), p, RM).neg(), prec)
            };
        }
        let ratio = y.v.div(&x.v, p, RM);
        let base = MpFloat::wrap(with_consts(|cc| ratio.atan(p, RM, cc)), prec);
        if *x > zero {
            base
        } else if *y < zero {
            base - pi
        } else {
            base + pi
        }
    }

    fn pi(prec: u32) -> Self {
        let prec = prec.max(EXACT_BITS);
        MpFloat::wrap(with_consts(|cc| cc.pi(prec as usize, RM)), prec)
    }

    fn is_finite(&self) -> bool {
        !(self.v.is_nan() || self.v.is_inf())
    }

    fn epsilon(prec: u32) -> Self {
        let prec = prec.max(EXACT_BITS);
        let one = BigFloat::from_word(1, prec as usize);
        let mut v = one;
        v.set_exponent(2 - prec as i32);
        MpFloat::wrap(v, prec)
    }
}

/// Complex number from two `f64` parts at the given precision.
pub fn complex<T: Real>(re: f64, im: f64, prec: u32) -> Complex<T> {
    Complex::new(T::from_f64_prec(re, prec), T::from_f64_prec(im, prec))
}

pub fn complex_to_f64<T: Real>(z: &Complex<T>) -> Complex<f64> {
    Complex::new(z.re.to_f64(), z.im.to_f64())
}

pub fn complex_with_precision<T: Real>(z: &Complex<T>, prec: u32) -> Complex<T> {
    Complex::new(z.re.with_precision(prec), z.im.with_precision(prec))
}

/// Modulus `|z|`, scaled to avoid overflow in the squared components.
pub fn cabs<T: Real>(z: &Complex<T>) -> T {
    let a = z.re.abs();
    let b = z.im.abs();
    let (big, small) = if a >= b { (a, b) } else { (b, a) };
    if big.is_zero() {
        return big;
    }
    let r = small / big.clone();
    big * (T::one() + r.clone() * r).sqrt()
}

/// Principal argument in `(-pi, pi]`.
pub fn carg<T: Real>(z: &Complex<T>) -> T {
    z.im.atan2(&z.re)
}

/// `e^z`.
pub fn cexp<T: Real>(z: &Complex<T>) -> Complex<T> {
    let m = z.re.exp();
    Complex::new(m.clone() * z.im.cos(), m * z.im.sin())
}

/// Principal square root. A zero imaginary part (of either sign) is treated as
/// `+0`, so negative reals map to the positive imaginary axis.
pub fn csqrt<T: Real>(z: &Complex<T>) -> Complex<T> {
    let zero = T::zero();
    if z.re.is_zero() && z.im.is_zero() {
        return Complex::new(zero.clone(), zero);
    }
    let two = T::from_f64_prec(2.0, z.re.precision());
    let r = cabs(z);
    // the larger component comes from the cancellation-free sum; the other
    // follows from Im z = 2 re im
    if z.re >= zero {
        let re = ((r + z.re.clone()) / two.clone()).sqrt();
        let im = z.im.clone() / (two * re.clone());
        Complex::new(re, im)
    } else {
        let im_mag = ((r - z.re.clone()) / two.clone()).sqrt();
        let re = z.im.clone().abs() / (two * im_mag.clone());
        let im = if z.im < zero { -im_mag } else { im_mag };
        Complex::new(re, im)
    }
}

/// Multiplicative inverse `1/z`.
pub fn cinv<T: Real>(z: &Complex<T>) -> Complex<T> {
    let d = z.norm_sqr();
    Complex::new(z.re.clone() / d.clone(), -z.im.clone() / d)
}

/// Multiplies by a real scalar.
pub fn cscale<T: Real>(z: &Complex<T>, s: &T) -> Complex<T> {
    Complex::new(z.re.clone() * s.clone(), z.im.clone() * s.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bigint_round_trips_through_mp() {
        let x: BigInt = "-123456789012345678901234567890123".parse().unwrap();
        let y = MpFloat::from_bigint(&x, 256);
        assert_eq!(y.to_decimal(40), "-1.23456789012345678901234567890123e+32");
        assert_eq!(MpFloat::from_bigint(&BigInt::from(0), 128).to_f64(), 0.0);
        assert_eq!(MpFloat::from_bigint(&BigInt::from(12), 128).to_f64(), 12.0);
    }

    #[test]
    fn to_f64_matches_source() {
        for x in [1.0, -3.25, 1e-300, 6.02e23, std::f64::consts::PI] {
            assert_eq!(MpFloat::new(x, 128).to_f64(), x);
        }
        assert_eq!(MpFloat::zero().to_f64(), 0.0);
    }

    #[test]
    fn arithmetic_takes_larger_precision() {
        let a = MpFloat::new(1.0, 256);
        let b = MpFloat::new(3.0, 128);
        let c = a / b;
        assert_eq!(c.precision(), 256);
        assert!((c.to_f64() - 1.0 / 3.0).abs() < 1e-16);
    }

    #[test]
    fn transcendentals_agree_with_f64() {
        let x = MpFloat::new(0.7, 192);
        assert!((x.exp().to_f64() - 0.7f64.exp()).abs() < 1e-15);
        assert!((x.sin().to_f64() - 0.7f64.sin()).abs() < 1e-15);
        assert!((x.cos().to_f64() - 0.7f64.cos()).abs() < 1e-15);
        assert!((x.ln().to_f64() - 0.7f64.ln()).abs() < 1e-15);
        for (y, xx) in [(1.0, -1.0), (-1.0, -1.0), (0.5, 2.0), (-2.0, 0.3), (1.0, 0.0), (0.0, -1.0)] {
            let got = MpFloat::new(y, 128).atan2(&MpFloat::new(xx, 128)).to_f64();
            assert!((got - f64::atan2(y, xx)).abs() < 1e-15, "atan2({y},{xx})");
        }
    }

    #[test]
    fn epsilon_is_a_power_of_two() {
        let e = MpFloat::epsilon(128);
        assert_eq!(e.to_f64(), 2f64.powi(-127));
        assert_eq!(<f64 as Real>::epsilon(53), f64::EPSILON);
    }

    #[test]
    fn csqrt_branch_for_negative_reals() {
        let z: Complex<f64> = Complex::new(-4.0, -0.0);
        let r = csqrt(&z);
        assert_eq!(r, Complex::new(0.0, 2.0));
        let i: Complex<f64> = Complex::new(0.0, 1.0);
        let r = csqrt(&i);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((r - Complex::new(s, s)).norm() < 1e-15);
    }
}
