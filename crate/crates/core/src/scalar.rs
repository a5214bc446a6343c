//! Scalar abstraction shared by every computation in the crate.
//!
//! Finite hypergroups coming out of group theory and the `H_p` family have
//! rational structure constants, so the same code runs either over exact
//! rationals ([`Rational`]) or over IEEE floats. Exact scalars ignore every
//! tolerance: a residual passes only when it is exactly zero.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Num, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational number.
pub type Rational = BigRational;

/// Field of scalars a hypergroup can be defined over.
pub trait Scalar:
    Num + Signed + Clone + PartialOrd + Debug + Display + Send + Sync + 'static
{
    /// `true` when arithmetic is exact and comparisons ignore tolerances.
    const EXACT: bool;

    /// Absolute tolerance for the hypergroup axiom checks.
    fn axiom_tolerance() -> f64;

    fn to_f64(&self) -> f64;

    /// Converts a float into this scalar type. Exact types run a bounded
    /// continued-fraction reconstruction and return `None` when no small
    /// denominator reproduces `x`.
    fn from_f64(x: f64) -> Option<Self>;

    /// `num / den`; `den` must be nonzero.
    fn from_ratio(num: i64, den: i64) -> Self;

    /// Square root, or `None` when it is not representable (negative input,
    /// or an irrational root for exact types).
    fn sqrt(&self) -> Option<Self>;

    /// Parses `"a/b"`, an integer, or a decimal such as `"-0.25"` / `"1e-3"`.
    fn parse_literal(s: &str) -> Option<Self>;

    /// Text rendering; `precision` is the number of fractional digits for
    /// floats and is ignored by exact types.
    fn render(&self, precision: usize) -> String;

    /// Whether `self` counts as zero at tolerance `tol`.
    fn within(&self, tol: f64) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            self.to_f64().abs() <= tol
        }
    }

    /// Whether `self` is strictly below `-tol` (exact: strictly negative).
    fn below(&self, tol: f64) -> bool {
        if Self::EXACT {
            self.is_negative()
        } else {
            self.to_f64() < -tol
        }
    }

    /// Whether `self` is strictly above `tol` (exact: strictly positive).
    fn above(&self, tol: f64) -> bool {
        if Self::EXACT {
            self.is_positive()
        } else {
            self.to_f64() > tol
        }
    }
}

macro_rules! float_scalar {
    ($t:ty, $tol:expr) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn axiom_tolerance() -> f64 {
                $tol
            }

            fn to_f64(&self) -> f64 {
                *self as f64
            }

            fn from_f64(x: f64) -> Option<Self> {
                x.is_finite().then_some(x as $t)
            }

            fn from_ratio(num: i64, den: i64) -> Self {
                (num as f64 / den as f64) as $t
            }

            fn sqrt(&self) -> Option<Self> {
                (*self >= 0.0).then(|| <$t>::sqrt(*self))
            }

            fn parse_literal(s: &str) -> Option<Self> {
                let s = s.trim();
                match s.split_once('/') {
                    Some((n, d)) => {
                        let n: f64 = n.trim().parse().ok()?;
                        let d: f64 = d.trim().parse().ok()?;
                        (d != 0.0).then_some((n / d) as $t)
                    }
                    None => s.parse::<$t>().ok().filter(|v| v.is_finite()),
                }
            }

            fn render(&self, precision: usize) -> String {
                render_float(*self as f64, precision)
            }
        }
    };
}

float_scalar!(f64, 1e-10);
float_scalar!(f32, 1e-5);

pub(crate) fn render_float(x: f64, precision: usize) -> String {
    let s = format!("{:.*}", precision, x);
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn axiom_tolerance() -> f64 {
        0.0
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn from_f64(x: f64) -> Option<Self> {
        let (n, d) = rationalize(x, 1_000_000, 1e-11)?;
        Some(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        (&n * &n == *self.numer() && &d * &d == *self.denom()).then(|| BigRational::new(n, d))
    }

    fn parse_literal(s: &str) -> Option<Self> {
        parse_rational(s)
    }

    fn render(&self, _precision: usize) -> String {
        self.to_string()
    }
}

/// Best rational approximation of `x` with denominator at most `max_den`
/// whose error is within `tol * max(1, |x|)`.
pub fn rationalize(x: f64, max_den: i64, tol: f64) -> Option<(i64, i64)> {
    if !x.is_finite() {
        return None;
    }
    let bound = tol * x.abs().max(1.0);
    let (mut h_prev, mut h) = (0i128, 1i128);
    let (mut k_prev, mut k) = (1i128, 0i128);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        if a.abs() > 1e15 {
            return None;
        }
        let a = a as i128;
        let h_next = a * h + h_prev;
        let k_next = a * k + k_prev;
        if k_next > max_den as i128 {
            return None;
        }
        if (h_next as f64 / k_next as f64 - x).abs() <= bound {
            return Some((h_next as i64, k_next as i64));
        }
        h_prev = h;
        h = h_next;
        k_prev = k;
        k = k_next;
        let frac = r - r.floor();
        if frac == 0.0 {
            return None;
        }
        r = 1.0 / frac;
    }
    None
}

fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n = parse_decimal(n.trim())?;
        let d = parse_decimal(d.trim())?;
        return (!d.is_zero()).then(|| n / d);
    }
    parse_decimal(s)
}

/// Exact decimal parsing: `[-+]digits[.digits][e[-+]digits]`.
fn parse_decimal(s: &str) -> Option<Rational> {
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, mantissa) = match mantissa.as_bytes().first()? {
        b'-' => (true, &mantissa[1..]),
        b'+' => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().ok()? };
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut value = BigRational::from_integer(numer);
    if scale >= 0 {
        value *= BigRational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= BigRational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Some(if negative { -value } else { value })
}

/// Complex helpers used across modules.
pub(crate) fn c_real<S: Scalar>(re: S) -> Complex<S> {
    Complex::new(re, S::zero())
}

pub(crate) fn c_one<S: Scalar>() -> Complex<S> {
    Complex::new(S::one(), S::zero())
}

pub(crate) fn c_zero<S: Scalar>() -> Complex<S> {
    Complex::new(S::zero(), S::zero())
}

/// Modulus as a float, for residual reporting.
pub(crate) fn c_abs_f64<S: Scalar>(z: &Complex<S>) -> f64 {
    z.re.to_f64().hypot(z.im.to_f64())
}

/// Whether a complex value is zero at tolerance `tol`.
pub(crate) fn c_within<S: Scalar>(z: &Complex<S>, tol: f64) -> bool {
    if S::EXACT {
        z.re.is_zero() && z.im.is_zero()
    } else {
        c_abs_f64(z) <= tol
    }
}

/// Exact modulus when representable.
pub(crate) fn c_modulus<S: Scalar>(z: &Complex<S>) -> Option<S> {
    if z.im.is_zero() {
        Some(z.re.abs())
    } else if z.re.is_zero() {
        Some(z.im.abs())
    } else {
        z.norm_sqr().sqrt()
    }
}

pub(crate) fn to_c64<S: Scalar>(z: &Complex<S>) -> Complex<f64> {
    Complex::new(z.re.to_f64(), z.im.to_f64())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_exact_literals() {
        assert_eq!(Rational::parse_literal("3/2"), Some(Rational::from_ratio(3, 2)));
        assert_eq!(Rational::parse_literal("-0.25"), Some(Rational::from_ratio(-1, 4)));
        assert_eq!(Rational::parse_literal("1e-3"), Some(Rational::from_ratio(1, 1000)));
        assert_eq!(Rational::parse_literal("2.5e1"), Some(Rational::from_ratio(25, 1)));
        assert_eq!(Rational::parse_literal("7"), Some(Rational::from_ratio(7, 1)));
        assert_eq!(Rational::parse_literal("1/0"), None);
        assert_eq!(Rational::parse_literal("abc"), None);
        assert_eq!(Rational::parse_literal("."), None);
        assert_eq!(f64::parse_literal("36/17"), Some(36.0 / 17.0));
    }

    #[test]
    fn rational_reconstruction() {
        assert_eq!(rationalize(36.0 / 17.0, 1_000_000, 1e-11), Some((36, 17)));
        assert_eq!(rationalize(-0.35, 1_000_000, 1e-11), Some((-7, 20)));
        assert_eq!(rationalize(0.0, 1_000_000, 1e-11), Some((0, 1)));
        assert_eq!(rationalize(std::f64::consts::PI, 1000, 1e-11), None);
    }

    #[test]
    fn exact_sqrt() {
        assert_eq!(Rational::from_ratio(9, 4).sqrt(), Some(Rational::from_ratio(3, 2)));
        assert_eq!(Rational::from_ratio(2, 1).sqrt(), None);
        assert_eq!(Rational::from_ratio(-1, 1).sqrt(), None);
    }

    #[test]
    fn renders_without_negative_zero() {
        assert_eq!((-1e-20f64).render(3), "0.000");
        assert_eq!(0.5f64.render(2), "0.50");
        assert_eq!(Rational::from_ratio(17, 9).render(12), "17/9");
    }

    #[test]
    fn exact_within_ignores_tolerance() {
        let tiny = Rational::from_ratio(1, 1_000_000_000);
        assert!(!tiny.within(1.0));
        assert!(1e-12f64.within(1e-10));
    }
}
