//! Exact scalars: arbitrary-precision rationals and complex rationals.
//!
//! Rationals are serialized as `"p/q"` strings (or `"p"` when the denominator
//! is one) so that JSON reports never lose exactness.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number.
pub type Rational = BigRational;

/// Exact complex number with rational real and imaginary parts.
pub type ComplexScalar = Complex<BigRational>;

pub fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn cx(re: Rational, im: Rational) -> ComplexScalar {
    Complex::new(re, im)
}

pub fn cx_int(re: i64, im: i64) -> ComplexScalar {
    Complex::new(rat(re), rat(im))
}

pub fn cx_real(re: Rational) -> ComplexScalar {
    Complex::new(re, Rational::zero())
}

pub fn cx_zero() -> ComplexScalar {
    Complex::new(Rational::zero(), Rational::zero())
}

pub fn cx_one() -> ComplexScalar {
    Complex::new(Rational::one(), Rational::zero())
}

pub fn cx_i() -> ComplexScalar {
    Complex::new(Rational::zero(), Rational::one())
}

pub fn is_zero(z: &ComplexScalar) -> bool {
    z.re.is_zero() && z.im.is_zero()
}

pub fn is_real(z: &ComplexScalar) -> bool {
    z.im.is_zero()
}

/// `|z|^2`, exact.
pub fn norm_sqr(z: &ComplexScalar) -> Rational {
    &z.re * &z.re + &z.im * &z.im
}

pub fn factorial(n: usize) -> Rational {
    (1..=n as i64).fold(Rational::one(), |acc, k| acc * rat(k))
}

/// Parse `"p"`, `"-p"`, `"p/q"` or a terminating decimal such as `"0.25"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(p, q));
    }
    if let Some((int, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.starts_with('-');
        let int_part: BigInt = if int.is_empty() || int == "-" || int == "+" {
            BigInt::zero()
        } else {
            int.parse().map_err(|_| bad())?
        };
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let frac_part: BigInt = frac.parse().map_err(|_| bad())?;
        let mag = int_part.abs() * &scale + frac_part;
        let num = if negative { -mag } else { mag };
        return Ok(BigRational::new(num, scale));
    }
    let p: BigInt = t.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(p))
}

pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn format_complex(z: &ComplexScalar) -> [String; 2] {
    [format_rational(&z.re), format_rational(&z.im)]
}

pub fn rational_to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

/// Exact square root of a non-negative rational, if it is a perfect square.
pub fn exact_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}
