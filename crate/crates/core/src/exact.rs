//! Exact scalars and the coefficient-ring abstraction shared by series and polynomials.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type ExactInteger = BigInt;
pub type ExactRational = BigRational;
pub type ExactComplex = Complex<BigRational>;

/// Minimal commutative-ring interface needed by [`crate::egf::EgfSeries`].
///
/// Scaling by a rational is included because every coefficient ring used
/// here is a Q-algebra (binomial weights, the 1/2 in square roots).
pub trait Coefficient: Clone + PartialEq + std::fmt::Debug + Zero + One {
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn scaled(&self, factor: &ExactRational) -> Self;

    fn negated(&self) -> Self {
        Self::zero().minus(self)
    }
}

impl Coefficient for ExactRational {
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn scaled(&self, factor: &ExactRational) -> Self {
        self * factor
    }
}

impl Coefficient for ExactComplex {
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn scaled(&self, factor: &ExactRational) -> Self {
        Complex::new(&self.re * factor, &self.im * factor)
    }
}

pub fn rational(n: i64, d: i64) -> ExactRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn integer(n: i64) -> ExactRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn real_complex(r: ExactRational) -> ExactComplex {
    Complex::new(r, BigRational::zero())
}

/// Binomial coefficients C(n, 0..=n).
pub fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(n + 1);
    let mut c = BigInt::one();
    row.push(c.clone());
    for k in 1..=n {
        c = c * BigInt::from(n - k + 1) / BigInt::from(k);
        row.push(c.clone());
    }
    row
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Parses `p`, `p/q` or a finite decimal such as `-0.05` into an exact rational.
pub fn parse_rational(text: &str) -> Result<ExactRational> {
    let s = text.trim();
    let bad = || Error::InvalidNumber(text.to_string());
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| bad())?;
        let d: BigInt = den.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let (negative, int_digits) = match int_part.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, int_part.strip_prefix('+').unwrap_or(int_part)),
        };
        let all_digits = |t: &str| t.chars().all(|c| c.is_ascii_digit());
        if !all_digits(int_digits) || !all_digits(frac_part) || (int_digits.is_empty() && frac_part.is_empty()) {
            return Err(bad());
        }
        let digits = format!("{int_digits}{frac_part}");
        let n: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().map_err(|_| bad())? };
        let d = num_traits::pow(BigInt::from(10), frac_part.len());
        let r = BigRational::new(n, d);
        return Ok(if negative { -r } else { r });
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(n))
}

/// `p` for integers, `p/q` otherwise.
pub fn format_rational(r: &ExactRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn to_f64(r: &ExactRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Exact rational value of a finite double.
pub fn from_f64(v: f64) -> Result<ExactRational> {
    BigRational::from_float(v).ok_or_else(|| Error::InvalidNumber(v.to_string()))
}
