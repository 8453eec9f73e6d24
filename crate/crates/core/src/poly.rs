//! Polynomial coefficient types: [`YPolynomial`] in one variable `y` and
//! [`ZPolynomial`] in the pair (conj(z), z).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use num_complex::{Complex, Complex64};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{format_rational, real_complex, to_f64, Coefficient, ExactComplex, ExactRational};

/// Dense polynomial in `y` with exact rational coefficients, ascending powers.
#[derive(Clone, PartialEq, Eq, Debug, Default, Hash)]
pub struct YPolynomial {
    coeffs: Vec<ExactRational>,
}

impl YPolynomial {
    pub fn new(mut coeffs: Vec<ExactRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        YPolynomial { coeffs }
    }

    pub fn constant(c: ExactRational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `y`.
    pub fn y() -> Self {
        Self::new(vec![ExactRational::zero(), ExactRational::one()])
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| crate::exact::integer(c)).collect())
    }

    pub fn coeffs(&self) -> &[ExactRational] {
        &self.coeffs
    }

    pub fn coeff(&self, power: usize) -> ExactRational {
        self.coeffs.get(power).cloned().unwrap_or_else(ExactRational::zero)
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, y: &ExactRational) -> ExactRational {
        self.coeffs
            .iter()
            .rev()
            .fold(ExactRational::zero(), |acc, c| acc * y + c)
    }

    pub fn eval_f64(&self, y: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * y + to_f64(c))
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }
}

impl Zero for YPolynomial {
    fn zero() -> Self {
        YPolynomial { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for YPolynomial {
    fn one() -> Self {
        Self::constant(ExactRational::one())
    }
}

impl Add for YPolynomial {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.plus(&rhs)
    }
}

impl Mul for YPolynomial {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.times(&rhs)
    }
}

impl Coefficient for YPolynomial {
    fn plus(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..len).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }
    fn minus(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..len).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }
    fn times(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::zero();
        }
        let mut out = vec![ExactRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }
    fn scaled(&self, factor: &ExactRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * factor).collect())
    }
}

impl fmt::Display for YPolynomial {
    /// Compact form such as `2+6y` or `y+3y^2+y^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            if c.is_negative() {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            let unit = magnitude == ExactRational::one();
            match k {
                0 => write!(f, "{}", format_rational(&magnitude))?,
                _ => {
                    if !unit {
                        write!(f, "{}", format_rational(&magnitude))?;
                    }
                    if k == 1 {
                        write!(f, "y")?;
                    } else {
                        write!(f, "y^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Polynomial in conj(z) and z: `(p, q)` keys the monomial conj(z)^p z^q.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ZPolynomial {
    terms: BTreeMap<(u32, u32), ExactComplex>,
}

impl ZPolynomial {
    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), ExactComplex)>>(terms: I) -> Self {
        let mut out = ZPolynomial::default();
        for (k, c) in terms {
            out.add_term(k, &c);
        }
        out
    }

    pub fn monomial(p: u32, q: u32, c: ExactComplex) -> Self {
        Self::from_terms([((p, q), c)])
    }

    pub fn add_term(&mut self, key: (u32, u32), c: &ExactComplex) {
        let entry = self.terms.entry(key).or_insert_with(ExactComplex::zero);
        *entry = entry.plus(c);
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &ExactComplex)> {
        self.terms.iter()
    }

    pub fn coeff(&self, p: u32, q: u32) -> ExactComplex {
        self.terms.get(&(p, q)).cloned().unwrap_or_else(ExactComplex::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let zc = z.conj();
        self.terms
            .iter()
            .map(|(&(p, q), c)| Complex::new(to_f64(&c.re), to_f64(&c.im)) * zc.powu(p) * z.powu(q))
            .sum()
    }

    /// Restriction to real z with `y = z^2`: conj(z)^p z^q becomes y^((p+q)/2).
    pub fn real_axis(&self) -> Result<YPolynomial> {
        let mut coeffs: Vec<ExactRational> = Vec::new();
        for (&(p, q), c) in &self.terms {
            if !c.im.is_zero() {
                return Err(Error::NotRealAxis(format!("imaginary coefficient at ({p},{q})")));
            }
            if (p + q) % 2 != 0 {
                return Err(Error::NotRealAxis(format!("odd total degree at ({p},{q})")));
            }
            let k = ((p + q) / 2) as usize;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, ExactRational::zero());
            }
            coeffs[k] += &c.re;
        }
        Ok(YPolynomial::new(coeffs))
    }

    /// Restriction to phase-independent polynomials with `y = |z|^2`.
    pub fn radial(&self) -> Result<YPolynomial> {
        let mut coeffs: Vec<ExactRational> = Vec::new();
        for (&(p, q), c) in &self.terms {
            if p != q || !c.im.is_zero() {
                return Err(Error::NotRealAxis(format!("phase-dependent term at ({p},{q})")));
            }
            let k = p as usize;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, ExactRational::zero());
            }
            coeffs[k] += &c.re;
        }
        Ok(YPolynomial::new(coeffs))
    }
}

impl Zero for ZPolynomial {
    fn zero() -> Self {
        ZPolynomial::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for ZPolynomial {
    fn one() -> Self {
        Self::monomial(0, 0, real_complex(ExactRational::one()))
    }
}

impl Add for ZPolynomial {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.plus(&rhs)
    }
}

impl Mul for ZPolynomial {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.times(&rhs)
    }
}

impl Coefficient for ZPolynomial {
    fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c);
        }
        out
    }
    fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, &c.negated());
        }
        out
    }
    fn times(&self, other: &Self) -> Self {
        let mut out = ZPolynomial::default();
        for (&(p1, q1), c1) in &self.terms {
            for (&(p2, q2), c2) in &other.terms {
                out.add_term((p1 + p2, q1 + q2), &c1.times(c2));
            }
        }
        out
    }
    fn scaled(&self, factor: &ExactRational) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, c)| (*k, c.scaled(factor))))
    }
}

/// `{"poly": ["2", "6"]}` style serialization: ascending coefficients as `p/q` strings.
impl Serialize for YPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let strings: Vec<String> = self.coeffs.iter().map(format_rational).collect();
        strings.serialize(s)
    }
}

impl<'de> Deserialize<'de> for YPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let strings = Vec::<String>::deserialize(d)?;
        let coeffs = strings
            .iter()
            .map(|s| crate::exact::parse_rational(s).map_err(serde::de::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(YPolynomial::new(coeffs))
    }
}
