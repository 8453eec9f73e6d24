//! Truncated exponential generating functions.
//!
//! A series of order `M` stores `a_0..=a_M` and stands for `sum a_n x^n / n!`.
//! Coefficients are kept in this egf convention, so products are binomial
//! convolutions and the exp/log recurrences need no division at all.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{binomial_row, format_rational, parse_rational, Coefficient, ExactRational};
use crate::poly::YPolynomial;

#[derive(Clone, PartialEq, Debug)]
pub struct EgfSeries<C = ExactRational> {
    coeffs: Vec<C>,
}

/// Series whose coefficients are polynomials in `y`.
pub type BivariateEgf = EgfSeries<YPolynomial>;

fn weight(b: &BigInt) -> ExactRational {
    BigRational::from_integer(b.clone())
}

impl<C: Coefficient> EgfSeries<C> {
    /// Series `a_0..=a_M`; the order is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<C>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument("a series needs at least a constant term".into()));
        }
        Ok(EgfSeries { coeffs })
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> C) -> Self {
        EgfSeries { coeffs: (0..=order).map(f).collect() }
    }

    pub fn zero(order: usize) -> Self {
        Self::from_fn(order, |_| C::zero())
    }

    pub fn one(order: usize) -> Self {
        Self::from_fn(order, |n| if n == 0 { C::one() } else { C::zero() })
    }

    /// The series `x`.
    pub fn x(order: usize) -> Self {
        Self::from_fn(order, |n| if n == 1 { C::one() } else { C::zero() })
    }

    /// `exp(x)`, all coefficients one.
    pub fn exp_x(order: usize) -> Self {
        Self::from_fn(order, |_| C::one())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &C {
        &self.coeffs[n]
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    /// Drops every coefficient above `order`; never extends.
    pub fn truncate(&self, order: usize) -> Self {
        let keep = order.min(self.order());
        EgfSeries { coeffs: self.coeffs[..=keep].to_vec() }
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch { left: self.order(), right: other.order() });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(EgfSeries { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.plus(b)).collect() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(EgfSeries { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.minus(b)).collect() })
    }

    pub fn scale(&self, factor: &ExactRational) -> Self {
        EgfSeries { coeffs: self.coeffs.iter().map(|a| a.scaled(factor)).collect() }
    }

    /// Multiplies every coefficient by a ring element.
    pub fn scale_by(&self, factor: &C) -> Self {
        EgfSeries { coeffs: self.coeffs.iter().map(|a| a.times(factor)).collect() }
    }

    /// Binomial convolution `c_n = sum_k C(n,k) a_k b_{n-k}`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = (0..=self.order())
            .map(|n| {
                binomial_row(n).iter().enumerate().fold(C::zero(), |acc, (k, b)| {
                    acc.plus(&self.coeffs[k].times(&other.coeffs[n - k]).scaled(&weight(b)))
                })
            })
            .collect();
        Ok(EgfSeries { coeffs })
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..k {
            acc = acc.mul(self).expect("same order");
        }
        acc
    }

    /// `exp` of a series with zero constant term, from `A' = C' A`:
    /// `a_{n+1} = sum_{k=0}^{n} C(n,k) c_{k+1} a_{n-k}`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let m = self.order();
        let mut a: Vec<C> = Vec::with_capacity(m + 1);
        a.push(C::one());
        for n in 0..m {
            let next = binomial_row(n).iter().enumerate().fold(C::zero(), |acc, (k, b)| {
                acc.plus(&self.coeffs[k + 1].times(&a[n - k]).scaled(&weight(b)))
            });
            a.push(next);
        }
        Ok(EgfSeries { coeffs: a })
    }

    /// `log` of a series with unit constant term, from `A' = C' A` solved for `c_{n+1}`.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::ConstantTermNotOne);
        }
        let m = self.order();
        let mut c: Vec<C> = Vec::with_capacity(m + 1);
        c.push(C::zero());
        for n in 0..m {
            let row = binomial_row(n);
            let mut next = self.coeffs[n + 1].clone();
            for k in 0..n {
                next = next.minus(&c[k + 1].times(&self.coeffs[n - k]).scaled(&weight(&row[k])));
            }
            c.push(next);
        }
        Ok(EgfSeries { coeffs: c })
    }

    /// Square root of a series with unit constant term.
    pub fn sqrt(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::ConstantTermNotOne);
        }
        let half = crate::exact::rational(1, 2);
        let mut b: Vec<C> = Vec::with_capacity(self.coeffs.len());
        b.push(C::one());
        for n in 1..=self.order() {
            let row = binomial_row(n);
            let mut rest = self.coeffs[n].clone();
            for k in 1..n {
                rest = rest.minus(&b[k].times(&b[n - k]).scaled(&weight(&row[k])));
            }
            b.push(rest.scaled(&half));
        }
        Ok(EgfSeries { coeffs: b })
    }
}

impl EgfSeries<ExactRational> {
    pub fn from_integers(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| crate::exact::integer(c)).collect())
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn reciprocal(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if num_traits::Zero::is_zero(a0) {
            return Err(Error::ZeroConstantTerm);
        }
        let inv = a0.recip();
        let mut b: Vec<ExactRational> = Vec::with_capacity(self.coeffs.len());
        b.push(inv.clone());
        for n in 1..=self.order() {
            let row = binomial_row(n);
            let mut s = ExactRational::from_integer(0.into());
            for k in 1..=n {
                s += &self.coeffs[k] * &b[n - k] * weight(&row[k]);
            }
            b.push(-s * &inv);
        }
        Ok(EgfSeries { coeffs: b })
    }

    /// Lifts to a bivariate series with `y`-independent coefficients.
    pub fn to_bivariate(&self) -> BivariateEgf {
        EgfSeries { coeffs: self.coeffs.iter().cloned().map(YPolynomial::constant).collect() }
    }
}

/// Vertex multipliers `V_1..V_M` with `exp(sum V_n x^n/n!) = sum W_n x^n/n!`.
pub fn w_to_v<C: Coefficient>(w: &EgfSeries<C>) -> Result<Vec<C>> {
    let mut v = w.log()?.into_coeffs();
    v.remove(0);
    Ok(v)
}

/// Inverse of [`w_to_v`]: rebuilds `W_0..W_M` from `V_1..V_M`, with `W_0 = 1`.
pub fn v_to_w<C: Coefficient>(v: &[C]) -> EgfSeries<C> {
    let mut coeffs = Vec::with_capacity(v.len() + 1);
    coeffs.push(C::zero());
    coeffs.extend(v.iter().cloned());
    EgfSeries { coeffs }.exp().expect("constant term is zero")
}

/// Wire form: `{"order": M, "coeffs": ["1", "1/2", ...]}`.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct SeriesJson {
    pub order: usize,
    pub coeffs: Vec<String>,
}

impl From<&EgfSeries<ExactRational>> for SeriesJson {
    fn from(s: &EgfSeries<ExactRational>) -> Self {
        SeriesJson { order: s.order(), coeffs: s.coeffs.iter().map(format_rational).collect() }
    }
}

impl TryFrom<&SeriesJson> for EgfSeries<ExactRational> {
    type Error = Error;

    fn try_from(j: &SeriesJson) -> Result<Self> {
        if j.coeffs.len() != j.order + 1 {
            return Err(Error::InvalidArgument(format!(
                "order {} needs {} coefficients, got {}",
                j.order,
                j.order + 1,
                j.coeffs.len()
            )));
        }
        Self::new(j.coeffs.iter().map(|s| parse_rational(s)).collect::<Result<_>>()?)
    }
}

impl Serialize for EgfSeries<ExactRational> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for EgfSeries<ExactRational> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = SeriesJson::deserialize(d)?;
        EgfSeries::try_from(&j).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{integer, rational};
    use num_traits::Zero;

    fn ints(s: &EgfSeries) -> Vec<i64> {
        use num_traits::ToPrimitive;
        s.coeffs().iter().map(|c| c.to_integer().to_i64().unwrap()).collect()
    }

    #[test]
    fn exp_x_squared_is_exp_2x() {
        let e: EgfSeries = EgfSeries::exp_x(8);
        let sq = e.mul(&e).unwrap();
        assert_eq!(ints(&sq), (0..=8).map(|n| 1i64 << n).collect::<Vec<_>>());
    }

    #[test]
    fn x_times_x() {
        let x: EgfSeries = EgfSeries::x(5);
        assert_eq!(ints(&x.mul(&x).unwrap()), vec![0, 0, 2, 0, 0, 0]);
    }

    #[test]
    fn unit_is_identity() {
        let a = EgfSeries::from_integers(&[3, -1, 4, 1, -5]).unwrap();
        assert_eq!(a.mul(&EgfSeries::one(4)).unwrap(), a);
    }

    #[test]
    fn order_mismatch_is_an_error() {
        let a: EgfSeries = EgfSeries::one(3);
        let b: EgfSeries = EgfSeries::one(4);
        assert_eq!(a.mul(&b), Err(Error::OrderMismatch { left: 3, right: 4 }));
        assert!(a.add(&b).is_err());
        assert_eq!(a.mul(&b.truncate(3)).unwrap(), a);
    }

    #[test]
    fn exp_examples() {
        let zero: EgfSeries = EgfSeries::zero(6);
        assert_eq!(zero.exp().unwrap(), EgfSeries::one(6));
        let x: EgfSeries = EgfSeries::x(6);
        assert_eq!(ints(&x.exp().unwrap()), vec![1; 7]);
        let bell_gen = EgfSeries::from_fn(6, |n| if n == 0 { integer(0) } else { integer(1) });
        assert_eq!(ints(&bell_gen.exp().unwrap()), vec![1, 1, 2, 5, 15, 52, 203]);
    }

    #[test]
    fn exp_needs_zero_constant() {
        let a: EgfSeries = EgfSeries::one(3);
        assert_eq!(a.exp(), Err(Error::NonzeroConstantTerm));
    }

    #[test]
    fn log_examples() {
        let one: EgfSeries = EgfSeries::one(5);
        assert_eq!(one.log().unwrap(), EgfSeries::zero(5));
        let bell = EgfSeries::from_integers(&[1, 1, 2, 5, 15, 52, 203]).unwrap();
        assert_eq!(ints(&bell.log().unwrap()), vec![0, 1, 1, 1, 1, 1, 1]);
        let two = EgfSeries::from_integers(&[2, 1]).unwrap();
        assert_eq!(two.log(), Err(Error::ConstantTermNotOne));
    }

    #[test]
    fn reciprocal_examples() {
        let one: EgfSeries = EgfSeries::one(4);
        assert_eq!(one.reciprocal().unwrap(), one);
        // 1 - x in egf convention is [1, -1, 0, 0, ...]
        let one_minus_x = EgfSeries::from_integers(&[1, -1, 0, 0, 0, 0]).unwrap();
        let r = one_minus_x.reciprocal().unwrap();
        // 1/(1-x) = sum x^n, i.e. a_n = n!
        assert_eq!(ints(&r), vec![1, 1, 2, 6, 24, 120]);
        assert_eq!(r.mul(&one_minus_x).unwrap(), EgfSeries::one(5));
        let zero_head = EgfSeries::from_integers(&[0, 1]).unwrap();
        assert_eq!(zero_head.reciprocal(), Err(Error::ZeroConstantTerm));
    }

    #[test]
    fn sqrt_of_exp_2x_is_exp_x() {
        let e2 = EgfSeries::from_fn(7, |n| integer(1 << n));
        assert_eq!(e2.sqrt().unwrap(), EgfSeries::exp_x(7));
        let bad = EgfSeries::from_integers(&[4, 1]).unwrap();
        assert_eq!(bad.sqrt(), Err(Error::ConstantTermNotOne));
    }

    #[test]
    fn free_gas_bell_polynomials_give_constant_v() {
        let order = 7;
        let w: BivariateEgf = EgfSeries::from_fn(order, crate::combinatorics::bell_polynomial);
        let v = w_to_v(&w).unwrap();
        assert_eq!(v.len(), order);
        assert!(v.iter().all(|p| *p == YPolynomial::y()));
        assert_eq!(v_to_w(&v), w);
    }

    #[test]
    fn trivial_w_gives_zero_v() {
        let w: BivariateEgf = EgfSeries::one(5);
        assert!(w_to_v(&w).unwrap().iter().all(|p| p.is_zero()));
    }

    #[test]
    fn json_wire_form() {
        let s = EgfSeries::new(vec![integer(1), rational(1, 2), rational(-3, 4)]).unwrap();
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(text, r#"{"order":2,"coeffs":["1","1/2","-3/4"]}"#);
        let back: EgfSeries = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<EgfSeries>(r#"{"order":3,"coeffs":["1"]}"#).is_err());
    }
}
