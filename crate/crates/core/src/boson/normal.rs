use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::expr::OperatorExpr;
use crate::error::{Error, Result};
use crate::exact::{binomial_row, factorial, format_rational, parse_rational, ExactInteger, ExactRational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Ann,
    Cre,
}

/// A product of ladder operators read left to right; empty is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BosonWord {
    pub letters: Vec<Letter>,
}

impl BosonWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        BosonWord { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    fn is_normal(&self) -> bool {
        // no Ann followed by Cre
        !self.letters.windows(2).any(|w| w == [Letter::Ann, Letter::Cre])
    }

    fn counts(&self) -> (u32, u32) {
        let cre = self.letters.iter().filter(|&&l| l == Letter::Cre).count() as u32;
        (cre, self.letters.len() as u32 - cre)
    }

    /// Normal form via the per-letter update on [`NormalPolynomial`].
    pub fn normal_order(&self) -> NormalPolynomial {
        self.letters
            .iter()
            .fold(NormalPolynomial::one(), |acc, &l| acc.mul_letter(l))
    }
}

/// `sum c_{p,q} (a†)^p a^q` with exact coefficients; zero terms are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct NormalPolynomial {
    terms: BTreeMap<(u32, u32), ExactRational>,
}

impl NormalPolynomial {
    pub fn zero() -> Self {
        NormalPolynomial::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: ExactRational) -> Self {
        Self::monomial(0, 0, c)
    }

    /// `c (a†)^p a^q`
    pub fn monomial(p: u32, q: u32, c: ExactRational) -> Self {
        let mut out = Self::zero();
        out.add_term(p, q, c);
        out
    }

    pub fn add_term(&mut self, p: u32, q: u32, c: ExactRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((p, q)).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(p, q));
        }
    }

    pub fn coeff(&self, p: u32, q: u32) -> ExactRational {
        self.terms.get(&(p, q)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &ExactRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(p, q), c) in &other.terms {
            out.add_term(p, q, c.clone());
        }
        out
    }

    pub fn scale(&self, factor: &ExactRational) -> Self {
        let mut out = Self::zero();
        for (&(p, q), c) in &self.terms {
            out.add_term(p, q, c * factor);
        }
        out
    }

    /// Right multiplication by one letter:
    /// `(a†)^p a^q · a† = (a†)^{p+1} a^q + q (a†)^p a^{q-1}`.
    pub fn mul_letter(&self, letter: Letter) -> Self {
        let mut out = Self::zero();
        for (&(p, q), c) in &self.terms {
            match letter {
                Letter::Ann => out.add_term(p, q + 1, c.clone()),
                Letter::Cre => {
                    out.add_term(p + 1, q, c.clone());
                    if q > 0 {
                        out.add_term(p, q - 1, c * BigInt::from(q));
                    }
                }
            }
        }
        out
    }

    /// Normal-ordered product, termwise by
    /// `a^q (a†)^r = sum_k C(q,k) C(r,k) k! (a†)^{r-k} a^{q-k}`.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&(p, q), c1) in &self.terms {
            let row_q = binomial_row(q as usize);
            for (&(r, s), c2) in &other.terms {
                let row_r = binomial_row(r as usize);
                let c = c1 * c2;
                for k in 0..=q.min(r) {
                    let ku = k as usize;
                    let w: ExactInteger = &row_q[ku] * &row_r[ku] * factorial(ku);
                    out.add_term(p + r - k, q + s - k, &c * w);
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Coefficients of the diagonal terms `(a†)^k a^k`.
    pub fn diagonal(&self) -> BTreeMap<u32, ExactRational> {
        self.terms.iter().filter(|((p, q), _)| p == q).map(|(&(p, _), c)| (p, c.clone())).collect()
    }
}

/// Operator-equal normal form of an expression.
pub fn normal_order(e: &OperatorExpr) -> NormalPolynomial {
    match e {
        OperatorExpr::Number(r) => NormalPolynomial::constant(r.clone()),
        OperatorExpr::Ann => NormalPolynomial::monomial(0, 1, BigRational::one()),
        OperatorExpr::Cre => NormalPolynomial::monomial(1, 0, BigRational::one()),
        OperatorExpr::Sum(terms) => terms.iter().fold(NormalPolynomial::zero(), |acc, t| acc.add(&normal_order(t))),
        OperatorExpr::Product(factors) => factors.iter().fold(NormalPolynomial::one(), |acc, f| acc.mul(&normal_order(f))),
        OperatorExpr::Power(base, k) => normal_order(base).pow(*k),
        OperatorExpr::Group(inner) => normal_order(inner),
    }
}

/// Word-level rewriting `a a† -> a† a + 1` until no `a a†` pair remains.
/// Exponential in the word length; kept as an independent oracle.
pub fn normal_order_word_naive(word: &BosonWord) -> NormalPolynomial {
    let mut pending: Vec<(BigInt, BosonWord)> = vec![(BigInt::one(), word.clone())];
    let mut out = NormalPolynomial::zero();
    while let Some((c, w)) = pending.pop() {
        match w.letters.windows(2).position(|p| p == [Letter::Ann, Letter::Cre]) {
            None => {
                debug_assert!(w.is_normal());
                let (p, q) = w.counts();
                out.add_term(p, q, BigRational::from_integer(c));
            }
            Some(i) => {
                let mut swapped = w.letters.clone();
                swapped.swap(i, i + 1);
                let mut contracted = w.letters.clone();
                contracted.drain(i..i + 2);
                pending.push((c.clone(), BosonWord::new(swapped)));
                pending.push((c, BosonWord::new(contracted)));
            }
        }
    }
    out
}

/// Coefficients of `(a†)^k a^k` in the normal form of `(a† a)^n`.
pub fn stirling_from_normal_ordering(n: usize) -> BTreeMap<usize, ExactInteger> {
    let number = NormalPolynomial::monomial(1, 1, BigRational::one());
    number
        .pow(n as u32)
        .diagonal()
        .into_iter()
        .map(|(k, c)| (k as usize, c.to_integer()))
        .collect()
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct NormalTerm {
    pub p: u32,
    pub q: u32,
    pub coeff: String,
}

#[derive(Serialize, Deserialize)]
struct NormalJson {
    terms: Vec<NormalTerm>,
}

/// `{"terms": [{"p":2,"q":2,"coeff":"3"}]}`, terms ascending by `(p, q)`.
impl Serialize for NormalPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self
            .terms
            .iter()
            .map(|(&(p, q), c)| NormalTerm { p, q, coeff: format_rational(c) })
            .collect();
        NormalJson { terms }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for NormalPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = NormalJson::deserialize(d)?;
        let mut out = NormalPolynomial::zero();
        for t in j.terms {
            let c = parse_rational(&t.coeff).map_err(serde::de::Error::custom)?;
            out.add_term(t.p, t.q, c);
        }
        Ok(out)
    }
}

impl TryFrom<&str> for NormalPolynomial {
    type Error = Error;

    fn try_from(text: &str) -> Result<Self> {
        Ok(normal_order(&super::parse(text)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boson::parse;
    use crate::combinatorics::StirlingTable;
    use crate::exact::integer;
    use proptest::prelude::*;

    fn np(terms: &[((u32, u32), i64)]) -> NormalPolynomial {
        let mut out = NormalPolynomial::zero();
        for &((p, q), c) in terms {
            out.add_term(p, q, integer(c));
        }
        out
    }

    #[test]
    fn single_commutator() {
        let w = BosonWord::new(vec![Letter::Ann, Letter::Cre]);
        let want = np(&[((1, 1), 1), ((0, 0), 1)]);
        assert_eq!(w.normal_order(), want);
        assert_eq!(normal_order_word_naive(&w), want);
        assert_eq!(normal_order(&parse("a*ad").unwrap()), want);
    }

    #[test]
    fn number_operator_powers() {
        assert_eq!(normal_order(&parse("(ad*a)^2").unwrap()), np(&[((1, 1), 1), ((2, 2), 1)]));
        assert_eq!(normal_order(&parse("(ad*a)^3").unwrap()), np(&[((1, 1), 1), ((2, 2), 3), ((3, 3), 1)]));
        assert_eq!(normal_order(&parse("(ad*a)^0").unwrap()), NormalPolynomial::one());
    }

    #[test]
    fn stirling_rows() {
        let one: BTreeMap<usize, BigInt> = [(1, BigInt::one())].into();
        assert_eq!(stirling_from_normal_ordering(1), one);
        let two: BTreeMap<usize, BigInt> = [(1, BigInt::one()), (2, BigInt::one())].into();
        assert_eq!(stirling_from_normal_ordering(2), two);
        assert_eq!(stirling_from_normal_ordering(5)[&2], BigInt::from(15));
        let table = StirlingTable::new(9);
        for n in 1..=9 {
            let row = stirling_from_normal_ordering(n);
            for k in 1..=n {
                assert_eq!(row[&k], table.get(n, k as i64));
            }
        }
    }

    #[test]
    fn rationals_survive() {
        let p = normal_order(&parse("1/2*a^2 + 1/2*ad^2 + 3/4").unwrap());
        assert_eq!(p.coeff(0, 2), crate::exact::rational(1, 2));
        assert_eq!(p.coeff(2, 0), crate::exact::rational(1, 2));
        assert_eq!(p.coeff(0, 0), crate::exact::rational(3, 4));
    }

    #[test]
    fn json_wire_form() {
        let p = np(&[((2, 2), 3), ((1, 1), 1)]);
        let text = serde_json::to_string(&p).unwrap();
        assert_eq!(text, r#"{"terms":[{"p":1,"q":1,"coeff":"1"},{"p":2,"q":2,"coeff":"3"}]}"#);
        assert_eq!(serde_json::from_str::<NormalPolynomial>(&text).unwrap(), p);
    }

    fn arb_word(max: usize) -> impl Strategy<Value = BosonWord> {
        prop::collection::vec(prop_oneof![Just(Letter::Ann), Just(Letter::Cre)], 0..=max).prop_map(BosonWord::new)
    }

    fn word_expr(w: &BosonWord) -> OperatorExpr {
        let f = |l: &Letter| if *l == Letter::Ann { OperatorExpr::Ann } else { OperatorExpr::Cre };
        match w.len() {
            0 => OperatorExpr::Number(integer(1)),
            1 => f(&w.letters[0]),
            _ => OperatorExpr::Product(w.letters.iter().map(f).collect()),
        }
    }

    proptest! {
        #[test]
        fn letter_update_matches_naive_rewriter(w in arb_word(8)) {
            prop_assert_eq!(w.normal_order(), normal_order_word_naive(&w));
        }

        #[test]
        fn normal_order_is_multiplicative(u in arb_word(5), v in arb_word(5)) {
            let mut uv = u.letters.clone();
            uv.extend(v.letters.iter().copied());
            let joined = normal_order(&word_expr(&BosonWord::new(uv)));
            prop_assert_eq!(joined, normal_order(&word_expr(&u)).mul(&normal_order(&word_expr(&v))));
        }
    }
}
