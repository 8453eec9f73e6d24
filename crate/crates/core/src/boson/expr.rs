//! Operator expressions over `a` and `ad` (a†).
//!
//! ```text
//! expr   := term ('+' term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' uint)?
//! base   := rational | 'a' | 'ad' | '(' expr ')'
//! ```
//! Rational literals are `p` or `p/q` with no inner whitespace; whitespace
//! between tokens is ignored.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{format_rational, ExactRational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OperatorExpr {
    Number(ExactRational),
    /// `a`
    Ann,
    /// `ad`
    Cre,
    Sum(Vec<OperatorExpr>),
    Product(Vec<OperatorExpr>),
    Power(Box<OperatorExpr>, u32),
    Group(Box<OperatorExpr>),
}

impl OperatorExpr {
    pub fn number(r: ExactRational) -> Self {
        OperatorExpr::Number(r)
    }

    pub fn pow(self, e: u32) -> Self {
        OperatorExpr::Power(Box::new(self), e)
    }

    pub fn group(self) -> Self {
        OperatorExpr::Group(Box::new(self))
    }
}

impl fmt::Display for OperatorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperatorExpr::Number(r) => write!(f, "{}", format_rational(r)),
            OperatorExpr::Ann => write!(f, "a"),
            OperatorExpr::Cre => write!(f, "ad"),
            OperatorExpr::Sum(terms) => {
                for (i, t) in terms.iter().enumerate() {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "{t}")?;
                }
                Ok(())
            }
            OperatorExpr::Product(factors) => {
                for (i, t) in factors.iter().enumerate() {
                    if i > 0 {
                        write!(f, "*")?;
                    }
                    write!(f, "{t}")?;
                }
                Ok(())
            }
            OperatorExpr::Power(base, e) => write!(f, "{base}^{e}"),
            OperatorExpr::Group(inner) => write!(f, "({inner})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Number(ExactRational),
    Ann,
    Cre,
    Plus,
    Star,
    Caret,
    Open,
    Close,
}

#[derive(Debug)]
struct Lexed {
    token: Token,
    offset: usize,
    text: String,
}

fn lex(text: &str) -> Result<Vec<Lexed>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let single = |t: Token| Lexed { token: t, offset: start, text: (c as char).to_string() };
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => out.push(single(Token::Plus)),
            b'*' => out.push(single(Token::Star)),
            b'^' => out.push(single(Token::Caret)),
            b'(' => out.push(single(Token::Open)),
            b')' => out.push(single(Token::Close)),
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let num_end = i;
                let mut den = None;
                if i + 1 < bytes.len() && bytes[i] == b'/' && bytes[i + 1].is_ascii_digit() {
                    i += 1;
                    let den_start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    den = Some(&text[den_start..i]);
                }
                let numer: BigInt = text[start..num_end].parse().expect("digits");
                let lit = &text[start..i];
                let value = match den {
                    Some(d) => {
                        let d: BigInt = d.parse().expect("digits");
                        if d.is_zero() {
                            return Err(Error::Parse {
                                offset: start,
                                expected: vec!["nonzero denominator".into()],
                                found: lit.to_string(),
                            });
                        }
                        BigRational::new(numer, d)
                    }
                    None => BigRational::from_integer(numer),
                };
                out.push(Lexed { token: Token::Number(value), offset: start, text: lit.to_string() });
                continue;
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                let word = &text[start..i];
                let token = match word {
                    "a" => Token::Ann,
                    "ad" => Token::Cre,
                    _ => {
                        return Err(Error::Parse {
                            offset: start,
                            expected: vec!["a".into(), "ad".into()],
                            found: format!("{word:?}"),
                        })
                    }
                };
                out.push(Lexed { token, offset: start, text: word.to_string() });
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap();
                return Err(Error::Parse {
                    offset: start,
                    expected: vec!["rational".into(), "a".into(), "ad".into(), "(".into(), "+".into(), "*".into(), "^".into(), ")".into()],
                    found: format!("{ch:?}"),
                });
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'t> {
    tokens: &'t [Lexed],
    pos: usize,
    end: usize,
    depth: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|l| &l.token)
    }

    fn error(&self, expected: &[&str]) -> Error {
        let (offset, found) = match self.tokens.get(self.pos) {
            Some(l) => (l.offset, format!("{:?}", l.text)),
            None => (self.end, "end of input".to_string()),
        };
        Error::Parse { offset, expected: expected.iter().map(|s| s.to_string()).collect(), found }
    }

    fn follow_set(&self) -> Vec<&'static str> {
        let mut v = vec!["+", "*", "^"];
        v.push(if self.depth > 0 { ")" } else { "end of input" });
        v
    }

    fn expr(&mut self) -> Result<OperatorExpr> {
        let mut terms = vec![self.term()?];
        while self.peek() == Some(&Token::Plus) {
            self.pos += 1;
            terms.push(self.term()?);
        }
        Ok(if terms.len() == 1 { terms.pop().unwrap() } else { OperatorExpr::Sum(terms) })
    }

    fn term(&mut self) -> Result<OperatorExpr> {
        let mut factors = vec![self.factor()?];
        while self.peek() == Some(&Token::Star) {
            self.pos += 1;
            factors.push(self.factor()?);
        }
        Ok(if factors.len() == 1 { factors.pop().unwrap() } else { OperatorExpr::Product(factors) })
    }

    fn factor(&mut self) -> Result<OperatorExpr> {
        let base = self.base()?;
        if self.peek() == Some(&Token::Caret) {
            self.pos += 1;
            let exponent = match self.tokens.get(self.pos) {
                Some(Lexed { token: Token::Number(r), text, offset }) => {
                    if !r.is_integer() || text.contains('/') {
                        return Err(Error::Parse {
                            offset: *offset,
                            expected: vec!["unsigned integer".into()],
                            found: format!("{text:?}"),
                        });
                    }
                    text.parse::<u32>().map_err(|_| Error::Parse {
                        offset: *offset,
                        expected: vec!["unsigned integer below 2^32".into()],
                        found: format!("{text:?}"),
                    })?
                }
                _ => return Err(self.error(&["unsigned integer"])),
            };
            self.pos += 1;
            return Ok(OperatorExpr::Power(Box::new(base), exponent));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<OperatorExpr> {
        let node = match self.peek() {
            Some(Token::Number(r)) => OperatorExpr::Number(r.clone()),
            Some(Token::Ann) => OperatorExpr::Ann,
            Some(Token::Cre) => OperatorExpr::Cre,
            Some(Token::Open) => {
                self.pos += 1;
                self.depth += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Token::Close) {
                    return Err(self.error(&["+", "*", "^", ")"]));
                }
                self.depth -= 1;
                OperatorExpr::Group(Box::new(inner))
            }
            _ => return Err(self.error(&["rational", "a", "ad", "("])),
        };
        self.pos += 1;
        Ok(node)
    }
}

/// Parses an operator expression; errors carry the byte offset and the
/// set of tokens that would have been accepted there.
pub fn parse(text: &str) -> Result<OperatorExpr> {
    let tokens = lex(text)?;
    let mut p = Parser { tokens: &tokens, pos: 0, end: text.len(), depth: 0 };
    let e = p.expr()?;
    if p.pos != tokens.len() {
        let follow = p.follow_set();
        return Err(p.error(&follow));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational;
    use proptest::prelude::*;

    #[test]
    fn simple_product() {
        assert_eq!(parse("ad*a").unwrap(), OperatorExpr::Product(vec![OperatorExpr::Cre, OperatorExpr::Ann]));
    }

    #[test]
    fn grouped_power() {
        let e = parse("(ad*a)^3").unwrap();
        let inner = OperatorExpr::Product(vec![OperatorExpr::Cre, OperatorExpr::Ann]);
        assert_eq!(e, OperatorExpr::Group(Box::new(inner)).pow(3));
    }

    #[test]
    fn scaled_powers() {
        let e = parse("1/2*a^2 + 1/2*ad^2").unwrap();
        let half = OperatorExpr::Number(rational(1, 2));
        assert_eq!(
            e,
            OperatorExpr::Sum(vec![
                OperatorExpr::Product(vec![half.clone(), OperatorExpr::Ann.pow(2)]),
                OperatorExpr::Product(vec![half, OperatorExpr::Cre.pow(2)]),
            ])
        );
    }

    #[test]
    fn whitespace_ignored() {
        assert_eq!(parse("  ad *\ta ").unwrap(), parse("ad*a").unwrap());
    }

    #[test]
    fn error_positions() {
        match parse("ad*").unwrap_err() {
            Error::Parse { offset, expected, found } => {
                assert_eq!(offset, 3);
                assert!(expected.contains(&"a".to_string()));
                assert_eq!(found, "end of input");
            }
            e => panic!("{e:?}"),
        }
        match parse("(a + ad").unwrap_err() {
            Error::Parse { offset, expected, .. } => {
                assert_eq!(offset, 7);
                assert!(expected.contains(&")".to_string()));
            }
            e => panic!("{e:?}"),
        }
        match parse("a b").unwrap_err() {
            Error::Parse { offset, .. } => assert_eq!(offset, 2),
            e => panic!("{e:?}"),
        }
        match parse("a a").unwrap_err() {
            Error::Parse { offset, expected, .. } => {
                assert_eq!(offset, 2);
                assert!(expected.contains(&"end of input".to_string()));
            }
            e => panic!("{e:?}"),
        }
        assert!(parse("a^1/2").is_err());
        assert!(parse("1/0").is_err());
        assert!(parse("a - ad").is_err());
        assert!(parse("").is_err());
    }

    fn arb_base() -> impl Strategy<Value = OperatorExpr> {
        prop_oneof![
            Just(OperatorExpr::Ann),
            Just(OperatorExpr::Cre),
            (0u32..20, 1u32..6).prop_map(|(n, d)| OperatorExpr::Number(rational(n as i64, d as i64))),
        ]
    }

    // only trees the parser itself can produce
    fn arb_expr() -> impl Strategy<Value = OperatorExpr> {
        arb_base().prop_recursive(4, 24, 4, |inner| {
            let factor = prop_oneof![
                inner.clone(),
                (inner.clone(), 0u32..4).prop_map(|(b, e)| match b {
                    OperatorExpr::Ann | OperatorExpr::Cre | OperatorExpr::Number(_) | OperatorExpr::Group(_) => b.pow(e),
                    other => other.group().pow(e),
                }),
            ];
            let as_factor = move |e: OperatorExpr| match e {
                OperatorExpr::Sum(_) | OperatorExpr::Product(_) => e.group(),
                other => other,
            };
            prop_oneof![
                prop::collection::vec(factor.clone(), 2..4)
                    .prop_map(move |fs| OperatorExpr::Product(fs.into_iter().map(as_factor).collect())),
                prop::collection::vec(inner.clone(), 2..4).prop_map(|ts| OperatorExpr::Sum(
                    ts.into_iter()
                        .map(|t| match t {
                            OperatorExpr::Sum(_) => t.group(),
                            other => other,
                        })
                        .collect()
                )),
                inner.prop_map(|e| e.group()),
            ]
        })
    }

    proptest! {
        #[test]
        fn parse_inverts_display(e in arb_expr()) {
            let text = e.to_string();
            prop_assert_eq!(parse(&text).unwrap(), e);
        }
    }
}
