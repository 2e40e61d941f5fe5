//! Text syntax for polynomials.
//!
//! Canonical output (see [`Polynomial::render`]) is a sum of terms
//! `c*v^e*...` in descending degrevlex order, with `+`/`-` separators
//! surrounded by single spaces, rational coefficients written `p/q`, a unit
//! coefficient omitted, and exponent `1` omitted:
//!
//! ```text
//! 2*x^2*y - 1/3*z
//! ```
//!
//! The reader accepts a superset of this: parentheses, implicit
//! multiplication (`2x`, `x(x-y)`), unary minus, and integer powers of any
//! factor, so defining polynomials can be pasted as products such as
//! `x(x-y)(x-t)(y-z)(z-t)`.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::poly::Polynomial;
use crate::error::{Error, Result};
use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1
            }
            // U+2212 appears when forms are copied from typeset text
            '-' | '\u{2212}' => {
                out.push(Tok::Minus);
                i += 1
            }
            '*' | '\u{00B7}' => {
                out.push(Tok::Star);
                i += 1
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1
            }
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let lit: String = chars[start..i].iter().collect();
                out.push(Tok::Num(lit.parse().expect("digits")));
            }
            a if a.is_alphabetic() || a == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Tok::Ident(chars[start..i].iter().collect()));
            }
            other => return Err(Error::Parse(format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

struct Parser<'a, F> {
    toks: Vec<Tok>,
    pos: usize,
    names: &'a [String],
    _f: std::marker::PhantomData<F>,
}

impl<'a, F: Field> Parser<'a, F> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn nvars(&self) -> usize {
        self.names.len()
    }

    fn expr(&mut self) -> Result<Polynomial<F>> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial<F>> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                // implicit multiplication
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial<F>> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial<F>> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.next() {
                Some(Tok::Num(n)) => {
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| Error::Parse("exponent too large".into()))?;
                    Ok(base.pow(e))
                }
                other => Err(Error::Parse(format!("expected exponent, found {other:?}"))),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial<F>> {
        match self.next() {
            Some(Tok::Num(n)) => {
                if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    match self.next() {
                        Some(Tok::Num(d)) if d != BigInt::from(0) => Ok(Polynomial::constant(
                            self.nvars(),
                            F::from_ratio(&BigRational::new(n, d)),
                        )),
                        other => Err(Error::Parse(format!("bad denominator {other:?}"))),
                    }
                } else {
                    Ok(Polynomial::constant(self.nvars(), F::from_bigint(&n)))
                }
            }
            Some(Tok::Ident(name)) => match self.names.iter().position(|v| *v == name) {
                Some(i) => Ok(Polynomial::var(self.nvars(), i)),
                None => Err(Error::Parse(format!(
                    "unknown variable `{name}` (variables: {})",
                    self.names.join(", ")
                ))),
            },
            Some(Tok::LParen) => {
                let e = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(e),
                    other => Err(Error::Parse(format!("expected `)`, found {other:?}"))),
                }
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses a polynomial over the variables `names`.
pub fn parse_poly<F: Field>(s: &str, names: &[String]) -> Result<Polynomial<F>> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser {
        toks,
        pos: 0,
        names,
        _f: std::marker::PhantomData,
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!(
            "trailing input at token {:?}",
            p.toks[p.pos]
        )));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::default_var_names;
    use crate::scalar::Rat;
    use proptest::prelude::*;

    fn names(l: usize) -> Vec<String> {
        default_var_names(l)
    }

    #[test]
    fn products_and_implicit_multiplication() {
        let a: Polynomial<Rat> = parse_poly("x(x-y)", &names(2)).unwrap();
        let b: Polynomial<Rat> = parse_poly("x^2 - x*y", &names(2)).unwrap();
        assert_eq!(a, b);
        let c: Polynomial<Rat> = parse_poly("2x - 3/4 y", &names(2)).unwrap();
        assert_eq!(c.to_string(), "2*x - 3/4*y");
    }

    #[test]
    fn errors() {
        assert!(parse_poly::<Rat>("x + q", &names(2)).is_err());
        assert!(parse_poly::<Rat>("x + ", &names(2)).is_err());
        assert!(parse_poly::<Rat>("(x", &names(2)).is_err());
        assert!(parse_poly::<Rat>("1/0", &names(2)).is_err());
    }

    fn arb_poly() -> impl Strategy<Value = Polynomial<Rat>> {
        prop::collection::vec(((0u32..4, 0u32..4, 0u32..3), -20i64..20, 1i64..6), 0..8).prop_map(
            |ts| {
                Polynomial::from_terms(
                    3,
                    ts.into_iter()
                        .map(|((a, b, c), n, d)| {
                            (crate::algebra::Monomial::new(&[a, b, c]), Rat::new(n, d))
                        })
                        .collect(),
                )
            },
        )
    }

    proptest! {
        #[test]
        fn render_then_parse_is_identity(p in arb_poly()) {
            let s = p.to_string();
            let q: Polynomial<Rat> = parse_poly(&s, &names(3)).unwrap();
            prop_assert_eq!(&q, &p);
            prop_assert_eq!(q.to_string(), s);
        }
    }
}
