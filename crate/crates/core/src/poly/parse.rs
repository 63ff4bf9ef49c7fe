//! Recursive-descent parser for the polynomial grammar.
//!
//! ```text
//! input  := expr ('=' expr)?
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*      // '/' only by a nonzero constant
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' INTEGER)?
//! atom   := INTEGER | 'x' | 'y' | 'z' | 't' | '(' expr ')'
//! ```

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub(crate) type Exp = [u32; 4];
pub(crate) type Terms = BTreeMap<Exp, BigRational>;

const MAX_EXPONENT: u32 = 64;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Eq,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("digits");
                out.push((start, Tok::Num(n)));
                continue;
            }
            'x' => Tok::Var(0),
            'y' => Tok::Var(1),
            'z' => Tok::Var(2),
            't' => Tok::Var(3),
            '+' => Tok::Plus,
            '-' | '\u{2212}' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '=' => Tok::Eq,
            other => {
                return Err(Error::Parse { pos: i, msg: format!("unexpected character {other:?}") })
            }
        };
        out.push((i, tok));
        i += c.len_utf8();
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos(), msg: msg.into() })
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(_, t)| t.clone());
        self.at += 1;
        t
    }

    fn input(&mut self) -> Result<Terms> {
        let lhs = self.expr()?;
        let out = if self.peek() == Some(&Tok::Eq) {
            self.bump();
            let rhs = self.expr()?;
            sub(&lhs, &rhs)
        } else {
            lhs
        };
        if self.at < self.toks.len() {
            return match self.peek() {
                Some(Tok::Var(_)) | Some(Tok::Num(_)) | Some(Tok::LParen) => {
                    self.err("implicit multiplication is not allowed; use '*'")
                }
                _ => self.err("unexpected trailing input"),
            };
        }
        Ok(out)
    }

    fn expr(&mut self) -> Result<Terms> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = add(&acc, &rhs);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = sub(&acc, &rhs);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Terms> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    let rhs = self.unary()?;
                    acc = mul(&acc, &rhs);
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let rhs = self.unary()?;
                    let c = match constant_value(&rhs) {
                        Some(c) if !c.is_zero() => c,
                        Some(_) => return self.err("division by zero"),
                        None => return self.err("division is only allowed by a constant"),
                    };
                    let inv = c.recip();
                    acc = acc.into_iter().map(|(e, v)| (e, v * &inv)).collect();
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Terms> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                let inner = self.unary()?;
                Ok(inner.into_iter().map(|(e, v)| (e, -v)).collect())
            }
            Some(Tok::Plus) => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Terms> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.bump();
        let n = match self.bump() {
            Some(Tok::Num(n)) => n,
            _ => {
                self.at -= 1;
                return self.err("exponent must be a positive integer");
            }
        };
        let n: u32 = match u32::try_from(n) {
            Ok(n) if (1..=MAX_EXPONENT).contains(&n) => n,
            _ => {
                self.at -= 1;
                return self.err(format!("exponent must be in 1..={MAX_EXPONENT}"));
            }
        };
        let mut out = base.clone();
        for _ in 1..n {
            out = mul(&out, &base);
        }
        Ok(out)
    }

    fn atom(&mut self) -> Result<Terms> {
        match self.bump() {
            Some(Tok::Num(n)) => Ok(constant(BigRational::from_integer(n))),
            Some(Tok::Var(i)) => {
                let mut e = [0; 4];
                e[i] = 1;
                Ok(Terms::from([(e, BigRational::one())]))
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                if self.bump() != Some(Tok::RParen) {
                    self.at -= 1;
                    return self.err("expected ')'");
                }
                Ok(inner)
            }
            Some(_) => {
                self.at -= 1;
                self.err("expected a number, a variable or '('")
            }
            None => self.err("unexpected end of input"),
        }
    }
}

fn constant(c: BigRational) -> Terms {
    let mut t = Terms::new();
    if !c.is_zero() {
        t.insert([0; 4], c);
    }
    t
}

fn constant_value(t: &Terms) -> Option<BigRational> {
    match t.len() {
        0 => Some(BigRational::zero()),
        1 => t.get(&[0; 4]).cloned(),
        _ => None,
    }
}

pub(crate) fn add(a: &Terms, b: &Terms) -> Terms {
    let mut out = a.clone();
    for (e, v) in b {
        accumulate(&mut out, *e, v.clone());
    }
    out
}

pub(crate) fn sub(a: &Terms, b: &Terms) -> Terms {
    let mut out = a.clone();
    for (e, v) in b {
        accumulate(&mut out, *e, -v.clone());
    }
    out
}

pub(crate) fn mul(a: &Terms, b: &Terms) -> Terms {
    let mut out = Terms::new();
    for (ea, va) in a {
        for (eb, vb) in b {
            let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3]];
            accumulate(&mut out, e, va * vb);
        }
    }
    out
}

pub(crate) fn accumulate(t: &mut Terms, e: Exp, v: BigRational) {
    if v.is_zero() {
        return;
    }
    let slot = t.entry(e).or_insert_with(BigRational::zero);
    *slot += v;
    if slot.is_zero() {
        t.remove(&e);
    }
}

/// Parses arbitrary (possibly inhomogeneous) polynomial text into a term map.
pub(crate) fn parse_terms(text: &str) -> Result<Terms> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(Error::Parse { pos: 0, msg: "empty input".into() });
    }
    let mut p = Parser { toks, at: 0, end: text.len() };
    p.input()
}
