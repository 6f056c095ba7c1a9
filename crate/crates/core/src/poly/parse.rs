//! Recursive-descent parser for polynomial text.
//!
//! Grammar: `expr := term (("+"|"-") term)*`, `term := unary (("*"|"/")? unary)*`,
//! `unary := "-" unary | "+" unary | atom ("^" integer)?`, `atom := number | name | "(" expr ")"`.
//! Juxtaposition means multiplication, so `331776 x^6` and `4*p*y0` both parse.
//! Division is only allowed by nonzero constants.

use num_traits::Zero;

use super::{MultiPoly, Ring};
use crate::error::{Error, Result};
use crate::rational::parse_rational;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Name(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '+' => {
                toks.push(Tok::Plus);
                i += 1
            }
            '-' => {
                toks.push(Tok::Minus);
                i += 1
            }
            '*' => {
                toks.push(Tok::Star);
                i += 1
            }
            '/' => {
                toks.push(Tok::Slash);
                i += 1
            }
            '^' => {
                toks.push(Tok::Caret);
                i += 1
            }
            '(' => {
                toks.push(Tok::LParen);
                i += 1
            }
            ')' => {
                toks.push(Tok::RParen);
                i += 1
            }
            c if c.is_ascii_digit() || c == '.' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                    i += 1;
                }
                toks.push(Tok::Num(chars[start..i].iter().collect()));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                toks.push(Tok::Name(chars[start..i].iter().collect()));
            }
            other => return Err(Error::Parse(format!("unexpected character `{other}` at offset {i}"))),
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    ring: &'a Ring,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<MultiPoly> {
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

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let d = self.unary()?;
                    if !d.is_constant() || d.is_zero() {
                        return Err(Error::Parse("division is only allowed by nonzero constants".into()));
                    }
                    let c = d.coeff(&super::Monomial::one(self.ring.len()));
                    acc = acc.scale(&num_traits::Inv::inv(c));
                }
                Some(Tok::Num(_)) | Some(Tok::Name(_)) | Some(Tok::LParen) => {
                    acc = &acc * &self.unary()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => {
                let base = self.atom()?;
                if self.peek() == Some(&Tok::Caret) {
                    self.pos += 1;
                    match self.next() {
                        Some(Tok::Num(n)) => {
                            let e: u32 =
                                n.parse().map_err(|_| Error::Parse(format!("bad exponent `{n}`")))?;
                            Ok(base.pow(e))
                        }
                        other => Err(Error::Parse(format!("expected exponent, found {other:?}"))),
                    }
                } else {
                    Ok(base)
                }
            }
        }
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        match self.next() {
            Some(Tok::Num(n)) => {
                let q = parse_rational(&n)?;
                Ok(MultiPoly::constant(self.ring, q))
            }
            Some(Tok::Name(v)) => MultiPoly::var(self.ring, &v),
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

pub(super) fn parse_poly(text: &str, ring: &Ring) -> Result<MultiPoly> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty polynomial text".into()));
    }
    let mut parser = Parser { toks, pos: 0, ring };
    let p = parser.expr()?;
    if parser.pos != parser.toks.len() {
        return Err(Error::Parse(format!("trailing input at token {}", parser.pos)));
    }
    debug_assert!(p.terms().all(|(_, c)| !c.is_zero()));
    Ok(p)
}
