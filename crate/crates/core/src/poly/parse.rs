use std::collections::HashMap;
use std::sync::Arc;

use super::polynomial::Poly;
use super::ring::FlatRing;
use crate::error::{Error, Result};

/// Named shorthands expanded during parsing (e.g. `x = x11*x10*u`).
pub type Aliases = HashMap<String, Poly>;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Nat(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
}

struct Lexed {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(src: &str) -> Result<Vec<Lexed>> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut column = 0;
    let mut chars = src.chars().peekable();
    while let Some(ch) = chars.next() {
        column += 1;
        let (l, c) = (line, column);
        let tok = match ch {
            '\n' => {
                line += 1;
                column = 0;
                continue;
            }
            ch if ch.is_whitespace() => continue,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            ch if ch.is_ascii_digit() => {
                let mut s = ch.to_string();
                while let Some(&d) = chars.peek() {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    s.push(d);
                    chars.next();
                    column += 1;
                }
                Tok::Nat(s)
            }
            ch if ch.is_ascii_alphabetic() => {
                let mut s = ch.to_string();
                while let Some(&d) = chars.peek() {
                    if !(d.is_ascii_alphanumeric() || d == '_') {
                        break;
                    }
                    s.push(d);
                    chars.next();
                    column += 1;
                }
                Tok::Ident(s)
            }
            other => {
                return Err(Error::Parse {
                    line: l,
                    column: c,
                    message: format!("unexpected character '{other}'"),
                })
            }
        };
        out.push(Lexed {
            tok,
            line: l,
            column: c,
        });
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Lexed>,
    pos: usize,
    ring: &'a Arc<FlatRing>,
    aliases: Option<&'a Aliases>,
    end: (usize, usize),
}

impl<'a> Parser<'a> {
    fn err(&self, message: impl Into<String>) -> Error {
        let (line, column) = self
            .toks
            .get(self.pos)
            .map_or(self.end, |t| (t.line, t.column));
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn poly(&mut self) -> Result<Poly> {
        if self.toks.is_empty() {
            return Err(self.err("empty polynomial"));
        }
        let ring = self.ring;
        let field = ring.field();
        let mut acc = Poly::zero(ring);
        let mut sign = 1u32;
        if self.peek() == Some(&Tok::Minus) {
            sign = field.neg(1);
            self.pos += 1;
        } else if self.peek() == Some(&Tok::Plus) {
            self.pos += 1;
        }
        loop {
            let t = self.term()?;
            acc = acc.add_scaled(sign, &ring.one(), &t);
            match self.peek() {
                None => break,
                Some(Tok::Plus) => sign = 1,
                Some(Tok::Minus) => sign = field.neg(1),
                Some(_) => return Err(self.err("expected '+', '-' or end of input")),
            }
            self.pos += 1;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = Poly::one(self.ring);
        loop {
            let f = self.factor()?;
            acc = acc.mul_unchecked(&f);
            if self.peek() == Some(&Tok::Star) {
                self.pos += 1;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Poly> {
        let ring = self.ring;
        match self.peek().cloned() {
            Some(Tok::Nat(s)) => {
                self.pos += 1;
                let q = ring.modulus() as u64;
                let c = s
                    .bytes()
                    .fold(0u64, |acc, b| (acc * 10 + (b - b'0') as u64) % q);
                Ok(Poly::term(ring, ring.one(), c as u32))
            }
            Some(Tok::Ident(name)) => {
                let base = if let Some(i) = ring.var_index(&name) {
                    Poly::var(ring, i)
                } else if let Some(p) = self.aliases.and_then(|a| a.get(&name)) {
                    p.clone()
                } else {
                    return Err(self.err(format!("unknown identifier '{name}'")));
                };
                self.pos += 1;
                if self.peek() == Some(&Tok::Caret) {
                    self.pos += 1;
                    match self.peek().cloned() {
                        Some(Tok::Nat(e)) => {
                            let e: u32 = e
                                .parse()
                                .map_err(|_| self.err(format!("malformed exponent '{e}'")))?;
                            self.pos += 1;
                            if base.is_monomial() && base.leading_coeff() == 1 {
                                let m = base.leading_monomial().unwrap().pow(e);
                                return Ok(Poly::monomial(ring, m));
                            }
                            Ok(base.pow(e))
                        }
                        _ => Err(self.err("malformed exponent")),
                    }
                } else {
                    Ok(base)
                }
            }
            Some(_) => Err(self.err("expected a number or identifier")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

pub fn parse_poly(src: &str, ring: &Arc<FlatRing>) -> Result<Poly> {
    parse_poly_with(src, ring, None)
}

/// Parses with optional alias expansion.
pub fn parse_poly_with(src: &str, ring: &Arc<FlatRing>, aliases: Option<&Aliases>) -> Result<Poly> {
    let toks = lex(src)?;
    let lines: Vec<&str> = src.split('\n').collect();
    let end = (lines.len(), lines.last().map_or(0, |l| l.chars().count()) + 1);
    let mut p = Parser {
        toks,
        pos: 0,
        ring,
        aliases,
        end,
    };
    p.poly()
}

