use num_bigint::BigInt;

use super::bivar::BivarPoly;
use super::field::BaseField;
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    X,
    Y,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = s.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().map(|(_, c)| *c).collect();
                out.push((pos, Tok::Num(digits.parse().unwrap())));
                continue;
            }
            'x' | 'X' => Tok::X,
            'y' | 'Y' => Tok::Y,
            '+' => Tok::Plus,
            '-' | '\u{2212}' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => return Err(Error::Parse(format!("unexpected character `{c}` at {pos}"))),
        };
        out.push((pos, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    field: BaseField,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> String {
        match self.toks.get(self.pos) {
            Some((p, _)) => format!("position {p}"),
            None => "end of input".to_string(),
        }
    }

    fn err<T>(&self, what: &str) -> Result<T> {
        Err(Error::Parse(format!("{what} at {}", self.here())))
    }

    fn expr(&mut self) -> Result<BivarPoly> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                self.term()?.neg()
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<BivarPoly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let d = self.factor()?;
                    acc = acc.scale(&self.y_free_inverse(&d)?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn y_free_inverse(&self, d: &BivarPoly) -> Result<RatFunc> {
        if !d.is_y_free() {
            return self.err("division by a polynomial involving y");
        }
        d.coeff(0).inv().or_else(|_| self.err("division by zero"))
    }

    fn factor(&mut self) -> Result<BivarPoly> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let n = match self.peek() {
            Some(Tok::Num(n)) => n.clone(),
            _ => return self.err("expected an integer exponent"),
        };
        self.pos += 1;
        let n: u32 = match u32::try_from(&n) {
            Ok(n) if n <= 10_000 => n,
            _ => return self.err("exponent too large"),
        };
        if neg {
            let inv = self.y_free_inverse(&base)?;
            Ok(BivarPoly::constant(inv.pow(n as i64).unwrap()))
        } else {
            Ok(base.pow(n))
        }
    }

    fn atom(&mut self) -> Result<BivarPoly> {
        let tok = match self.peek() {
            Some(t) => t.clone(),
            None => return self.err("expected a term"),
        };
        self.pos += 1;
        match tok {
            Tok::Num(n) => Ok(BivarPoly::elem(self.field.from_bigint(&n))),
            Tok::X => Ok(BivarPoly::x(self.field)),
            Tok::Y => Ok(BivarPoly::y(self.field)),
            Tok::LParen => {
                let e = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(e)
            }
            Tok::Minus => Ok(self.factor()?.neg()),
            _ => {
                self.pos -= 1;
                self.err("unexpected token")
            }
        }
    }
}

/// Parses a polynomial in `y` over `k(x)` written with `+ - * / ^` and parentheses.
///
/// Division is allowed only by nonzero expressions free of `y`; integer literals
/// are read in the base field, so `1/2` over `Fp:7` is `4`.
pub fn parse_poly(s: &str, field: BaseField) -> Result<BivarPoly> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty polynomial".to_string()));
    }
    let mut p = Parser { toks, pos: 0, field };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}
