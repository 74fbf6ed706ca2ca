//! Recursive-descent parser for polynomial expressions such as
//! `x1*y1 - 3*x2^2 + (x+y)^2`.

use super::monomial::Monomial;
use super::poly::{Poly, PolyRing};
use crate::error::{Error, Result};

/// Parses `text` as a polynomial over `ring`. `line` and `col0` locate the
/// text inside a larger file for error messages (both 1-based).
pub fn parse_poly(ring: &PolyRing, text: &str, line: usize, col0: usize) -> Result<Poly> {
    let mut p = Parser { ring, chars: text.char_indices().collect(), pos: 0, line, col0 };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error(format!("unexpected '{}'", p.chars[p.pos].1)));
    }
    Ok(out)
}

/// Splits a comma-separated list at top level (ignoring commas in parentheses),
/// returning each piece with its 0-based column offset.
pub fn split_list(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push((start, &text[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push((start, &text[start..]));
    out.retain(|(_, s)| !s.trim().is_empty());
    out
}

struct Parser<'a> {
    ring: &'a PolyRing,
    chars: Vec<(usize, char)>,
    pos: usize,
    line: usize,
    col0: usize,
}

impl Parser<'_> {
    fn error(&self, msg: String) -> Error {
        let col = self.chars.get(self.pos).map_or_else(
            || self.chars.last().map_or(0, |c| c.0 + 1),
            |c| c.0,
        );
        Error::Parse { line: self.line, col: self.col0 + col, msg }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].1.is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|c| c.1)
    }

    fn expr(&mut self) -> Result<Poly> {
        let f = self.ring.field;
        let mut acc = match self.peek() {
            Some('-') => {
                self.pos += 1;
                self.term()?.neg(&f)
            }
            Some('+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = acc.add(&f, &self.term()?);
                }
                Some('-') => {
                    self.pos += 1;
                    acc = acc.sub(&f, &self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let f = self.ring.field;
        let mut acc = self.factor()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            acc = acc.mul(&f, &self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.base()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            if e > 127 {
                return Err(self.error(format!("exponent {e} too large")));
            }
            return Ok(base.pow(&self.ring.field, e as u32));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<u64> {
        let start = self.pos;
        let mut v: u64 = 0;
        while let Some(&(_, c)) = self.chars.get(self.pos) {
            match c.to_digit(10) {
                Some(d) => {
                    v = v.checked_mul(10).and_then(|v| v.checked_add(d as u64)).ok_or_else(|| self.error("integer too large".into()))?;
                    self.pos += 1;
                }
                None => break,
            }
        }
        if self.pos == start {
            return Err(self.error("expected an integer".into()));
        }
        Ok(v)
    }

    fn base(&mut self) -> Result<Poly> {
        let f = self.ring.field;
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'".into()));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.integer()?;
                Ok(Poly::constant(f.elem((v % f.p() as u64) as i64)))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while let Some(&(_, c)) = self.chars.get(self.pos) {
                    if c.is_alphanumeric() || c == '_' || c == '\'' {
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                let name: String = self.chars[start..self.pos].iter().map(|c| c.1).collect();
                match self.ring.names.iter().position(|n| *n == name) {
                    Some(i) => Ok(Poly::term(Monomial::var(i), 1)),
                    None => {
                        self.pos = start;
                        Err(self.error(format!("unknown variable '{name}'")))
                    }
                }
            }
            Some(c) => Err(self.error(format!("unexpected '{c}'"))),
            None => Err(self.error("unexpected end of expression".into())),
        }
    }
}
