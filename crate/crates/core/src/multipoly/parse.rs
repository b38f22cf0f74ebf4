use num_bigint::BigInt;

use super::{MultiPoly, Ring};
use crate::arith::Rat;
use crate::error::{Error, Result};

/// Parses a polynomial.
///
/// Grammar: rationals `a` or `a/b`, variable names, `+ - * ^`, parentheses.
/// Exponents are non-negative integers. Juxtaposition is an error.
pub fn parse(src: &str, ring: &Ring) -> Result<MultiPoly> {
    let mut p = Parser { src: src.as_bytes(), pos: 0, ring };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err(match p.src[p.pos] {
            c if c.is_ascii_alphanumeric() || c == b'(' => "implicit multiplication is not allowed",
            _ => "unexpected character",
        }));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a Ring,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -&self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.signed_term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.signed_term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    // allows `x + -y`
    fn signed_term(&mut self) -> Result<MultiPoly> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-&self.signed_term()?);
        }
        self.term()
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.power()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.power()?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.digits().ok_or_else(|| self.err("expected exponent"))?;
            let e: u32 = e.parse().map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = self.digits().expect("digit").parse().expect("digits");
                let save = self.pos;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let den: BigInt = match self.digits() {
                        Some(d) => d.parse().expect("digits"),
                        None => return Err(self.err("expected denominator")),
                    };
                    if den == BigInt::from(0) {
                        self.pos = save;
                        return Err(self.err("zero denominator"));
                    }
                    return Ok(MultiPoly::constant(self.ring, Rat::new(num, den)));
                }
                Ok(MultiPoly::constant(self.ring, Rat::from_integer(num)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                let idx = self.ring.index(name)?;
                Ok(MultiPoly::var(self.ring, idx))
            }
            Some(_) => Err(self.err("expected a number, variable or `(`")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}
