//! Parser for the text rendering of Laurent polynomials.
//!
//! Accepts sums of products and quotients of integers, variables, and
//! parenthesized subexpressions, with integer powers. Division and negative
//! powers are only defined for single-term operands.

use num::BigInt;

use super::monomial::Vars;
use super::poly::LaurentPoly;
use super::{AlgebraError, Rational};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a Vars,
}

fn err(msg: impl Into<String>) -> AlgebraError {
    AlgebraError::Parse(msg.into())
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), AlgebraError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(err(format!("expected '{}' at offset {}", c as char, self.pos)))
        }
    }

    fn expr(&mut self) -> Result<LaurentPoly, AlgebraError> {
        let mut acc = if self.peek() == Some(b'-') {
            self.pos += 1;
            -self.term()?
        } else {
            if self.peek() == Some(b'+') {
                self.pos += 1;
            }
            self.term()?
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<LaurentPoly, AlgebraError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.power()?;
                    acc = &acc * &invert(&d)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<LaurentPoly, AlgebraError> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let negative = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let e = self.unsigned()?;
        let e: u32 = e
            .try_into()
            .map_err(|_| err("exponent out of range"))?;
        if negative {
            Ok(invert(&base)?.pow(e))
        } else {
            Ok(base.pow(e))
        }
    }

    fn unsigned(&mut self) -> Result<BigInt, AlgebraError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(err(format!("expected integer at offset {start}")));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        s.parse().map_err(|_| err("bad integer"))
    }

    fn atom(&mut self) -> Result<LaurentPoly, AlgebraError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.unsigned()?;
                Ok(LaurentPoly::constant(self.vars, Rational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                LaurentPoly::var(self.vars, name)
            }
            Some(c) => Err(err(format!("unexpected '{}' at offset {}", c as char, self.pos))),
            None => Err(err("unexpected end of input")),
        }
    }
}

fn invert(p: &LaurentPoly) -> Result<LaurentPoly, AlgebraError> {
    let (m, c) = p
        .as_term()
        .ok_or_else(|| err("can only divide by a single term"))?;
    Ok(LaurentPoly::term(p.vars(), m.inverse(), Rational::from_integer(1.into()) / c))
}

/// Parses `s` as a Laurent polynomial over `vars`.
pub fn parse_poly(s: &str, vars: &Vars) -> Result<LaurentPoly, AlgebraError> {
    let mut p = Parser {
        src: s.as_bytes(),
        pos: 0,
        vars,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(err(format!("trailing input at offset {}", p.pos)));
    }
    Ok(out)
}

/// Parses a rational written `p`, `p/q`, or as a finite decimal such as `2.5`.
pub fn parse_rational(s: &str) -> Result<Rational, AlgebraError> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| err(format!("bad rational '{s}'")))?;
        let d: BigInt = d.trim().parse().map_err(|_| err(format!("bad rational '{s}'")))?;
        if d == BigInt::from(0) {
            return Err(err("zero denominator"));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let negative = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches('-'), frac);
        let n: BigInt = digits.parse().map_err(|_| err(format!("bad decimal '{s}'")))?;
        let d = num::pow(BigInt::from(10), frac.len());
        let r = Rational::new(n, d);
        return Ok(if negative { -r } else { r });
    }
    let n: BigInt = s.parse().map_err(|_| err(format!("bad rational '{s}'")))?;
    Ok(Rational::from_integer(n))
}
