//! Text syntax for cyclotomic numbers: `E(n)` is zeta_n, with `+ - * / ^`,
//! integer literals and parentheses, e.g. `(E(8)+E(8)^7)/2`.

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use super::{CycNum, CycloError, MAX_CONDUCTOR};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("column {column}: {message}")]
pub struct ExprError {
    /// 1-based column within the parsed text.
    pub column: usize,
    pub message: String,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

type PResult<T> = Result<T, ExprError>;

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> PResult<T> {
        Err(ExprError { column: self.pos + 1, message: msg.into() })
    }

    fn lift<T>(&self, r: Result<T, CycloError>) -> PResult<T> {
        r.or_else(|e| self.err(e.to_string()))
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

    fn expect(&mut self, c: u8) -> PResult<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn integer(&mut self) -> PResult<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digits parse as integer"))
    }

    fn small_int(&mut self) -> PResult<i64> {
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let v = self.integer()?;
        let v: i64 = match i64::try_from(v) {
            Ok(v) => v,
            Err(_) => return self.err("integer too large"),
        };
        Ok(if neg { -v } else { v })
    }

    fn expr(&mut self) -> PResult<CycNum> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = self.lift(acc.try_add(&rhs))?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = self.lift(acc.try_sub(&rhs))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> PResult<CycNum> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = self.lift(acc.try_mul(&rhs))?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let rhs = self.unary()?;
                    acc = acc.try_div(&rhs).map_err(|e| ExprError { column: at + 1, message: e.to_string() })?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> PResult<CycNum> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> PResult<CycNum> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = if self.peek() == Some(b'(') {
                self.pos += 1;
                let e = self.small_int()?;
                self.expect(b')')?;
                e
            } else {
                self.small_int()?
            };
            return self.lift(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> PResult<CycNum> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')')?;
                Ok(v)
            }
            Some(b'E') => {
                self.pos += 1;
                self.expect(b'(')?;
                let at = self.pos;
                let n = self.integer()?;
                self.expect(b')')?;
                match u32::try_from(n) {
                    Ok(n) if (1..=MAX_CONDUCTOR).contains(&n) => Ok(CycNum::root_of_unity(n, 1)),
                    _ => Err(ExprError { column: at + 1, message: format!("E(n) needs 1 <= n <= {MAX_CONDUCTOR}") }),
                }
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(CycNum::from_rational(BigRational::from_integer(n)))
            }
            Some(c) => self.err(format!("unexpected '{}'", c as char)),
            None => self.err("unexpected end of expression"),
        }
    }
}

/// Parses a cyclotomic expression such as `2 + 4*E(3)^2` or `-(E(8)+E(8)^7)/2`.
pub fn parse_cyc(text: &str) -> Result<CycNum, ExprError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let v = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(v)
}
