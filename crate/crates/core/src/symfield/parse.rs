//! Parser for the canonical string encoding (and ordinary infix input).
//!
//! Grammar: sums and differences of products and quotients of powers of
//! atoms. Atoms are integer literals, the variables `a<i>`, `h`, `q<i>`,
//! or parenthesized expressions. Exponents are nonnegative integers.

use alloc::format;
use alloc::string::String;

use num_bigint::BigInt;

use super::monomial::{Var, MAX_RANK};
use super::ratfunc::RatFunc;
use super::Rational;
use crate::Error;

pub fn parse_ratfunc(src: &str) -> Result<RatFunc, Error> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {}", self.pos))
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

    fn expr(&mut self) -> Result<RatFunc, Error> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFunc, Error> {
        let mut acc = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if c == b'*' {
                &acc * &rhs
            } else {
                acc.checked_div(&rhs)?
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RatFunc, Error> {
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

    fn power(&mut self) -> Result<RatFunc, Error> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.uint()?;
            let e: u32 = e.try_into().map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn uint(&mut self) -> Result<u64, Error> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        let s = core::str::from_utf8(&self.src[start..self.pos]).unwrap();
        s.parse().map_err(|_| self.error("integer out of range"))
    }

    fn atom(&mut self) -> Result<RatFunc, Error> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let s = core::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let n: BigInt = s.parse().map_err(|_| self.error("bad integer"))?;
                Ok(RatFunc::constant(Rational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let ident = String::from_utf8_lossy(&self.src[start..self.pos]).into_owned();
                let var = parse_var(&ident).ok_or_else(|| {
                    Error::Parse(format!("unknown variable '{ident}' at offset {start}"))
                })?;
                Ok(RatFunc::var(var))
            }
            _ => Err(self.error("expected a number, variable or '('")),
        }
    }
}

pub fn parse_var(ident: &str) -> Option<Var> {
    if ident == "h" {
        return Some(Var::H);
    }
    let (kind, idx) = ident.split_at(1);
    let i: usize = idx.parse().ok()?;
    if i == 0 || i > MAX_RANK || idx.starts_with('0') {
        return None;
    }
    match kind {
        "a" => Some(Var::A(i - 1)),
        "q" => Some(Var::Q(i - 1)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfield::{rat, Poly};
    use alloc::string::ToString;

    #[test]
    fn parses_canonical_form() {
        let f = parse_ratfunc("(2/3)*a1^2*h - q1").unwrap();
        assert_eq!(f.to_string(), "(2/3)*a1^2*h - q1");
        let g = parse_ratfunc("(-q1^2 - q1)/(q1 - 1)").unwrap();
        assert_eq!(g.to_string(), "(-q1^2 - q1)/(q1 - 1)");
    }

    #[test]
    fn precedence() {
        let f = parse_ratfunc("-a1^2 + 2*h").unwrap();
        let a1 = Poly::var(Var::A(0));
        assert_eq!(
            f.into_poly().unwrap(),
            -(&a1 * &a1) + Poly::var(Var::H).scale(&rat(2, 1))
        );
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_ratfunc("a0").is_err());
        assert!(parse_ratfunc("x1 + 1").is_err());
        assert!(parse_ratfunc("(a1").is_err());
        assert!(parse_ratfunc("a1 / 0").is_err());
        assert!(parse_ratfunc("a1 a2").is_err());
    }
}
