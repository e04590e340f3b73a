//! Text syntax for scalars: integers, `q`, `^` with signed integer exponents,
//! `+ - * /`, parentheses and juxtaposition.

use std::str::FromStr;

use num_bigint::BigInt;

use super::laurent::LaurentPoly;
use super::ratfunc::RatFunc;
use super::ScalarError;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
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

    fn err(&self, msg: &str) -> ScalarError {
        ScalarError::Syntax {
            offset: self.pos,
            message: msg.to_string(),
        }
    }

    fn expr(&mut self) -> Result<RatFunc, ScalarError> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                b'-' => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFunc, ScalarError> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    acc = acc * self.unary()?;
                }
                b'/' => {
                    self.pos += 1;
                    let d = self.unary()?;
                    acc = acc.checked_div(&d)?;
                }
                b'q' | b'(' | b'0'..=b'9' => {
                    acc = acc * self.unary()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RatFunc, ScalarError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        if self.peek() == Some(b'+') {
            self.pos += 1;
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFunc, ScalarError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.signed_int()?;
            let e = i32::try_from(e).map_err(|_| self.err("exponent out of range"))?;
            if e < 0 && base.is_zero() {
                return Err(ScalarError::DivisionByZero);
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn signed_int(&mut self) -> Result<i64, ScalarError> {
        let mut neg = false;
        if self.peek() == Some(b'-') {
            neg = true;
            self.pos += 1;
        } else if self.peek() == Some(b'(') {
            self.pos += 1;
            let v = self.signed_int()?;
            if self.peek() != Some(b')') {
                return Err(self.err("expected ')'"));
            }
            self.pos += 1;
            return Ok(v);
        }
        let n = self.digits()?;
        let v: i64 = n.parse().map_err(|_| self.err("integer out of range"))?;
        Ok(if neg { -v } else { v })
    }

    fn digits(&mut self) -> Result<String, ScalarError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn atom(&mut self) -> Result<RatFunc, ScalarError> {
        match self.peek() {
            Some(b'q') => {
                self.pos += 1;
                Ok(RatFunc::q())
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b'0'..=b'9') => {
                let d = self.digits()?;
                let n: BigInt = d.parse().map_err(|_| self.err("bad integer"))?;
                Ok(RatFunc::from_laurent(LaurentPoly::constant(n)))
            }
            _ => Err(self.err("expected integer, 'q' or '('")),
        }
    }
}

impl FromStr for RatFunc {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser {
            src: s.as_bytes(),
            pos: 0,
        };
        let v = p.expr()?;
        if p.peek().is_some() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_laurent_syntax() {
        let r: RatFunc = "q^3 - q^-1".parse().unwrap();
        assert_eq!(r, RatFunc::q_pow(3) - RatFunc::q_pow(-1));
        let r: RatFunc = "(q^2 - q^-2)/(q - q^-1)".parse().unwrap();
        assert_eq!(r, RatFunc::q_plus());
        let r: RatFunc = "-2*q^2 + 3".parse().unwrap();
        assert_eq!(r, RatFunc::monomial(-2, 2) + RatFunc::from_i64(3));
        let r: RatFunc = "2q".parse().unwrap();
        assert_eq!(r, RatFunc::monomial(2, 1));
    }

    #[test]
    fn reports_offset() {
        match "q + * 2".parse::<RatFunc>() {
            Err(ScalarError::Syntax { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!("1/(q-q)".parse::<RatFunc>(), Err(ScalarError::DivisionByZero));
    }
}
