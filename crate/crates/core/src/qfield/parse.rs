//! Parser for the textual form of field elements.
//!
//! Grammar (whitespace is insignificant):
//!
//! ```text
//! elem  := "0" | poly | "(" poly ")" "/" "(" poly ")"
//! poly  := ["-"] term (("+" | "-") term)*
//! term  := coeff | [coeff "*"] "u" ["^" int]
//! coeff := digits | "(" ["-"] digits "/" digits ")"
//! ```

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::elem::FieldElem;
use super::upoly::UPoly;
use crate::error::{Error, Result};

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {}", self.pos))
    }

    fn digits(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().map_or(false, |c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii");
        Ok(txt.parse().expect("digit run"))
    }

    fn int(&mut self) -> Result<i64> {
        let neg = self.eat(b'-');
        let d = self.digits()?;
        let v: i64 = d.try_into().map_err(|_| self.err("exponent out of range"))?;
        Ok(if neg { -v } else { v })
    }

    /// A coefficient in parentheses: "(a/b)" or "(-a/b)".
    fn paren_rational(&mut self) -> Result<BigRational> {
        self.expect(b'(')?;
        let neg = self.eat(b'-');
        let n = self.digits()?;
        let d = if self.eat(b'/') { self.digits()? } else { BigInt::one() };
        self.expect(b')')?;
        if d.is_zero() {
            return Err(self.err("zero denominator in coefficient"));
        }
        let r = BigRational::new(n, d);
        Ok(if neg { -r } else { r })
    }

    fn term(&mut self) -> Result<UPoly> {
        let coeff = match self.peek() {
            Some(c) if c.is_ascii_digit() => Some(BigRational::from_integer(self.digits()?)),
            Some(b'(') => Some(self.paren_rational()?),
            _ => None,
        };
        let has_u = if coeff.is_some() {
            if self.eat(b'*') {
                if self.peek() != Some(b'u') {
                    return Err(self.err("expected 'u' after '*'"));
                }
                true
            } else {
                false
            }
        } else {
            true
        };
        let c = coeff.unwrap_or_else(BigRational::one);
        if !has_u {
            return Ok(UPoly::constant(c));
        }
        self.expect(b'u')?;
        let p = if self.eat(b'^') { self.int()? } else { 1 };
        Ok(UPoly::monomial(c, p))
    }

    fn poly(&mut self) -> Result<UPoly> {
        let mut neg = self.eat(b'-');
        let mut acc = UPoly::zero();
        loop {
            let t = self.term()?;
            acc = if neg { acc.sub(&t) } else { acc.add(&t) };
            neg = match self.peek() {
                Some(b'+') => false,
                Some(b'-') => true,
                _ => break,
            };
            self.pos += 1;
        }
        Ok(acc)
    }
}

fn parse(text: &str) -> Result<FieldElem> {
    let compact: Vec<u8> = text.bytes().filter(|c| !c.is_ascii_whitespace()).collect();
    let mut cur = Cursor { s: &compact, pos: 0 };
    if compact.is_empty() {
        return Err(Error::Parse("empty input".into()));
    }
    let value = if compact.starts_with(b"(") && compact.contains(&b'/') && compact.ends_with(b")") {
        // Try the fraction form first, fall back to a bare polynomial
        // such as "(1/2)*u".
        let save = cur.pos;
        match parse_fraction(&mut cur) {
            Ok(v) => v,
            Err(_) => {
                cur.pos = save;
                FieldElem::from_upoly(&cur.poly()?)
            }
        }
    } else {
        FieldElem::from_upoly(&cur.poly()?)
    };
    if cur.pos != compact.len() {
        return Err(cur.err("trailing input"));
    }
    Ok(value)
}

fn parse_fraction(cur: &mut Cursor<'_>) -> Result<FieldElem> {
    cur.expect(b'(')?;
    let n = cur.poly()?;
    cur.expect(b')')?;
    cur.expect(b'/')?;
    cur.expect(b'(')?;
    let d = cur.poly()?;
    cur.expect(b')')?;
    if cur.pos != cur.s.len() {
        return Err(cur.err("trailing input"));
    }
    FieldElem::from_fraction(&n, &d).map_err(|_| Error::Parse("zero denominator".into()))
}

impl FromStr for FieldElem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfield::scalars::{q_factorial, q_int};

    #[test]
    fn parses_documented_examples() {
        let a: FieldElem = "(-1 + u^2)/(2)".parse().unwrap();
        assert_eq!(a.to_string(), "(-1 + u^2)/(2)");
        let b: FieldElem = "2*u^3".parse().unwrap();
        assert_eq!(b, FieldElem::u_pow(3).scale_rational(&BigRational::from_integer(2.into())));
        let z: FieldElem = "0".parse().unwrap();
        assert!(z.is_zero());
        let h: FieldElem = "(1/2)*u - u^-1".parse().unwrap();
        assert_eq!(h.to_string(), "(-2 + u^2)/(2*u)");
    }

    #[test]
    fn round_trips() {
        let x = &q_int(5) / &q_factorial(4);
        let y: FieldElem = x.to_string().parse().unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn rejects_garbage() {
        assert!("".parse::<FieldElem>().is_err());
        assert!("(1)/(0)".parse::<FieldElem>().is_err());
        assert!("1 + ".parse::<FieldElem>().is_err());
        assert!("u^".parse::<FieldElem>().is_err());
        assert!("x".parse::<FieldElem>().is_err());
    }
}
