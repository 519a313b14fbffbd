//! Element grammar: `-12`, `3/4`, `2*x1*x2 - x2 + 1`.
//!
//! `*` is mandatory between factors and variables are `x1`..`x9`.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::ring::Ring;
use super::scalar::Scalar;
use crate::error::{Error, Result};

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, msg: &str) -> Error {
        Error::invalid(
            "element",
            format!("{msg} at offset {} in {:?}", self.pos, String::from_utf8_lossy(self.src)),
        )
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        Ok(s.parse().expect("digits parse"))
    }
}

pub fn parse_element(ring: Ring, text: &str) -> Result<Scalar> {
    let mut c = Cursor { src: text.as_bytes(), pos: 0 };
    let mut total = Scalar::zero(ring);
    let mut first = true;
    loop {
        let negative = match c.peek() {
            Some(b'+') => {
                c.pos += 1;
                false
            }
            Some(b'-') => {
                c.pos += 1;
                true
            }
            None if first => return Err(c.err("empty element")),
            None => break,
            Some(_) if first => false,
            Some(_) => return Err(c.err("expected '+' or '-'")),
        };
        first = false;
        let term = parse_term(&mut c, ring)?;
        total = if negative { &total - &term } else { &total + &term };
        if c.peek().is_none() {
            break;
        }
    }
    Ok(total)
}

fn parse_term(c: &mut Cursor<'_>, ring: Ring) -> Result<Scalar> {
    let mut value = parse_factor(c, ring)?;
    while c.peek() == Some(b'*') {
        c.pos += 1;
        let f = parse_factor(c, ring)?;
        value = &value * &f;
    }
    match c.peek() {
        None | Some(b'+') | Some(b'-') => Ok(value),
        Some(_) => Err(c.err("juxtaposition is not allowed; use '*'")),
    }
}

fn parse_factor(c: &mut Cursor<'_>, ring: Ring) -> Result<Scalar> {
    match c.peek() {
        Some(b'x') => {
            c.pos += 1;
            let d = c.src.get(c.pos).copied();
            match d {
                Some(d @ b'1'..=b'9') => {
                    c.pos += 1;
                    if c.src.get(c.pos).is_some_and(u8::is_ascii_digit) {
                        return Err(c.err("variables are x1..x9"));
                    }
                    Scalar::variable(ring, (d - b'1') as usize)
                }
                _ => Err(c.err("expected variable index 1..9")),
            }
        }
        Some(b'0'..=b'9') => {
            let num = c.digits()?;
            if c.peek() == Some(b'/') {
                c.pos += 1;
                let den = c.digits()?;
                if den == BigInt::from(0) {
                    return Err(c.err("zero denominator"));
                }
                Scalar::from_rational(ring, &BigRational::new(num, den))
                    .map_err(|e| c.err(&format!("fraction not in {ring}: {e}")))
            } else {
                Ok(Scalar::from_bigint(ring, &num))
            }
        }
        _ => Err(c.err("expected number or variable")),
    }
}
