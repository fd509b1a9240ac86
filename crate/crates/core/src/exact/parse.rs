//! Text grammar for bivariate polynomials.
//!
//! Terms joined by `+`/`-`; term = [coefficient `*`] [`x`[`^`int]] [`*`]
//! [`y`[`^`int]]; coefficient = integer or `int/int`. Whitespace ignored.

use num_bigint::BigInt;

use super::{BiPoly, Monomial2, Rational};
use crate::error::{Error, Result};

struct Scanner<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(text: &'a str) -> Self {
        Scanner {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(Error::Parse {
                pos: start,
                msg: "expected integer".into(),
            });
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        Ok(text.parse().unwrap())
    }

    fn exponent(&mut self) -> Result<u32> {
        self.skip_ws();
        if self.peek() == Some(b'-') {
            return Err(Error::NegativeExponent { pos: self.pos });
        }
        let pos = self.pos;
        let n = self.integer()?;
        u32::try_from(&n).map_err(|_| Error::Parse {
            pos,
            msg: "exponent too large".into(),
        })
    }
}

/// Parse polynomial text; the returned support and coefficients match the
/// text exactly (after combining like terms).
pub fn parse_bipoly(text: &str) -> Result<BiPoly> {
    let mut sc = Scanner::new(text);
    let mut terms: Vec<(Monomial2, Rational)> = Vec::new();
    let mut first = true;
    loop {
        let sign = match sc.peek() {
            None if first => {
                return Err(Error::Parse {
                    pos: sc.pos,
                    msg: "empty input".into(),
                })
            }
            None => break,
            Some(b'+') => {
                sc.bump();
                1
            }
            Some(b'-') => {
                sc.bump();
                -1
            }
            Some(_) if first => 1,
            Some(c) => {
                return Err(Error::Parse {
                    pos: sc.pos,
                    msg: format!("expected '+' or '-', found {:?}", c as char),
                })
            }
        };
        first = false;
        let (m, c) = parse_term(&mut sc)?;
        terms.push((m, c * Rational::from_integer(BigInt::from(sign))));
    }
    Ok(BiPoly::from_terms(terms))
}

fn parse_term(sc: &mut Scanner<'_>) -> Result<(Monomial2, Rational)> {
    let mut coef = Rational::from_integer(BigInt::from(1));
    let mut saw_anything = false;

    if matches!(sc.peek(), Some(c) if c.is_ascii_digit()) {
        let num = sc.integer()?;
        let den = if sc.peek() == Some(b'/') {
            sc.bump();
            let pos = sc.pos;
            let d = sc.integer()?;
            if d == BigInt::from(0) {
                return Err(Error::Parse {
                    pos,
                    msg: "zero denominator".into(),
                });
            }
            d
        } else {
            BigInt::from(1)
        };
        coef = Rational::new(num, den);
        saw_anything = true;
        if sc.peek() == Some(b'*') {
            sc.bump();
        }
    }

    let mut s = 0u32;
    let mut t = 0u32;
    if sc.peek() == Some(b'x') {
        sc.bump();
        s = if sc.peek() == Some(b'^') {
            sc.bump();
            sc.exponent()?
        } else {
            1
        };
        saw_anything = true;
        if sc.peek() == Some(b'*') {
            sc.bump();
        }
    }
    if sc.peek() == Some(b'y') {
        sc.bump();
        t = if sc.peek() == Some(b'^') {
            sc.bump();
            sc.exponent()?
        } else {
            1
        };
        saw_anything = true;
    }

    if !saw_anything {
        return Err(Error::Parse {
            pos: sc.pos,
            msg: "expected a term".into(),
        });
    }
    Ok((Monomial2::new(s, t), coef))
}
