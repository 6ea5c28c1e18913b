//! Reader for the ASCII polynomial grammar.
//!
//! ```text
//! poly   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := int ['/' int] | 'x' int ['_' int] ['^' int]
//! ```
//! Whitespace is insignificant. `x3_2` is the jet variable `x_3^{(2)}`.

use alloc::format;
use alloc::string::ToString;

use num_bigint::BigInt;

use super::{JetVariable, Monomial, Polynomial};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    s: u32,
    spec: FieldSpec,
}

/// Parses `src` over `field` with base variables `x1..xs`.
pub fn parse_poly(src: &str, s: u32, field: FieldSpec) -> Result<Polynomial> {
    let mut p = Parser { src: src.as_bytes(), pos: 0, s, spec: field };
    let out = p.poly()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.syntax(format!("unexpected {:?}", p.src[p.pos] as char)));
    }
    Ok(out)
}

impl Parser<'_> {
    fn syntax(&self, msg: alloc::string::String) -> Error {
        Error::SyntaxError { pos: self.pos, msg }
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn poly(&mut self) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(self.spec, self.s);
        let mut negate = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        loop {
            let t = self.term()?;
            acc = if negate { &acc - &t } else { &acc + &t };
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    negate = false;
                }
                Some(b'-') => {
                    self.pos += 1;
                    negate = true;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut coeff = self.spec.one();
        let mut mono = Monomial::one();
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => coeff = &coeff * &self.number()?,
                Some(b'x') => mono = mono.mul(&self.power()?),
                Some(c) => return Err(self.syntax(format!("expected a number or variable, found {:?}", c as char))),
                None => return Err(self.syntax("unexpected end of input".to_string())),
            }
            if !self.eat(b'*') {
                break;
            }
        }
        Ok(Polynomial::monomial(mono, coeff, self.s))
    }

    fn digits(&mut self, what: &str) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.syntax(format!("expected {what}")));
        }
        let text = core::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digits"))
    }

    fn number(&mut self) -> Result<FieldElement> {
        let num = self.digits("digits")?;
        if self.eat(b'/') {
            let den = self.digits("denominator")?;
            return Ok(self.spec.from_fraction(&num, &den)?);
        }
        Ok(self.spec.from_bigint(&num))
    }

    fn small(&mut self, what: &str) -> Result<(usize, u32)> {
        // indices and exponents follow their marker directly
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::SyntaxError { pos: start, msg: format!("expected {what}") });
        }
        let text = core::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        let v = text
            .parse::<u32>()
            .map_err(|_| Error::SyntaxError { pos: start, msg: format!("{what} too large") })?;
        Ok((start, v))
    }

    fn power(&mut self) -> Result<Monomial> {
        let name_start = self.pos;
        self.pos += 1; // 'x'
        let (_, base) = self.small("variable index")?;
        let mut order = 0;
        if self.src.get(self.pos) == Some(&b'_') {
            self.pos += 1;
            order = self.small("jet order")?.1;
        }
        if base == 0 || base > self.s {
            let name = core::str::from_utf8(&self.src[name_start..self.pos]).expect("ascii");
            return Err(Error::UnknownVariable { pos: name_start, name: name.to_string() });
        }
        let mut exp = 1;
        if self.eat(b'^') {
            self.skip_ws();
            if self.src.get(self.pos) == Some(&b'-') {
                return Err(Error::BadExponent { pos: self.pos });
            }
            exp = self.small("exponent")?.1;
        }
        Ok(Monomial::var(JetVariable::new(base, order), exp))
    }
}
