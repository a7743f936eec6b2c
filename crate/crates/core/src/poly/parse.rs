//! Text syntax for polynomials.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (('*' factor) | ('/' integer))*
//! factor := atom ['^' integer]
//! atom   := integer ['u'] | 'u' | var | '(' expr ')' | '(' expr (',' expr)+ ')'
//! var    := letter digits | a declared name
//! ```
//!
//! Variables are positional: `x3`, `t3` and `z3` all denote the third one.
//! `u` is the nilpotent generator of a dual-number ring, and a parenthesized
//! tuple is a constant of a product ring.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::Poly;
use crate::coeff::{CoeffRing, CoeffValue};
use crate::error::{parse_err, Result};

pub fn parse_poly(text: &str, ring: CoeffRing, nvars: usize) -> Result<Poly> {
    parse_poly_named(text, ring, nvars, &[])
}

/// Like [`parse_poly`], additionally resolving the given variable names.
pub fn parse_poly_named(text: &str, ring: CoeffRing, nvars: usize, names: &[String]) -> Result<Poly> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, ring, nvars, names };
    p.skip_ws();
    if p.pos == p.src.len() {
        return Err(parse_err(0, "empty polynomial"));
    }
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(parse_err(p.pos, format!("unexpected `{}`", p.src[p.pos] as char)));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: CoeffRing,
    nvars: usize,
    names: &'a [String],
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = Poly::zero(self.ring, self.nvars);
        let mut negate = false;
        match self.peek() {
            Some(b'-') => {
                negate = true;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        loop {
            let t = self.term()?;
            acc = if negate { &acc - &t } else { &acc + &t };
            match self.peek() {
                Some(b'+') => {
                    negate = false;
                    self.pos += 1;
                }
                Some(b'-') => {
                    negate = true;
                    self.pos += 1;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let start = self.pos;
                    let den = self.integer()?;
                    let inv = self
                        .ring
                        .from_ratio(&BigInt::from(1), &den)
                        .map_err(|_| parse_err(start, "division by a non-invertible integer"))?;
                    acc = acc.scale(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let start = self.pos;
            let e = self.integer()?;
            let e: u32 = e.try_into().map_err(|_| parse_err(start, "exponent out of range"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(parse_err(start, "expected an integer"));
        }
        let s = core::str::from_utf8(&self.src[start..self.pos]).unwrap_or("0");
        s.parse::<BigInt>().map_err(|_| parse_err(start, "bad integer"))
    }

    fn nilpotent(&self, at: usize) -> Result<Poly> {
        let u = self
            .ring
            .nilpotent_unit()
            .map_err(|_| parse_err(at, format!("`u` is not an element of {}", self.ring)))?;
        Ok(Poly::constant(self.ring, self.nvars, u))
    }

    fn atom(&mut self) -> Result<Poly> {
        let start = match self.peek() {
            Some(_) => self.pos,
            None => return Err(parse_err(self.pos, "unexpected end of input")),
        };
        let c = self.src[start];
        if c.is_ascii_digit() {
            let v = self.integer()?;
            let k = Poly::constant(self.ring, self.nvars, self.ring.from_bigint(&v));
            // implicit product such as `2u`
            if self.src.get(self.pos) == Some(&b'u')
                && !self.src.get(self.pos + 1).is_some_and(|b| b.is_ascii_alphanumeric())
            {
                let at = self.pos;
                self.pos += 1;
                let u = self.nilpotent(at)?;
                return Ok(&k * &u);
            }
            return Ok(k);
        }
        if c == b'(' {
            self.pos += 1;
            let first = self.expr()?;
            if self.peek() == Some(b',') {
                let mut parts = alloc::vec![first];
                while self.peek() == Some(b',') {
                    self.pos += 1;
                    parts.push(self.expr()?);
                }
                self.expect(b')')?;
                return self.tuple(start, parts);
            }
            self.expect(b')')?;
            return Ok(first);
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            let s = self.pos;
            while self.pos < self.src.len()
                && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
            {
                self.pos += 1;
            }
            let ident = core::str::from_utf8(&self.src[s..self.pos]).unwrap_or("");
            if let Some(i) = self.names.iter().position(|n| n == ident) {
                return Ok(Poly::var(self.ring, self.nvars, i));
            }
            if ident == "u" {
                return self.nilpotent(s);
            }
            let bytes = ident.as_bytes();
            let digits = &ident[1..];
            if bytes[0].is_ascii_alphabetic() && !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) {
                let idx: usize = digits.parse().map_err(|_| parse_err(s, "bad variable index"))?;
                if idx == 0 || idx > self.nvars {
                    return Err(parse_err(
                        s,
                        format!("variable `{ident}` outside 1..={}", self.nvars),
                    ));
                }
                return Ok(Poly::var(self.ring, self.nvars, idx - 1));
            }
            return Err(parse_err(s, format!("unknown identifier `{ident}`")));
        }
        Err(parse_err(start, format!("unexpected `{}`", c as char)))
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(parse_err(self.pos, format!("expected `{}`", b as char)))
        }
    }

    fn tuple(&self, at: usize, parts: Vec<Poly>) -> Result<Poly> {
        let r = match self.ring {
            CoeffRing::ProductField { r, .. } => r as usize,
            other => return Err(parse_err(at, format!("tuples are not elements of {other}"))),
        };
        if parts.len() != r {
            return Err(parse_err(at, format!("expected a {r}-tuple")));
        }
        let mut comps = Vec::with_capacity(r);
        for (i, p) in parts.iter().enumerate() {
            let v = p
                .constant_value()
                .ok_or_else(|| parse_err(at, "tuple entries must be constants"))?;
            // every component of a scalar embedding agrees; take entry i
            comps.push(self.ring.component(&v, i));
        }
        Ok(Poly::constant(self.ring, self.nvars, CoeffValue::Tuple(comps)))
    }
}
