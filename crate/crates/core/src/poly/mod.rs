//! Sparse multivariate polynomials over a [`CoeffRing`].

mod monomial;
mod parse;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

pub use monomial::{Monomial, MonomialOrder};
pub use parse::{parse_poly, parse_poly_named};

use crate::coeff::{Coeff, CoeffRing, CoeffValue};
use crate::error::{Error, Result};
use monomial::MonomialDisplay;

/// Default ceiling on the number of terms a substitution may produce.
pub const DEFAULT_TERM_CEILING: usize = 1_000_000;

/// A polynomial in `nvars` commuting variables. Zero coefficients are never
/// stored, so the zero polynomial has no terms.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    ring: CoeffRing,
    nvars: usize,
    terms: BTreeMap<Monomial, CoeffValue>,
}

impl Poly {
    pub fn zero(ring: CoeffRing, nvars: usize) -> Self {
        Poly { ring, nvars, terms: BTreeMap::new() }
    }

    pub fn one(ring: CoeffRing, nvars: usize) -> Self {
        Self::constant(ring, nvars, ring.one())
    }

    pub fn constant(ring: CoeffRing, nvars: usize, c: CoeffValue) -> Self {
        Self::term(ring, Monomial::one(nvars), c)
    }

    pub fn from_i64(ring: CoeffRing, nvars: usize, c: i64) -> Self {
        Self::constant(ring, nvars, ring.from_i64(c))
    }

    /// The variable `x_{i+1}` (zero-based index `i`).
    pub fn var(ring: CoeffRing, nvars: usize, i: usize) -> Self {
        Self::term(ring, Monomial::var(nvars, i, 1), ring.one())
    }

    pub fn term(ring: CoeffRing, mono: Monomial, c: CoeffValue) -> Self {
        let nvars = mono.nvars();
        let mut terms = BTreeMap::new();
        if !ring.is_zero(&c) {
            terms.insert(mono, c);
        }
        Poly { ring, nvars, terms }
    }

    pub fn from_terms(
        ring: CoeffRing,
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, CoeffValue)>,
    ) -> Self {
        let mut p = Poly::zero(ring, nvars);
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), nvars);
            p.add_term(m, c);
        }
        p
    }

    pub fn ring(&self) -> CoeffRing {
        self.ring
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// Terms in the canonical (ascending lex) storage order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &CoeffValue)> {
        self.terms.iter()
    }

    /// Terms sorted descending under `ord`.
    pub fn sorted_terms(&self, ord: MonomialOrder) -> Vec<(&Monomial, &CoeffValue)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| ord.cmp(b.0, a.0));
        v
    }

    pub fn coeff(&self, m: &Monomial) -> Coeff {
        Coeff::from_parts(self.ring, self.terms.get(m).cloned().unwrap_or_else(|| self.ring.zero()))
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: CoeffValue) {
        if self.ring.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = self.ring.add(existing, &c);
                if self.ring.is_zero(&sum) {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn from_unsorted(ring: CoeffRing, nvars: usize, mut terms: Vec<(Monomial, CoeffValue)>) -> Poly {
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(Monomial, CoeffValue)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match merged.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = ring.add(lc, &c),
                _ => merged.push((m, c)),
            }
        }
        let terms = merged.into_iter().filter(|(_, c)| !ring.is_zero(c)).collect();
        Poly { ring, nvars, terms }
    }

    fn compatible(&self, other: &Poly) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        if self.nvars != other.nvars {
            return Err(Error::ArityMismatch { expected: self.nvars, found: other.nvars });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), self.ring.neg(c));
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.compatible(other)?;
        let count = self.len().saturating_mul(other.len());
        if count <= 1 << 20 {
            // sort and merge beats one map insertion per product
            let mut prods = Vec::with_capacity(count);
            for (m1, c1) in &self.terms {
                for (m2, c2) in &other.terms {
                    let m = m1
                        .checked_mul(m2)
                        .ok_or_else(|| Error::ResourceLimit("exponent overflow".into()))?;
                    prods.push((m, self.ring.mul(c1, c2)));
                }
            }
            return Ok(Poly::from_unsorted(self.ring, self.nvars, prods));
        }
        let mut out = Poly::zero(self.ring, self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = m1
                    .checked_mul(m2)
                    .ok_or_else(|| Error::ResourceLimit("exponent overflow".into()))?;
                out.add_term(m, self.ring.mul(c1, c2));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &CoeffValue) -> Poly {
        let mut out = Poly::zero(self.ring, self.nvars);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), self.ring.mul(v, c));
        }
        out
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> Poly {
        Poly {
            ring: self.ring,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.mul(mono), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.ring, self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn leading_term(&self, ord: MonomialOrder) -> Result<(Monomial, Coeff)> {
        let (m, c) = self
            .terms
            .iter()
            .max_by(|a, b| ord.cmp(a.0, b.0))
            .ok_or(Error::ZeroPolynomial)?;
        Ok((m.clone(), Coeff::from_parts(self.ring, c.clone())))
    }

    /// Highest exponent of variable `i`; `None` stands for the degree of zero.
    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exponents()[i]).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// The coefficient of `x_i^e`, as a polynomial not involving `x_i`.
    pub fn coeff_in_var(&self, i: usize, e: u32) -> Poly {
        let mut out = Poly::zero(self.ring, self.nvars);
        for (m, c) in &self.terms {
            if m.exponents()[i] == e {
                let mut m2 = m.clone();
                m2.exps_mut()[i] = 0;
                out.terms.insert(m2, c.clone());
            }
        }
        out
    }

    /// Coefficient of the highest power of `x_i`.
    pub fn leading_coeff_in(&self, i: usize) -> Option<Poly> {
        self.degree_in(i).map(|d| self.coeff_in_var(i, d))
    }

    /// Whether the `x_i`-leading coefficient is a nonzero constant.
    pub fn is_monic_in(&self, i: usize) -> bool {
        match self.leading_coeff_in(i) {
            Some(lc) => {
                lc.is_constant()
                    && lc.terms.values().next().is_some_and(|c| self.ring.inv(c).is_ok())
            }
            None => false,
        }
    }

    pub fn constant_value(&self) -> Option<CoeffValue> {
        if !self.is_constant() {
            return None;
        }
        Some(self.terms.values().next().cloned().unwrap_or_else(|| self.ring.zero()))
    }

    /// Replaces `x_i` by `images[i]`; see [`Poly::substitute_limited`].
    pub fn substitute(&self, images: &[Poly]) -> Result<Poly> {
        self.substitute_limited(images, DEFAULT_TERM_CEILING)
    }

    /// Ring homomorphism `x_i ↦ images[i]`. Fails with `ResourceLimit` when
    /// an intermediate or final result exceeds `max_terms` terms.
    pub fn substitute_limited(&self, images: &[Poly], max_terms: usize) -> Result<Poly> {
        if images.len() != self.nvars {
            return Err(Error::ArityMismatch { expected: self.nvars, found: images.len() });
        }
        let target = match images.first() {
            Some(p) => p.nvars,
            None => 0,
        };
        for img in images {
            if img.ring != self.ring {
                return Err(Error::RingMismatch);
            }
            if img.nvars != target {
                return Err(Error::ArityMismatch { expected: target, found: img.nvars });
            }
        }
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| alloc::vec![Poly::one(self.ring, p.nvars)]).collect();
        let mut out = Poly::zero(self.ring, target);
        for (m, c) in &self.terms {
            let mut acc = Poly::constant(self.ring, target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().map(|p| p * &images[i]).unwrap_or_default();
                    if next.len() > max_terms {
                        return Err(Error::ResourceLimit(format!(
                            "substitution power exceeds {max_terms} terms"
                        )));
                    }
                    powers[i].push(next);
                }
                acc = &acc * &powers[i][e as usize];
                if acc.len() > max_terms {
                    return Err(Error::ResourceLimit(format!(
                        "substitution exceeds {max_terms} terms"
                    )));
                }
            }
            for (mm, cc) in acc.terms {
                out.add_term(mm, cc);
            }
            if out.len() > max_terms {
                return Err(Error::ResourceLimit(format!("substitution exceeds {max_terms} terms")));
            }
        }
        Ok(out)
    }

    /// Applies `f` to every coefficient, landing in `ring`.
    pub fn map_coeffs(&self, ring: CoeffRing, f: impl Fn(&CoeffValue) -> CoeffValue) -> Poly {
        let mut out = Poly::zero(ring, self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Re-embeds into `nvars` variables. Shrinking fails if a dropped
    /// variable occurs.
    pub fn with_nvars(&self, nvars: usize) -> Result<Poly> {
        if nvars < self.nvars
            && self.terms.keys().any(|m| m.exponents()[nvars..].iter().any(|&e| e > 0))
        {
            return Err(Error::InvalidArgument(format!(
                "polynomial involves variables beyond x{nvars}"
            )));
        }
        Ok(Poly {
            ring: self.ring,
            nvars,
            terms: self.terms.iter().map(|(m, c)| (m.resized(nvars), c.clone())).collect(),
        })
    }

    /// Inserts a fresh variable at zero-based position `pos`.
    pub fn insert_var(&self, pos: usize) -> Poly {
        Poly {
            ring: self.ring,
            nvars: self.nvars + 1,
            terms: self.terms.iter().map(|(m, c)| (m.insert_var(pos), c.clone())).collect(),
        }
    }

    /// Divides by the leading coefficient under `ord`.
    pub fn monic(&self, ord: MonomialOrder) -> Result<Poly> {
        let (_, lc) = self.leading_term(ord)?;
        Ok(self.scale(lc.invert()?.value()))
    }

    /// Exact quotient `self / g`, or `None` if `g` does not divide `self`.
    pub fn div_exact(&self, g: &Poly) -> Result<Option<Poly>> {
        self.compatible(g)?;
        let ord = MonomialOrder::GrevLex;
        let (lm, lc) = g.leading_term(ord)?;
        let lc_inv = lc.invert()?;
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.ring, self.nvars);
        while !rem.is_zero() {
            let (m, c) = rem.leading_term(ord)?;
            if !lm.divides(&m) {
                return Ok(None);
            }
            let q = lm.quotient_of(&m);
            let qc = self.ring.mul(c.value(), lc_inv.value());
            rem = &rem - &g.mul_monomial(&q).scale(&qc);
            quot.add_term(q, qc);
        }
        Ok(Some(quot))
    }

    /// Remainder of division by `g`, which must have a unit leading
    /// coefficient in `x_var`; the result has `x_var`-degree below that of `g`.
    pub fn rem_monic_in(&self, g: &Poly, var: usize) -> Result<Poly> {
        self.compatible(g)?;
        if !g.is_monic_in(var) {
            return Err(Error::NotMonic);
        }
        let e = g.degree_in(var).unwrap_or(0);
        let lc = g.leading_coeff_in(var).and_then(|p| p.constant_value()).ok_or(Error::NotMonic)?;
        let lc_inv = self.ring.inv(&lc)?;
        let mut rem = self.clone();
        while let Some(d) = rem.degree_in(var) {
            if d < e {
                break;
            }
            let shift = Monomial::var(self.nvars, var, d - e);
            let top = rem.coeff_in_var(var, d).scale(&lc_inv).mul_monomial(&shift);
            rem = rem.checked_sub(&top.checked_mul(g)?)?;
        }
        Ok(rem)
    }

    /// Formats with a custom variable prefix (`x`, `t`, `z`, …).
    pub fn display_with(&self, prefix: char) -> PolyDisplay<'_> {
        PolyDisplay { poly: self, prefix }
    }
}

impl Default for Poly {
    fn default() -> Self {
        Poly::zero(CoeffRing::Rationals, 0)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Poly> for &Poly {
            type Output = Poly;
            /// Panics if the operands live in different rings.
            fn $method(self, rhs: &Poly) -> Poly {
                self.$checked(rhs).expect("polynomial operands must share ring and arity")
            }
        }
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&self.ring.neg(&self.ring.one()))
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    prefix: char,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.poly;
        if p.is_zero() {
            return f.write_str("0");
        }
        let ring = p.ring;
        for (idx, (m, c)) in p.sorted_terms(MonomialOrder::GrevLex).into_iter().enumerate() {
            let mut text: String = ring.format_value(c);
            let negative = text.starts_with('-');
            if negative {
                text.remove(0);
            }
            match (idx, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mono = MonomialDisplay { mono: m, prefix: self.prefix };
            if m.is_one() {
                f.write_str(&text)?;
            } else if text == "1" {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{text}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with('x'))
    }
}
