//! Exact coefficient rings.
//!
//! Fields (`Q`, `F_p`) back every Gröbner computation. The two artinian
//! families, truncated polynomial rings `base[u]/(u^m)` and products
//! `base^r`, only support ring arithmetic; questions about modules over them
//! are answered in [`crate::nilrad`] by moving back to a field.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{parse_err, Error, Result};

/// The field underlying an artinian coefficient ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BaseField {
    Rationals,
    Prime(u64),
}

/// Descriptor of a coefficient ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoeffRing {
    Rationals,
    PrimeField(u64),
    /// `base[u]/(u^m)`, a local ring with nilradical `(u)`.
    DualNumbers { base: BaseField, m: u32 },
    /// `base^r` with componentwise operations.
    ProductField { base: BaseField, r: u32 },
}

/// Raw coefficient data; its meaning depends on the owning [`CoeffRing`].
///
/// Rationals are kept in lowest terms with a positive denominator, residues
/// lie in `[0, p)`, and `Tuple` holds the `m` coefficients of `1, u, …` for
/// dual numbers or the `r` components of a product.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoeffValue {
    Rational(BigRational),
    Residue(u64),
    Tuple(Vec<CoeffValue>),
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn mod_inverse(a: u64, p: u64) -> Option<u64> {
    if a.is_multiple_of(p) {
        return None;
    }
    let (mut old_r, mut r) = (a as i128 % p as i128, p as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(p as i128) as u64)
}

impl BaseField {
    pub fn validate(self) -> Result<Self> {
        match self {
            BaseField::Prime(p) if !is_prime(p) => {
                Err(Error::InvalidArgument(format!("{p} is not prime")))
            }
            b => Ok(b),
        }
    }

    pub fn as_ring(self) -> CoeffRing {
        match self {
            BaseField::Rationals => CoeffRing::Rationals,
            BaseField::Prime(p) => CoeffRing::PrimeField(p),
        }
    }

    fn zero(self) -> CoeffValue {
        match self {
            BaseField::Rationals => CoeffValue::Rational(BigRational::zero()),
            BaseField::Prime(_) => CoeffValue::Residue(0),
        }
    }

    fn from_int(self, v: &BigInt) -> CoeffValue {
        match self {
            BaseField::Rationals => CoeffValue::Rational(BigRational::from_integer(v.clone())),
            BaseField::Prime(p) => {
                let r = v.mod_floor(&BigInt::from(p));
                CoeffValue::Residue(r.to_u64().unwrap_or(0))
            }
        }
    }

    fn from_ratio(self, num: &BigInt, den: &BigInt) -> Result<CoeffValue> {
        if den.is_zero() {
            return Err(Error::NotAUnit);
        }
        match self {
            BaseField::Rationals => Ok(CoeffValue::Rational(BigRational::new(
                num.clone(),
                den.clone(),
            ))),
            BaseField::Prime(_) => {
                let d = self.from_int(den);
                let n = self.from_int(num);
                let inv = self.inv(&d)?;
                Ok(self.mul(&n, &inv))
            }
        }
    }

    fn add(self, a: &CoeffValue, b: &CoeffValue) -> CoeffValue {
        match (self, a, b) {
            (BaseField::Rationals, CoeffValue::Rational(x), CoeffValue::Rational(y)) => {
                if x.is_integer() && y.is_integer() {
                    // skips the gcd normalization
                    return CoeffValue::Rational(BigRational::new_raw(x.numer() + y.numer(), BigInt::one()));
                }
                CoeffValue::Rational(x + y)
            }
            (BaseField::Prime(p), CoeffValue::Residue(x), CoeffValue::Residue(y)) => {
                CoeffValue::Residue(((*x as u128 + *y as u128) % p as u128) as u64)
            }
            _ => unreachable!("coefficient representation does not match its field"),
        }
    }

    fn neg(self, a: &CoeffValue) -> CoeffValue {
        match (self, a) {
            (BaseField::Rationals, CoeffValue::Rational(x)) => CoeffValue::Rational(-x),
            (BaseField::Prime(p), CoeffValue::Residue(x)) => {
                CoeffValue::Residue(if *x == 0 { 0 } else { p - x })
            }
            _ => unreachable!("coefficient representation does not match its field"),
        }
    }

    fn mul(self, a: &CoeffValue, b: &CoeffValue) -> CoeffValue {
        match (self, a, b) {
            (BaseField::Rationals, CoeffValue::Rational(x), CoeffValue::Rational(y)) => {
                if x.is_integer() && y.is_integer() {
                    return CoeffValue::Rational(BigRational::new_raw(x.numer() * y.numer(), BigInt::one()));
                }
                CoeffValue::Rational(x * y)
            }
            (BaseField::Prime(p), CoeffValue::Residue(x), CoeffValue::Residue(y)) => {
                CoeffValue::Residue(((*x as u128 * *y as u128) % p as u128) as u64)
            }
            _ => unreachable!("coefficient representation does not match its field"),
        }
    }

    fn inv(self, a: &CoeffValue) -> Result<CoeffValue> {
        match (self, a) {
            (BaseField::Rationals, CoeffValue::Rational(x)) => {
                if x.is_zero() {
                    Err(Error::NotAUnit)
                } else {
                    Ok(CoeffValue::Rational(x.recip()))
                }
            }
            (BaseField::Prime(p), CoeffValue::Residue(x)) => {
                mod_inverse(*x, p).map(CoeffValue::Residue).ok_or(Error::NotAUnit)
            }
            _ => unreachable!("coefficient representation does not match its field"),
        }
    }

    fn is_zero(self, a: &CoeffValue) -> bool {
        match a {
            CoeffValue::Rational(x) => x.is_zero(),
            CoeffValue::Residue(x) => *x == 0,
            CoeffValue::Tuple(_) => false,
        }
    }

    fn owns(self, a: &CoeffValue) -> bool {
        match (self, a) {
            (BaseField::Rationals, CoeffValue::Rational(_)) => true,
            (BaseField::Prime(p), CoeffValue::Residue(x)) => *x < p,
            _ => false,
        }
    }
}

impl fmt::Display for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseField::Rationals => write!(f, "Q"),
            BaseField::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for BaseField {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Q" || s == "QQ" {
            return Ok(BaseField::Rationals);
        }
        let digits = s
            .strip_prefix("F_")
            .or_else(|| s.strip_prefix("GF"))
            .or_else(|| s.strip_prefix('F'))
            .ok_or_else(|| parse_err(0, format!("unknown field `{s}`")))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| parse_err(0, format!("bad characteristic in `{s}`")))?;
        BaseField::Prime(p).validate()
    }
}

impl CoeffRing {
    pub fn prime_field(p: u64) -> Result<Self> {
        BaseField::Prime(p).validate()?;
        Ok(CoeffRing::PrimeField(p))
    }

    pub fn dual_numbers(base: BaseField, m: u32) -> Result<Self> {
        base.validate()?;
        if m < 2 {
            return Err(Error::InvalidArgument(format!("nilpotency order {m} < 2")));
        }
        Ok(CoeffRing::DualNumbers { base, m })
    }

    pub fn product_field(base: BaseField, r: u32) -> Result<Self> {
        base.validate()?;
        if r < 2 {
            return Err(Error::InvalidArgument(format!("factor count {r} < 2")));
        }
        Ok(CoeffRing::ProductField { base, r })
    }

    pub fn is_field(self) -> bool {
        matches!(self, CoeffRing::Rationals | CoeffRing::PrimeField(_))
    }

    /// The field itself, or the base field of an artinian ring.
    pub fn base(self) -> BaseField {
        match self {
            CoeffRing::Rationals => BaseField::Rationals,
            CoeffRing::PrimeField(p) => BaseField::Prime(p),
            CoeffRing::DualNumbers { base, .. } | CoeffRing::ProductField { base, .. } => base,
        }
    }

    fn tuple_len(self) -> Option<usize> {
        match self {
            CoeffRing::DualNumbers { m, .. } => Some(m as usize),
            CoeffRing::ProductField { r, .. } => Some(r as usize),
            _ => None,
        }
    }

    pub fn zero(self) -> CoeffValue {
        match self.tuple_len() {
            None => self.base().zero(),
            Some(len) => CoeffValue::Tuple(vec![self.base().zero(); len]),
        }
    }

    pub fn one(self) -> CoeffValue {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> CoeffValue {
        self.from_bigint(&BigInt::from(v))
    }

    pub fn from_bigint(self, v: &BigInt) -> CoeffValue {
        let b = self.base();
        match self {
            CoeffRing::Rationals | CoeffRing::PrimeField(_) => b.from_int(v),
            CoeffRing::DualNumbers { m, .. } => {
                let mut t = vec![b.zero(); m as usize];
                t[0] = b.from_int(v);
                CoeffValue::Tuple(t)
            }
            CoeffRing::ProductField { r, .. } => CoeffValue::Tuple(vec![b.from_int(v); r as usize]),
        }
    }

    /// Embeds a base-field element as a scalar of this ring.
    pub fn from_base(self, v: CoeffValue) -> CoeffValue {
        match self {
            CoeffRing::Rationals | CoeffRing::PrimeField(_) => v,
            CoeffRing::DualNumbers { m, .. } => {
                let mut t = vec![self.base().zero(); m as usize];
                t[0] = v;
                CoeffValue::Tuple(t)
            }
            CoeffRing::ProductField { r, .. } => CoeffValue::Tuple(vec![v; r as usize]),
        }
    }

    pub fn from_ratio(self, num: &BigInt, den: &BigInt) -> Result<CoeffValue> {
        let v = self.base().from_ratio(num, den)?;
        Ok(self.from_base(v))
    }

    /// The nilpotent generator `u` of a dual-number ring.
    pub fn nilpotent_unit(self) -> Result<CoeffValue> {
        match self {
            CoeffRing::DualNumbers { base, m } => {
                let mut t = vec![base.zero(); m as usize];
                t[1] = base.from_int(&BigInt::one());
                Ok(CoeffValue::Tuple(t))
            }
            other => Err(Error::UnsupportedRing(other.to_string())),
        }
    }

    /// Whether `v` is a well-formed, normalized value of this ring.
    pub fn owns(self, v: &CoeffValue) -> bool {
        match (self.tuple_len(), v) {
            (None, _) => self.base().owns(v),
            (Some(len), CoeffValue::Tuple(t)) => {
                t.len() == len && t.iter().all(|c| self.base().owns(c))
            }
            _ => false,
        }
    }

    pub fn is_zero(self, v: &CoeffValue) -> bool {
        match v {
            CoeffValue::Tuple(t) => t.iter().all(|c| self.base().is_zero(c)),
            _ => self.base().is_zero(v),
        }
    }

    pub fn is_one(self, v: &CoeffValue) -> bool {
        *v == self.one()
    }

    pub fn add(self, a: &CoeffValue, b: &CoeffValue) -> CoeffValue {
        let base = self.base();
        match (a, b) {
            (CoeffValue::Tuple(x), CoeffValue::Tuple(y)) => {
                CoeffValue::Tuple(x.iter().zip(y).map(|(p, q)| base.add(p, q)).collect())
            }
            _ => base.add(a, b),
        }
    }

    pub fn neg(self, a: &CoeffValue) -> CoeffValue {
        let base = self.base();
        match a {
            CoeffValue::Tuple(x) => CoeffValue::Tuple(x.iter().map(|p| base.neg(p)).collect()),
            _ => base.neg(a),
        }
    }

    pub fn sub(self, a: &CoeffValue, b: &CoeffValue) -> CoeffValue {
        self.add(a, &self.neg(b))
    }

    pub fn mul(self, a: &CoeffValue, b: &CoeffValue) -> CoeffValue {
        let base = self.base();
        match (self, a, b) {
            (CoeffRing::DualNumbers { m, .. }, CoeffValue::Tuple(x), CoeffValue::Tuple(y)) => {
                let m = m as usize;
                let mut out = vec![base.zero(); m];
                for (i, xi) in x.iter().enumerate() {
                    if base.is_zero(xi) {
                        continue;
                    }
                    for (j, yj) in y.iter().enumerate().take(m - i) {
                        out[i + j] = base.add(&out[i + j], &base.mul(xi, yj));
                    }
                }
                CoeffValue::Tuple(out)
            }
            (CoeffRing::ProductField { .. }, CoeffValue::Tuple(x), CoeffValue::Tuple(y)) => {
                CoeffValue::Tuple(x.iter().zip(y).map(|(p, q)| base.mul(p, q)).collect())
            }
            _ => base.mul(a, b),
        }
    }

    pub fn inv(self, a: &CoeffValue) -> Result<CoeffValue> {
        let base = self.base();
        match (self, a) {
            (CoeffRing::DualNumbers { m, .. }, CoeffValue::Tuple(x)) => {
                // b_0 = 1/a_0, b_k = -(sum_{j=1..k} a_j b_{k-j}) / a_0
                let inv0 = base.inv(&x[0])?;
                let mut out: Vec<CoeffValue> = Vec::with_capacity(m as usize);
                out.push(inv0.clone());
                for k in 1..m as usize {
                    let mut acc = base.zero();
                    for j in 1..=k {
                        acc = base.add(&acc, &base.mul(&x[j], &out[k - j]));
                    }
                    out.push(base.neg(&base.mul(&acc, &inv0)));
                }
                Ok(CoeffValue::Tuple(out))
            }
            (CoeffRing::ProductField { .. }, CoeffValue::Tuple(x)) => Ok(CoeffValue::Tuple(
                x.iter().map(|c| base.inv(c)).collect::<Result<Vec<_>>>()?,
            )),
            _ => base.inv(a),
        }
    }

    /// Non-zero-divisor test. All implemented rings are commutative, and in
    /// each of them the regular elements are exactly the units.
    pub fn is_regular(self, a: &CoeffValue) -> bool {
        let base = self.base();
        match a {
            CoeffValue::Tuple(x) => match self {
                CoeffRing::DualNumbers { .. } => !base.is_zero(&x[0]),
                _ => x.iter().all(|c| !base.is_zero(c)),
            },
            _ => !base.is_zero(a),
        }
    }

    /// Component `i` of a tuple value, or the value itself for fields.
    pub fn component(self, a: &CoeffValue, i: usize) -> CoeffValue {
        match a {
            CoeffValue::Tuple(x) => x[i].clone(),
            _ => a.clone(),
        }
    }

    /// Bit size of the largest numerator/denominator; zero for residues.
    pub(crate) fn bit_size(self, a: &CoeffValue) -> u64 {
        match a {
            CoeffValue::Rational(x) => x.numer().bits().max(x.denom().bits()),
            CoeffValue::Residue(_) => 0,
            CoeffValue::Tuple(t) => t.iter().map(|c| self.bit_size(c)).max().unwrap_or(0),
        }
    }

    /// Renders a coefficient in the syntax accepted by the polynomial parser.
    pub fn format_value(self, a: &CoeffValue) -> String {
        match (self, a) {
            (_, CoeffValue::Rational(x)) => fmt_rational(x),
            (_, CoeffValue::Residue(x)) => x.to_string(),
            (CoeffRing::DualNumbers { base, .. }, CoeffValue::Tuple(t)) => {
                let mut s = String::from("(");
                let mut first = true;
                for (k, c) in t.iter().enumerate() {
                    if base.is_zero(c) {
                        continue;
                    }
                    let (neg, body) = match c {
                        CoeffValue::Rational(x) if x.is_negative() => (true, fmt_rational(&-x)),
                        _ => (false, base.as_ring().format_value(c)),
                    };
                    if first {
                        if neg {
                            s.push('-');
                        }
                    } else {
                        s.push(if neg { '-' } else { '+' });
                    }
                    first = false;
                    let unit = body == "1";
                    match k {
                        0 => s.push_str(&body),
                        _ => {
                            if !unit {
                                s.push_str(&body);
                                s.push('*');
                            }
                            s.push('u');
                            if k > 1 {
                                s.push_str(&format!("^{k}"));
                            }
                        }
                    }
                }
                if first {
                    s.push('0');
                }
                s.push(')');
                s
            }
            (_, CoeffValue::Tuple(t)) => {
                let parts: Vec<String> =
                    t.iter().map(|c| self.base().as_ring().format_value(c)).collect();
                format!("({})", parts.join(","))
            }
        }
    }

    /// Every element of a finite ring, in a fixed order; `None` for rings
    /// over `Q` or with more than `cap` elements.
    pub fn elements(self, cap: usize) -> Option<Vec<CoeffValue>> {
        let p = match self.base() {
            BaseField::Prime(p) => p,
            BaseField::Rationals => return None,
        };
        let len = self.tuple_len().unwrap_or(1) as u32;
        let total = (p as usize).checked_pow(len)?;
        if total > cap {
            return None;
        }
        let mut out = Vec::with_capacity(total);
        for idx in 0..total {
            let mut rest = idx;
            let mut digits = Vec::with_capacity(len as usize);
            for _ in 0..len {
                digits.push(CoeffValue::Residue((rest % p as usize) as u64));
                rest /= p as usize;
            }
            out.push(match self.tuple_len() {
                None => digits.pop().unwrap_or(CoeffValue::Residue(0)),
                Some(_) => CoeffValue::Tuple(digits),
            });
        }
        Some(out)
    }
}

fn fmt_rational(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

impl fmt::Display for CoeffRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffRing::Rationals => write!(f, "Q"),
            CoeffRing::PrimeField(p) => write!(f, "F{p}"),
            CoeffRing::DualNumbers { base, m } => write!(f, "{base}[u]/(u^{m})"),
            CoeffRing::ProductField { base, r } => {
                for i in 0..*r {
                    if i > 0 {
                        write!(f, "x")?;
                    }
                    write!(f, "{base}")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for CoeffRing {
    type Err = Error;

    /// Accepts `Q`, `F5`, `F3[u]/(u^2)` and `F3xF3` style descriptors.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some(idx) = compact.find("[u]/(u^") {
            let base: BaseField = compact[..idx].parse()?;
            let tail = &compact[idx + "[u]/(u^".len()..];
            let m = tail
                .strip_suffix(')')
                .and_then(|t| t.parse::<u32>().ok())
                .ok_or_else(|| parse_err(idx, "malformed nilpotency order"))?;
            return CoeffRing::dual_numbers(base, m);
        }
        if compact.contains('x') {
            let parts: Vec<&str> = compact.split('x').collect();
            let base: BaseField = parts[0].parse()?;
            for p in &parts[1..] {
                if p.parse::<BaseField>()? != base {
                    return Err(parse_err(0, "product factors must be equal fields"));
                }
            }
            return CoeffRing::product_field(base, parts.len() as u32);
        }
        Ok(compact.parse::<BaseField>()?.as_ring())
    }
}

/// A coefficient together with its ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coeff {
    ring: CoeffRing,
    value: CoeffValue,
}

impl Coeff {
    pub fn new(ring: CoeffRing, value: CoeffValue) -> Result<Self> {
        if !ring.owns(&value) {
            return Err(Error::InvalidArgument(format!("value not normalized for {ring}")));
        }
        Ok(Coeff { ring, value })
    }

    pub(crate) fn from_parts(ring: CoeffRing, value: CoeffValue) -> Self {
        Coeff { ring, value }
    }

    pub fn from_i64(ring: CoeffRing, v: i64) -> Self {
        Coeff { ring, value: ring.from_i64(v) }
    }

    pub fn rational(num: i64, den: i64) -> Result<Self> {
        let ring = CoeffRing::Rationals;
        Ok(Coeff { ring, value: ring.from_ratio(&BigInt::from(num), &BigInt::from(den))? })
    }

    pub fn ring(&self) -> CoeffRing {
        self.ring
    }

    pub fn value(&self) -> &CoeffValue {
        &self.value
    }

    pub fn into_value(self) -> CoeffValue {
        self.value
    }

    fn check(&self, other: &Coeff) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Coeff) -> Result<Coeff> {
        self.check(other)?;
        Ok(Coeff { ring: self.ring, value: self.ring.add(&self.value, &other.value) })
    }

    pub fn sub(&self, other: &Coeff) -> Result<Coeff> {
        self.check(other)?;
        Ok(Coeff { ring: self.ring, value: self.ring.sub(&self.value, &other.value) })
    }

    pub fn mul(&self, other: &Coeff) -> Result<Coeff> {
        self.check(other)?;
        Ok(Coeff { ring: self.ring, value: self.ring.mul(&self.value, &other.value) })
    }

    pub fn neg(&self) -> Coeff {
        Coeff { ring: self.ring, value: self.ring.neg(&self.value) }
    }

    pub fn invert(&self) -> Result<Coeff> {
        Ok(Coeff { ring: self.ring, value: self.ring.inv(&self.value)? })
    }

    pub fn is_regular(&self) -> bool {
        self.ring.is_regular(&self.value)
    }

    pub fn is_zero(&self) -> bool {
        self.ring.is_zero(&self.value)
    }

    pub fn is_one(&self) -> bool {
        self.ring.is_one(&self.value)
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ring.format_value(&self.value))
    }
}
