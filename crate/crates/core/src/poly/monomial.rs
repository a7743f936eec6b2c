use core::cmp::Ordering;
use core::fmt;

use smallvec::SmallVec;

/// Exponent vector of a monomial in `n` variables.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial(SmallVec<[u32; 6]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, i: usize, exp: u32) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = exp;
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn checked_mul(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = SmallVec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            out.push(a.checked_add(*b)?);
        }
        Some(Monomial(out))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Bitmask of the variables that occur.
    pub fn support(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0u64, |acc, (i, _)| acc | (1u64 << i))
    }

    pub(crate) fn exps_mut(&mut self) -> &mut [u32] {
        &mut self.0
    }

    pub(crate) fn resized(&self, nvars: usize) -> Monomial {
        let mut out = SmallVec::from_elem(0, nvars);
        for (i, e) in self.0.iter().enumerate().take(nvars) {
            out[i] = *e;
        }
        Monomial(out)
    }

    /// Inserts a zero exponent for a fresh variable at `pos`.
    pub(crate) fn insert_var(&self, pos: usize) -> Monomial {
        let mut out = self.0.clone();
        out.insert(pos, 0);
        Monomial(out)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", MonomialDisplay { mono: self, prefix: 'x' })
    }
}

pub(crate) struct MonomialDisplay<'a> {
    pub mono: &'a Monomial,
    pub prefix: char,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.mono.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "{}{}", self.prefix, i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// A global monomial order.
///
/// Variables are `x1 > x2 > … > xn` under `Lex`. `Block(m)` makes every
/// variable among `x_{m+1},…,x_n` dominate `x_1,…,x_m` (grevlex inside each
/// block), which is what elimination of the trailing variables needs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MonomialOrder {
    Lex,
    GrevLex,
    Block(usize),
}

fn grevlex_range(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (0..a.len()).rev() {
        match a[i].cmp(&b[i]) {
            Ordering::Equal => {}
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (a, b) = (a.exponents(), b.exponents());
        match *self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::GrevLex => grevlex_range(a, b),
            MonomialOrder::Block(m) => {
                let m = m.min(a.len());
                match grevlex_range(&a[m..], &b[m..]) {
                    Ordering::Equal => grevlex_range(&a[..m], &b[..m]),
                    o => o,
                }
            }
        }
    }

    pub fn name(&self) -> alloc::string::String {
        match self {
            MonomialOrder::Lex => "lex".into(),
            MonomialOrder::GrevLex => "grevlex".into(),
            MonomialOrder::Block(m) => alloc::format!("block({m})"),
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn lex_and_grevlex() {
        assert_eq!(MonomialOrder::Lex.cmp(&m(&[1, 1]), &m(&[0, 3])), Ordering::Greater);
        assert_eq!(MonomialOrder::GrevLex.cmp(&m(&[1, 1]), &m(&[0, 3])), Ordering::Less);
        // x1*x3 vs x2^2 in grevlex: the smaller last exponent wins
        assert_eq!(MonomialOrder::GrevLex.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
    }

    #[test]
    fn block_eliminates_trailing() {
        let o = MonomialOrder::Block(1);
        assert_eq!(o.cmp(&m(&[0, 1]), &m(&[5, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[2, 0]), &m(&[1, 0])), Ordering::Greater);
    }

    #[test]
    fn divisibility() {
        assert!(m(&[1, 0]).divides(&m(&[2, 3])));
        assert!(!m(&[1, 4]).divides(&m(&[2, 3])));
        assert_eq!(m(&[1, 4]).lcm(&m(&[2, 3])), m(&[2, 4]));
        assert_eq!(m(&[1, 0, 2]).support(), 0b101);
    }
}
