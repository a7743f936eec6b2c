//! Coefficient-fixing automorphisms of `D[x_1,…,x_n]`.
//!
//! A [`VarChange`] introduces new variables `t_i`. It stores both directions:
//! `forward[i]` is `t_i` written in the old variables and `backward[i]` is
//! `x_i` written in the new ones. [`VarChange::apply`] rewrites a polynomial
//! in old coordinates into the new ones by substituting `backward`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::coeff::{CoeffRing, CoeffValue};
use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly, DEFAULT_TERM_CEILING};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarChange {
    nvars: usize,
    forward: Vec<Poly>,
    backward: Vec<Poly>,
    label: String,
}

fn vars(ring: CoeffRing, n: usize) -> Vec<Poly> {
    (0..n).map(|i| Poly::var(ring, n, i)).collect()
}

impl VarChange {
    pub fn identity(ring: CoeffRing, n: usize) -> Self {
        VarChange { nvars: n, forward: vars(ring, n), backward: vars(ring, n), label: "identity".into() }
    }

    /// Builds a change of variables after checking that both directions
    /// invert each other on every variable.
    pub fn new(forward: Vec<Poly>, backward: Vec<Poly>, label: impl Into<String>) -> Result<Self> {
        let n = forward.len();
        if backward.len() != n {
            return Err(Error::ArityMismatch { expected: n, found: backward.len() });
        }
        let vc = VarChange { nvars: n, forward, backward, label: label.into() };
        if !vc.round_trips()? {
            return Err(Error::InvalidArgument("images are not mutually inverse".into()));
        }
        Ok(vc)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn forward(&self) -> &[Poly] {
        &self.forward
    }

    pub fn backward(&self) -> &[Poly] {
        &self.backward
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn ring(&self) -> Option<CoeffRing> {
        self.forward.first().map(Poly::ring)
    }

    pub fn is_identity(&self) -> bool {
        self.backward.iter().enumerate().all(|(i, p)| {
            p.len() == 1 && p.is_monic_in(i) && p.degree_in(i) == Some(1) && p.total_degree() == Some(1)
        })
    }

    /// `forward ∘ backward` and `backward ∘ forward` are both the identity.
    pub fn round_trips(&self) -> Result<bool> {
        let Some(ring) = self.ring() else { return Ok(true) };
        let id = vars(ring, self.nvars);
        for i in 0..self.nvars {
            if self.forward[i].substitute(&self.backward)? != id[i]
                || self.backward[i].substitute(&self.forward)? != id[i]
            {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The substitution `t_1 = x_n − x_1^d`, `t_i = x_i` for `1 < i < n`,
    /// `t_n = x_1`, with inverse `x_1 = t_n`, `x_n = t_1 + t_n^d`.
    pub fn lemma12(ring: CoeffRing, n: usize, d: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!("need at least 2 variables, got {n}")));
        }
        if d < 1 {
            return Err(Error::InvalidArgument("exponent d must be at least 1".into()));
        }
        let x = vars(ring, n);
        let mut forward = x.clone();
        let mut backward = x.clone();
        forward[0] = &x[n - 1] - &x[0].pow(d);
        forward[n - 1] = x[0].clone();
        backward[0] = x[n - 1].clone();
        backward[n - 1] = &x[0] + &x[n - 1].pow(d);
        Ok(VarChange { nvars: n, forward, backward, label: format!("lemma12(d={d})") })
    }

    /// The pair from the two-stage construction: the change `z_1 = t_{n-1} − t_1^l`,
    /// `z_i = t_i` (`2 ≤ i ≤ n−2`), `z_{n−1} = t_1` on the first `n−1`
    /// variables, and the full change `x → z` on all `n` variables obtained by
    /// setting `z_n = t_n` and composing with [`VarChange::lemma12`].
    pub fn lemma13(ring: CoeffRing, n: usize, d: u32, l: u32) -> Result<(Self, Self)> {
        if n < 3 {
            return Err(Error::InvalidArgument(format!("need at least 3 variables, got {n}")));
        }
        if l < 1 {
            return Err(Error::InvalidArgument("exponent l must be at least 1".into()));
        }
        let t = Self::lemma12(ring, n, d)?;
        let mut inner = Self::lemma12(ring, n - 1, l)?;
        inner.label = format!("lemma13-inner(l={l})");
        let mut full = t.compose(&inner.extend(n)?)?;
        full.label = format!("lemma13(d={d},l={l})");
        Ok((full, inner))
    }

    /// `x_i = t_i + t_n^{d^i}` for `i < n` and `x_n = t_n`.
    pub fn power_subst(ring: CoeffRing, n: usize, d: u32) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidArgument("need at least 1 variable".into()));
        }
        if d < 2 {
            return Err(Error::InvalidArgument(format!("power base d = {d} < 2")));
        }
        let x = vars(ring, n);
        let mut forward = x.clone();
        let mut backward = x.clone();
        let mut w: u32 = 1;
        for i in 0..n - 1 {
            w = w
                .checked_mul(d)
                .ok_or_else(|| Error::ResourceLimit(format!("weight {d}^{} overflows", i + 1)))?;
            let shift = x[n - 1].pow(w);
            forward[i] = &x[i] - &shift;
            backward[i] = &x[i] + &shift;
        }
        Ok(VarChange { nvars: n, forward, backward, label: format!("power(d={d})") })
    }

    /// Linear shear `x_i = t_i + c_i t_k` for `i < k`, identity elsewhere,
    /// where `k = shifts.len() + 1`.
    pub fn shear(ring: CoeffRing, n: usize, shifts: &[CoeffValue]) -> Result<Self> {
        let k = shifts.len() + 1;
        if k > n {
            return Err(Error::ArityMismatch { expected: n, found: k });
        }
        let x = vars(ring, n);
        let mut forward = x.clone();
        let mut backward = x.clone();
        for (i, c) in shifts.iter().enumerate() {
            let s = x[k - 1].scale(c);
            forward[i] = &x[i] - &s;
            backward[i] = &x[i] + &s;
        }
        let cs: Vec<String> = shifts.iter().map(|c| ring.format_value(c)).collect();
        Ok(VarChange { nvars: n, forward, backward, label: format!("shear({})", cs.join(",")) })
    }

    /// Extends to `n ≥ self.nvars` variables, fixing the new ones.
    pub fn extend(&self, n: usize) -> Result<Self> {
        if n < self.nvars {
            return Err(Error::ArityMismatch { expected: self.nvars, found: n });
        }
        let Some(ring) = self.ring() else { return Ok(Self::identity(CoeffRing::Rationals, n)) };
        let x = vars(ring, n);
        let lift = |imgs: &[Poly]| -> Result<Vec<Poly>> {
            let mut out = Vec::with_capacity(n);
            for p in imgs {
                out.push(p.with_nvars(n)?);
            }
            out.extend(x[self.nvars..].iter().cloned());
            Ok(out)
        };
        Ok(VarChange {
            nvars: n,
            forward: lift(&self.forward)?,
            backward: lift(&self.backward)?,
            label: self.label.clone(),
        })
    }

    /// Restricts to the first `k` variables; fails unless the change maps
    /// `D[x_1..x_k]` onto itself and fixes the remaining variables.
    pub fn restrict(&self, k: usize) -> Result<Self> {
        let Some(ring) = self.ring() else { return Ok(self.clone()) };
        let x = vars(ring, self.nvars);
        for i in k..self.nvars {
            if self.forward[i] != x[i] || self.backward[i] != x[i] {
                return Err(Error::InvalidArgument(format!("variable {} is moved", i + 1)));
            }
        }
        let cut = |imgs: &[Poly]| -> Result<Vec<Poly>> { imgs[..k].iter().map(|p| p.with_nvars(k)).collect() };
        Ok(VarChange { nvars: k, forward: cut(&self.forward)?, backward: cut(&self.backward)?, label: self.label.clone() })
    }

    /// `self` followed by `next`: `compose(a, b).apply(f) == b.apply(a.apply(f))`.
    pub fn compose(&self, next: &VarChange) -> Result<Self> {
        if self.nvars != next.nvars {
            return Err(Error::ArityMismatch { expected: self.nvars, found: next.nvars });
        }
        let forward = next
            .forward
            .iter()
            .map(|p| p.substitute(&self.forward))
            .collect::<Result<Vec<_>>>()?;
        let backward = self
            .backward
            .iter()
            .map(|p| p.substitute(&next.backward))
            .collect::<Result<Vec<_>>>()?;
        let label = match (self.label.as_str(), next.label.as_str()) {
            ("identity", l) | (l, "identity") => String::from(l),
            (a, b) => format!("{a}; {b}"),
        };
        Ok(VarChange { nvars: self.nvars, forward, backward, label })
    }

    pub fn inverse(&self) -> Self {
        VarChange {
            nvars: self.nvars,
            forward: self.backward.clone(),
            backward: self.forward.clone(),
            label: format!("inverse({})", self.label),
        }
    }

    /// Rewrites `f(x)` in the new variables.
    pub fn apply(&self, f: &Poly) -> Result<Poly> {
        f.substitute_limited(&self.backward, DEFAULT_TERM_CEILING)
    }

    /// Rewrites `g(t)` back in the old variables.
    pub fn apply_inverse(&self, g: &Poly) -> Result<Poly> {
        g.substitute_limited(&self.forward, DEFAULT_TERM_CEILING)
    }
}

/// How [`monicize_with`] searches for a monicizing change of variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonicStrategy {
    /// `x_i = t_i + t_k^{d^i}` with the least `d ≥ 2` that works.
    Power,
    /// Linear shears `x_i = t_i + c_i t_k` over a small grid of constants.
    Shear,
    /// Identity if already monic, then shears, then powers.
    Auto,
}

/// Makes `f` monic in its last variable with a power substitution.
pub fn monicize(f: &Poly) -> Result<(VarChange, Poly)> {
    monicize_with(f, MonicStrategy::Power, f.nvars())
}

/// Makes `f`, which may only involve `x_1..x_k` (`k = active`), monic in
/// `t_k` by a change of the first `k` variables. The returned polynomial is
/// the image of `f` scaled so its `t_k`-leading coefficient is exactly 1.
pub fn monicize_with(f: &Poly, strategy: MonicStrategy, active: usize) -> Result<(VarChange, Poly)> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let ring = f.ring();
    if !ring.is_field() {
        return Err(Error::UnsupportedRing(format!("{ring}")));
    }
    let n = f.nvars();
    if active == 0 || active > n {
        return Err(Error::InvalidArgument(format!("active variable count {active} not in 1..={n}")));
    }
    if f.terms().any(|(m, _)| m.exponents()[active..].iter().any(|&e| e > 0)) {
        return Err(Error::InvalidArgument(format!("polynomial involves variables beyond x{active}")));
    }
    let last = active - 1;
    if f.is_monic_in(last) {
        return Ok((VarChange::identity(ring, n), normalize_in(f, last)?));
    }
    if matches!(strategy, MonicStrategy::Shear | MonicStrategy::Auto) {
        if let Some(shifts) = find_shear(f, active) {
            let vc = VarChange::shear(ring, n, &shifts)?;
            let g = vc.apply(f)?;
            debug_assert!(g.is_monic_in(last));
            return Ok((vc, normalize_in(&g, last)?));
        }
        if strategy == MonicStrategy::Shear {
            return Err(Error::NotMonic);
        }
    }
    let dmax = 1 + (0..active).filter_map(|i| f.degree_in(i)).max().unwrap_or(0);
    for d in 2..=dmax.max(2) {
        let vc = VarChange::power_subst(ring, active, d)?.extend(n)?;
        let g = vc.apply(f)?;
        if g.is_monic_in(last) {
            return Ok((vc, normalize_in(&g, last)?));
        }
    }
    Err(Error::InvariantViolation("power substitution failed to produce a monic polynomial".into()))
}

fn normalize_in(g: &Poly, var: usize) -> Result<Poly> {
    let lc = g.leading_coeff_in(var).and_then(|p| p.constant_value()).ok_or(Error::NotMonic)?;
    Ok(g.scale(&g.ring().inv(&lc)?))
}

/// Searches `c ∈ {0..B-1}^{k-1}` for a point where the top-degree form of
/// `f` does not vanish at `(c, 1)`; then the shear makes `f` monic in `t_k`.
fn find_shear(f: &Poly, k: usize) -> Option<Vec<CoeffValue>> {
    let ring = f.ring();
    let top = f.total_degree()?;
    let top_form: Vec<(&Monomial, &CoeffValue)> = f.terms().filter(|(m, _)| m.degree() == top).collect();
    let bound = match ring {
        CoeffRing::PrimeField(p) => p.min(u64::from(top) + 1),
        _ => u64::from(top) + 1,
    };
    let dims = k - 1;
    let total = (bound as usize).checked_pow(dims as u32)?;
    if total > 4096 {
        return None;
    }
    let mut digits = alloc::vec![0u64; dims];
    for idx in 0..total {
        let mut rest = idx;
        for slot in digits.iter_mut().rev() {
            *slot = (rest % bound as usize) as u64;
            rest /= bound as usize;
        }
        let point: Vec<CoeffValue> = digits.iter().map(|&c| ring.from_i64(c as i64)).collect();
        let mut acc = ring.zero();
        for (m, c) in &top_form {
            let mut term = (*c).clone();
            for (i, &e) in m.exponents()[..dims].iter().enumerate() {
                for _ in 0..e {
                    term = ring.mul(&term, &point[i]);
                }
            }
            acc = ring.add(&acc, &term);
        }
        if !ring.is_zero(&acc) {
            return Some(point);
        }
    }
    None
}
