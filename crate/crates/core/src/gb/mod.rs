//! Gröbner bases for ideals and submodules of free modules over a field.

mod engine;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::autom::VarChange;
use crate::coeff::CoeffRing;
use crate::error::{Error, Result};
use crate::krull::Dim;
use crate::modpres::ModulePresentation;
use crate::poly::{Monomial, MonomialOrder, Poly};
use engine::{Elem, Engine, Term};

/// Resource bounds for one basis computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_pairs: usize,
    pub max_terms: usize,
    pub max_coeff_bits: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_pairs: 100_000, max_terms: 1_000_000, max_coeff_bits: 1 << 16 }
    }
}

impl Limits {
    /// A small budget for secondary checks on descended presentations,
    /// whose module bases can swell far past the descent itself.
    pub fn cross_check() -> Self {
        Limits { max_pairs: 5_000, max_terms: 5_000, max_coeff_bits: 512 }
    }
}

/// An element of the free module `B^k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeElem {
    comps: Vec<Poly>,
}

impl FreeElem {
    pub fn new(comps: Vec<Poly>) -> Result<Self> {
        let first = comps.first().ok_or_else(|| Error::InvalidArgument("free module element of rank 0".into()))?;
        for p in &comps[1..] {
            if p.ring() != first.ring() {
                return Err(Error::RingMismatch);
            }
            if p.nvars() != first.nvars() {
                return Err(Error::ArityMismatch { expected: first.nvars(), found: p.nvars() });
            }
        }
        Ok(FreeElem { comps })
    }

    pub fn zero(ring: CoeffRing, nvars: usize, rank: usize) -> Self {
        FreeElem { comps: alloc::vec![Poly::zero(ring, nvars); rank] }
    }

    /// The basis vector `e_{i+1}`.
    pub fn unit(ring: CoeffRing, nvars: usize, rank: usize, i: usize) -> Self {
        let mut v = Self::zero(ring, nvars, rank);
        v.comps[i] = Poly::one(ring, nvars);
        v
    }

    pub fn from_poly(p: Poly) -> Self {
        FreeElem { comps: alloc::vec![p] }
    }

    pub fn comps(&self) -> &[Poly] {
        &self.comps
    }

    pub fn into_comps(self) -> Vec<Poly> {
        self.comps
    }

    pub fn rank(&self) -> usize {
        self.comps.len()
    }

    pub fn ring(&self) -> CoeffRing {
        self.comps[0].ring()
    }

    pub fn nvars(&self) -> usize {
        self.comps[0].nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Poly::is_zero)
    }

    pub fn scale(&self, f: &Poly) -> Result<FreeElem> {
        Ok(FreeElem { comps: self.comps.iter().map(|c| c.checked_mul(f)).collect::<Result<_>>()? })
    }

    pub fn add(&self, other: &FreeElem) -> Result<FreeElem> {
        if self.rank() != other.rank() {
            return Err(Error::ArityMismatch { expected: self.rank(), found: other.rank() });
        }
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| a.checked_add(b)).collect::<Result<_>>()?;
        Ok(FreeElem { comps })
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Result<Poly>) -> Result<FreeElem> {
        Ok(FreeElem { comps: self.comps.iter().map(f).collect::<Result<_>>()? })
    }

    pub fn rewrite(&self, phi: &VarChange) -> Result<FreeElem> {
        self.map(|p| phi.apply(p))
    }

    fn to_terms(&self, ord: MonomialOrder) -> Vec<Term> {
        let mut out = Vec::new();
        for (comp, p) in self.comps.iter().enumerate() {
            for (m, c) in p.sorted_terms(ord) {
                out.push(Term { comp, mono: m.clone(), coeff: c.clone() });
            }
        }
        out
    }

    fn from_terms(ring: CoeffRing, nvars: usize, rank: usize, terms: &[Term]) -> FreeElem {
        let mut buckets: Vec<Vec<(Monomial, crate::coeff::CoeffValue)>> = alloc::vec![Vec::new(); rank];
        for t in terms {
            buckets[t.comp].push((t.mono.clone(), t.coeff.clone()));
        }
        FreeElem { comps: buckets.into_iter().map(|b| Poly::from_terms(ring, nvars, b)).collect() }
    }
}

impl fmt::Display for FreeElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.comps.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// A reduced Gröbner basis of an ideal (rank 1) or a submodule of `B^k`.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: CoeffRing,
    nvars: usize,
    rank: usize,
    order: MonomialOrder,
    elems: Vec<Elem>,
}

impl GroebnerBasis {
    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn ring(&self) -> CoeffRing {
        self.ring
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Elements as polynomials; only meaningful for rank 1.
    pub fn polys(&self) -> Vec<Poly> {
        self.elements().into_iter().map(|e| e.comps.into_iter().next().unwrap_or_default()).collect()
    }

    pub fn elements(&self) -> Vec<FreeElem> {
        self.elems.iter().map(|e| FreeElem::from_terms(self.ring, self.nvars, self.rank, &e.terms)).collect()
    }

    /// Leading `(component, monomial)` of every element.
    pub fn leading(&self) -> impl Iterator<Item = (usize, &Monomial)> {
        self.elems.iter().map(|e| (e.lead().comp, &e.lead().mono))
    }

    /// Whether the basis generates the whole free module.
    pub fn is_unit(&self) -> bool {
        (0..self.rank).all(|c| self.leading().any(|(lc, m)| lc == c && m.is_one()))
    }

    fn engine(&self) -> Engine {
        Engine { ring: self.ring, ord: self.order, limits: Limits { max_terms: usize::MAX, ..Limits::default() } }
    }

    pub fn normal_form_elem(&self, v: &FreeElem) -> Result<FreeElem> {
        if v.rank() != self.rank {
            return Err(Error::ArityMismatch { expected: self.rank, found: v.rank() });
        }
        if v.ring() != self.ring {
            return Err(Error::RingMismatch);
        }
        let all: Vec<usize> = (0..self.elems.len()).collect();
        let r = self.engine().reduce(v.to_terms(self.order), &self.elems, &all)?;
        Ok(FreeElem::from_terms(self.ring, self.nvars, self.rank, &r))
    }

    pub fn normal_form(&self, f: &Poly) -> Result<Poly> {
        let v = self.normal_form_elem(&FreeElem::from_poly(f.clone()))?;
        Ok(v.comps.into_iter().next().unwrap_or_default())
    }

    pub fn contains(&self, f: &Poly) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn contains_elem(&self, v: &FreeElem) -> Result<bool> {
        Ok(self.normal_form_elem(v)?.is_zero())
    }
}

impl fmt::Display for GroebnerBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.elements().iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            if self.rank == 1 {
                write!(f, "{}", e.comps[0])?;
            } else {
                write!(f, "{e}")?;
            }
        }
        Ok(())
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn buchberger(
    ring: CoeffRing,
    nvars: usize,
    gens: &[Poly],
    ord: MonomialOrder,
    limits: &Limits,
) -> Result<GroebnerBasis> {
    let vs: Vec<FreeElem> = gens.iter().map(|g| FreeElem::from_poly(g.clone())).collect();
    module_buchberger(ring, nvars, 1, &vs, ord, limits)
}

/// Reduced Gröbner basis of the submodule of `B^rank` generated by `gens`
/// under the position-over-term extension of `ord`.
pub fn module_buchberger(
    ring: CoeffRing,
    nvars: usize,
    rank: usize,
    gens: &[FreeElem],
    ord: MonomialOrder,
    limits: &Limits,
) -> Result<GroebnerBasis> {
    for g in gens {
        if g.ring() != ring {
            return Err(Error::RingMismatch);
        }
        if g.nvars() != nvars {
            return Err(Error::ArityMismatch { expected: nvars, found: g.nvars() });
        }
        if g.rank() != rank {
            return Err(Error::ArityMismatch { expected: rank, found: g.rank() });
        }
    }
    let engine = Engine::new(ring, ord, *limits)?;
    let elems = engine.groebner(gens.iter().map(|g| g.to_terms(ord)).collect(), rank == 1)?;
    Ok(GroebnerBasis { ring, nvars, rank, order: ord, elems })
}

pub fn normal_form(f: &Poly, g: &GroebnerBasis) -> Result<Poly> {
    g.normal_form(f)
}

/// An ideal of `D[x_1,…,x_n]` with a copy-on-write basis cache.
///
/// [`Ideal::basis`] never mutates, so shared references can be queried from
/// several threads; [`Ideal::ensure_basis`] stores the result and needs
/// exclusive access.
#[derive(Clone, Debug)]
pub struct Ideal {
    ring: CoeffRing,
    nvars: usize,
    gens: Vec<Poly>,
    cache: BTreeMap<MonomialOrder, Arc<GroebnerBasis>>,
}

impl PartialEq for Ideal {
    /// Equality of generator lists, not of ideals; see [`Ideal::same_as`].
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.nvars == other.nvars && self.gens == other.gens
    }
}

impl Eq for Ideal {}

impl Ideal {
    pub fn new(ring: CoeffRing, nvars: usize, gens: Vec<Poly>) -> Result<Self> {
        for g in &gens {
            if g.ring() != ring {
                return Err(Error::RingMismatch);
            }
            if g.nvars() != nvars {
                return Err(Error::ArityMismatch { expected: nvars, found: g.nvars() });
            }
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal { ring, nvars, gens, cache: BTreeMap::new() })
    }

    pub fn zero(ring: CoeffRing, nvars: usize) -> Self {
        Ideal { ring, nvars, gens: Vec::new(), cache: BTreeMap::new() }
    }

    pub fn unit(ring: CoeffRing, nvars: usize) -> Self {
        Ideal { ring, nvars, gens: alloc::vec![Poly::one(ring, nvars)], cache: BTreeMap::new() }
    }

    fn from_basis(gb: GroebnerBasis) -> Self {
        let mut cache = BTreeMap::new();
        let (ring, nvars, order) = (gb.ring, gb.nvars, gb.order);
        let gens = gb.polys();
        cache.insert(order, Arc::new(gb));
        Ideal { ring, nvars, gens, cache }
    }

    pub fn ring(&self) -> CoeffRing {
        self.ring
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn cached(&self, ord: MonomialOrder) -> Option<Arc<GroebnerBasis>> {
        self.cache.get(&ord).cloned()
    }

    pub fn basis(&self, ord: MonomialOrder, limits: &Limits) -> Result<Arc<GroebnerBasis>> {
        match self.cache.get(&ord) {
            Some(gb) => Ok(gb.clone()),
            None => Ok(Arc::new(buchberger(self.ring, self.nvars, &self.gens, ord, limits)?)),
        }
    }

    pub fn ensure_basis(&mut self, ord: MonomialOrder, limits: &Limits) -> Result<Arc<GroebnerBasis>> {
        let gb = self.basis(ord, limits)?;
        self.cache.insert(ord, gb.clone());
        Ok(gb)
    }

    /// Any cached basis, else a fresh grevlex one.
    fn some_basis(&self, limits: &Limits) -> Result<Arc<GroebnerBasis>> {
        match self.cache.values().next() {
            Some(gb) => Ok(gb.clone()),
            None => self.basis(MonomialOrder::GrevLex, limits),
        }
    }

    pub fn is_unit(&self, limits: &Limits) -> Result<bool> {
        if self.gens.iter().any(|g| g.is_constant()) {
            return Ok(true);
        }
        if self.gens.is_empty() {
            return Ok(false);
        }
        Ok(self.some_basis(limits)?.is_unit())
    }

    pub fn contains(&self, f: &Poly, limits: &Limits) -> Result<bool> {
        if f.is_zero() {
            return Ok(true);
        }
        if self.gens.is_empty() {
            return Ok(false);
        }
        self.some_basis(limits)?.contains(f)
    }

    /// Ideal equality by mutual generator membership.
    pub fn same_as(&self, other: &Ideal, limits: &Limits) -> Result<bool> {
        for g in other.gens() {
            if !self.contains(g, limits)? {
                return Ok(false);
            }
        }
        for g in self.gens() {
            if !other.contains(g, limits)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn rewrite(&self, phi: &VarChange) -> Result<Ideal> {
        let gens = self.gens.iter().map(|g| phi.apply(g)).collect::<Result<Vec<_>>>()?;
        Ideal::new(self.ring, self.nvars, gens)
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(">")
    }
}

/// `J ∩ D[x_1,…,x_m]`, as an ideal of the `m`-variable ring.
pub fn eliminate(j: &Ideal, m: usize, limits: &Limits) -> Result<Ideal> {
    let n = j.nvars;
    if m > n {
        return Err(Error::InvalidArgument(format!("cannot eliminate down to {m} of {n} variables")));
    }
    if j.gens.is_empty() {
        return Ok(Ideal::zero(j.ring, m));
    }
    if m == n {
        return Ok(j.clone());
    }
    let gb = j.basis(MonomialOrder::Block(m), limits)?;
    let mut kept = Vec::new();
    for p in gb.polys() {
        if let Ok(q) = p.with_nvars(m) {
            kept.push(q);
        }
    }
    Ideal::new(j.ring, m, kept)
}

/// `J ∩ ⟨g⟩` via `tJ + (1 − t)⟨g⟩` with `t` eliminated, then division by `g`.
pub fn colon_element(j: &Ideal, g: &Poly, limits: &Limits) -> Result<Ideal> {
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = j.nvars;
    if g.nvars() != n {
        return Err(Error::ArityMismatch { expected: n, found: g.nvars() });
    }
    if j.gens.is_empty() {
        return Ok(Ideal::zero(j.ring, n));
    }
    let ring = j.ring;
    let t = Poly::var(ring, n + 1, n);
    let one = Poly::one(ring, n + 1);
    let mut gens: Vec<Poly> = j.gens.iter().map(|f| f.with_nvars(n + 1).map(|f| &f * &t)).collect::<Result<_>>()?;
    gens.push(&g.with_nvars(n + 1)? * &(&one - &t));
    let big = Ideal::new(ring, n + 1, gens)?;
    let meet = eliminate(&big, n, limits)?;
    let mut quotients = Vec::new();
    for h in meet.gens() {
        let q = h
            .div_exact(g)?
            .ok_or_else(|| Error::InvariantViolation("intersection element not divisible by g".into()))?;
        quotients.push(q);
    }
    Ideal::new(ring, n, quotients)
}

/// `{h : h·y ∈ relations}` via a module basis of `{(r_j, 0)} ∪ {(y, 1)}`
/// with the tag component last.
pub fn element_annihilator(p: &ModulePresentation, y: &FreeElem, limits: &Limits) -> Result<Ideal> {
    let (ring, n, k) = (p.ring(), p.nvars(), p.rank());
    if y.rank() != k {
        return Err(Error::ArityMismatch { expected: k, found: y.rank() });
    }
    if y.ring() != ring {
        return Err(Error::RingMismatch);
    }
    if y.nvars() != n {
        return Err(Error::ArityMismatch { expected: n, found: y.nvars() });
    }
    let mut rows = Vec::with_capacity(p.relations().len() + 1);
    for r in p.relations() {
        let mut c = r.comps().to_vec();
        c.push(Poly::zero(ring, n));
        rows.push(FreeElem { comps: c });
    }
    let mut tagged = y.comps().to_vec();
    tagged.push(Poly::one(ring, n));
    rows.push(FreeElem { comps: tagged });
    let gb = module_buchberger(ring, n, k + 1, &rows, MonomialOrder::GrevLex, limits)?;
    // the tag-line elements already form a grevlex basis of the annihilator
    let sub = GroebnerBasis {
        ring,
        nvars: n,
        rank: 1,
        order: MonomialOrder::GrevLex,
        elems: gb
            .elems
            .iter()
            .filter(|e| e.lead().comp == k)
            .map(|e| Elem {
                terms: e.terms.iter().map(|t| Term { comp: 0, mono: t.mono.clone(), coeff: t.coeff.clone() }).collect(),
                mask: e.mask,
                sugar: e.sugar,
            })
            .collect(),
    };
    Ok(Ideal::from_basis(sub))
}

/// Largest `|S|` over variable sets `S` containing the support of no
/// leading monomial.
pub fn lead_dimension<'a>(nvars: usize, leads: impl IntoIterator<Item = &'a Monomial>) -> Result<Dim> {
    let mut masks: Vec<u64> = leads.into_iter().map(Monomial::support).collect();
    if masks.is_empty() {
        return Ok(Dim::Finite(nvars));
    }
    if masks.contains(&0) {
        return Ok(Dim::MinusInfinity);
    }
    if nvars > 16 {
        return Err(Error::ResourceLimit(format!("subset enumeration over {nvars} > 16 variables")));
    }
    masks.sort_by_key(|m| m.count_ones());
    let mut minimal: Vec<u64> = Vec::new();
    for m in masks {
        if !minimal.iter().any(|&o| o & !m == 0) {
            minimal.push(m);
        }
    }
    let mut best = 0u32;
    for s in 0u64..(1u64 << nvars) {
        let size = s.count_ones();
        if size > best && minimal.iter().all(|&m| m & !s != 0) {
            best = size;
        }
    }
    Ok(Dim::Finite(best as usize))
}

/// `dim B/J` read off the leading monomials of a basis under `ord`.
pub fn lt_dimension(j: &Ideal, ord: MonomialOrder, limits: &Limits) -> Result<Dim> {
    if j.gens.is_empty() {
        return Ok(Dim::Finite(j.nvars));
    }
    let gb = j.basis(ord, limits)?;
    lead_dimension(j.nvars, gb.leading().map(|(_, m)| m))
}

/// Dimension of `B^k / U` for a module basis of `U`: the maximum over
/// components of the dimension of the leading-monomial ideal there.
pub fn module_lead_dimension(gb: &GroebnerBasis) -> Result<Dim> {
    let mut best = Dim::MinusInfinity;
    for c in 0..gb.rank {
        let d = lead_dimension(gb.nvars, gb.leading().filter(|(lc, _)| *lc == c).map(|(_, m)| m))?;
        best = best.max(d);
    }
    Ok(best)
}

/// Rank of the submodule a position-over-term basis generates: the number
/// of components holding some leading term.
pub fn module_rank(gb: &GroebnerBasis) -> usize {
    let mut seen = alloc::vec![false; gb.rank];
    for (c, _) in gb.leading() {
        seen[c] = true;
    }
    seen.into_iter().filter(|&b| b).count()
}
