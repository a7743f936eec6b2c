//! Buchberger's algorithm on vectors of polynomials.
//!
//! Ideals are rank-1 modules. Vectors are stored as term lists sorted
//! descending under the position-over-term extension of the monomial order,
//! where a smaller component index dominates.

use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::coeff::{BaseField, CoeffRing, CoeffValue};
use crate::error::{Error, Result};
use crate::poly::{Monomial, MonomialOrder};

use super::Limits;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Term {
    pub comp: usize,
    pub mono: Monomial,
    pub coeff: CoeffValue,
}

/// A monic basis element with cached leading data.
#[derive(Clone, Debug)]
pub(crate) struct Elem {
    pub terms: Vec<Term>,
    pub mask: u64,
    pub sugar: u32,
}

impl Elem {
    pub fn lead(&self) -> &Term {
        &self.terms[0]
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

pub(crate) fn cmp_terms(ord: MonomialOrder, ac: usize, am: &Monomial, bc: usize, bm: &Monomial) -> Ordering {
    match bc.cmp(&ac) {
        Ordering::Equal => ord.cmp(am, bm),
        o => o,
    }
}

pub(crate) struct Engine {
    pub ring: CoeffRing,
    pub ord: MonomialOrder,
    pub limits: Limits,
}

impl Engine {
    pub fn new(ring: CoeffRing, ord: MonomialOrder, limits: Limits) -> Result<Self> {
        if !ring.is_field() {
            return Err(Error::UnsupportedRing(format!("Gröbner bases need a field, got {ring}")));
        }
        Ok(Engine { ring, ord, limits })
    }

    /// `a − c·m·b`, both inputs sorted.
    fn sub_scaled(&self, a: &[Term], c: &CoeffValue, m: &Monomial, b: &[Term]) -> Vec<Term> {
        let ring = self.ring;
        let negc = ring.neg(c);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let mut bm = b.first().map(|t| t.mono.mul(m));
        while i < a.len() || j < b.len() {
            let take = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => cmp_terms(self.ord, x.comp, &x.mono, y.comp, bm.as_ref().unwrap_or(&y.mono)),
                (Some(_), None) => Ordering::Greater,
                _ => Ordering::Less,
            };
            match take {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let y = &b[j];
                    out.push(Term { comp: y.comp, mono: bm.take().unwrap_or_else(|| y.mono.mul(m)), coeff: ring.mul(&y.coeff, &negc) });
                    j += 1;
                    bm = b.get(j).map(|t| t.mono.mul(m));
                }
                Ordering::Equal => {
                    let y = &b[j];
                    let v = ring.add(&a[i].coeff, &ring.mul(&y.coeff, &negc));
                    if !ring.is_zero(&v) {
                        out.push(Term { comp: y.comp, mono: a[i].mono.clone(), coeff: v });
                    }
                    i += 1;
                    j += 1;
                    bm = b.get(j).map(|t| t.mono.mul(m));
                }
            }
        }
        out
    }

    fn find_divisor<'a>(&self, t: &Term, basis: &'a [Elem], active: &[usize]) -> Option<&'a Elem> {
        let tm = t.mono.support();
        active.iter().map(|&k| &basis[k]).find(|g| {
            let l = g.lead();
            l.comp == t.comp && g.mask & !tm == 0 && l.mono.divides(&t.mono)
        })
    }

    /// Full reduction of `f` by the monic elements `basis[active]`.
    pub fn reduce(&self, f: Vec<Term>, basis: &[Elem], active: &[usize]) -> Result<Vec<Term>> {
        self.reduce_upto(f, basis, active, usize::MAX)
    }

    /// Reduces until the leading term is irreducible. Tails are left for
    /// the final interreduction; reducing them early swells module bases.
    fn reduce_lead(&self, f: Vec<Term>, basis: &[Elem], active: &[usize]) -> Result<Vec<Term>> {
        self.reduce_upto(f, basis, active, 1)
    }

    fn reduce_upto(&self, f: Vec<Term>, basis: &[Elem], active: &[usize], stop: usize) -> Result<Vec<Term>> {
        let mut p = f;
        let mut done = 0;
        while done < p.len() && done < stop {
            match self.find_divisor(&p[done], basis, active) {
                Some(g) => {
                    let lt = &p[done];
                    let q = g.lead().mono.quotient_of(&lt.mono);
                    let c = lt.coeff.clone();
                    let tail = self.sub_scaled(&p[done..], &c, &q, &g.terms);
                    p.truncate(done);
                    p.extend(tail);
                    if p.len() > self.limits.max_terms {
                        return Err(Error::ResourceLimit(format!(
                            "reduction exceeds {} terms",
                            self.limits.max_terms
                        )));
                    }
                    self.check_bits(&p[done..])?;
                }
                None => done += 1,
            }
        }
        Ok(p)
    }

    fn make_monic(&self, mut v: Vec<Term>) -> Result<Vec<Term>> {
        let inv = self.ring.inv(&v[0].coeff)?;
        if !self.ring.is_one(&inv) {
            for t in &mut v {
                t.coeff = self.ring.mul(&t.coeff, &inv);
            }
        }
        Ok(v)
    }

    fn check_bits(&self, v: &[Term]) -> Result<()> {
        if let BaseField::Prime(_) = self.ring.base() {
            return Ok(());
        }
        let bits = v.iter().map(|t| self.ring.bit_size(&t.coeff)).max().unwrap_or(0);
        if bits > self.limits.max_coeff_bits {
            return Err(Error::ResourceLimit(format!("coefficient of {bits} bits exceeds the limit")));
        }
        Ok(())
    }

    fn elem(&self, terms: Vec<Term>, sugar: u32) -> Elem {
        let mask = terms[0].mono.support();
        Elem { terms, mask, sugar }
    }

    /// Reduced Gröbner basis of the vectors `gens`, sorted descending by
    /// leading term.
    pub fn groebner(&self, gens: Vec<Vec<Term>>, rank1: bool) -> Result<Vec<Elem>> {
        let mut gens: Vec<Vec<Term>> = gens.into_iter().filter(|g| !g.is_empty()).collect();
        gens.sort_by(|a, b| cmp_terms(self.ord, a[0].comp, &a[0].mono, b[0].comp, &b[0].mono));
        let mut basis: Vec<Elem> = Vec::new();
        let mut active: Vec<usize> = Vec::new();
        let mut pairs: Vec<Pair> = Vec::new();
        let mut processed = 0usize;

        for g in gens {
            let sugar = g.iter().map(|t| t.mono.degree()).max().unwrap_or(0);
            let h = self.reduce_lead(g, &basis, &active)?;
            if h.is_empty() {
                continue;
            }
            let h = self.make_monic(h)?;
            self.insert(self.elem(h, sugar), &mut basis, &mut active, &mut pairs, rank1)?;
        }

        while !pairs.is_empty() {
            processed += 1;
            if processed > self.limits.max_pairs || pairs.len() > self.limits.max_pairs {
                return Err(Error::ResourceLimit(format!("more than {} critical pairs", self.limits.max_pairs)));
            }
            let pick = (0..pairs.len())
                .min_by(|&a, &b| {
                    pairs[a].sugar.cmp(&pairs[b].sugar).then_with(|| self.ord.cmp(&pairs[a].lcm, &pairs[b].lcm))
                })
                .unwrap_or(0);
            let pair = pairs.swap_remove(pick);
            let (gi, gj) = (&basis[pair.i], &basis[pair.j]);
            let qi = gi.lead().mono.quotient_of(&pair.lcm);
            let qj = gj.lead().mono.quotient_of(&pair.lcm);
            let left: Vec<Term> = gi
                .terms
                .iter()
                .map(|t| Term { comp: t.comp, mono: t.mono.mul(&qi), coeff: t.coeff.clone() })
                .collect();
            let s = self.sub_scaled(&left, &self.ring.one(), &qj, &gj.terms);
            let h = self.reduce_lead(s, &basis, &active)?;
            if h.is_empty() {
                continue;
            }
            let h = self.make_monic(h)?;
            self.check_bits(&h)?;
            self.insert(self.elem(h, pair.sugar), &mut basis, &mut active, &mut pairs, rank1)?;
        }

        self.interreduce(basis, active)
    }

    /// Gebauer–Möller update for a new element.
    fn insert(
        &self,
        h: Elem,
        basis: &mut Vec<Elem>,
        active: &mut Vec<usize>,
        pairs: &mut Vec<Pair>,
        rank1: bool,
    ) -> Result<()> {
        let hi = basis.len();
        let hc = h.lead().comp;
        let hm = h.lead().mono.clone();
        let hdeg = hm.degree();
        let hsugar = h.sugar;
        basis.push(h);

        struct Cand {
            g: usize,
            lcm: Monomial,
            coprime: bool,
        }
        let mut cands: Vec<Cand> = active
            .iter()
            .filter(|&&g| basis[g].lead().comp == hc)
            .map(|&g| {
                let gm = &basis[g].lead().mono;
                Cand { g, lcm: gm.lcm(&hm), coprime: rank1 && gm.is_coprime(&hm) }
            })
            .collect();

        let mut kept: Vec<Cand> = Vec::new();
        while let Some(c) = cands.pop() {
            let dominated = !c.coprime
                && (cands.iter().any(|o| o.lcm.divides(&c.lcm)) || kept.iter().any(|o| o.lcm.divides(&c.lcm)));
            if !dominated {
                kept.push(c);
            }
        }

        pairs.retain(|p| {
            if basis[p.i].lead().comp != hc || !hm.divides(&p.lcm) {
                return true;
            }
            let li = basis[p.i].lead().mono.lcm(&hm);
            let lj = basis[p.j].lead().mono.lcm(&hm);
            li == p.lcm || lj == p.lcm
        });

        for c in kept.into_iter().filter(|c| !c.coprime) {
            let g = &basis[c.g];
            let gdeg = g.lead().mono.degree();
            let l = c.lcm.degree();
            let sugar = (g.sugar + (l - gdeg)).max(hsugar + (l - hdeg));
            pairs.push(Pair { i: c.g, j: hi, lcm: c.lcm, sugar });
        }
        if pairs.len() > self.limits.max_pairs {
            return Err(Error::ResourceLimit(format!("more than {} critical pairs", self.limits.max_pairs)));
        }

        active.retain(|&g| {
            let l = basis[g].lead();
            !(l.comp == hc && hm.divides(&l.mono))
        });
        active.push(hi);
        Ok(())
    }

    fn interreduce(&self, basis: Vec<Elem>, active: Vec<usize>) -> Result<Vec<Elem>> {
        let mut out: Vec<Elem> = Vec::with_capacity(active.len());
        for (pos, &k) in active.iter().enumerate() {
            let others: Vec<usize> = active.iter().enumerate().filter(|(p, _)| *p != pos).map(|(_, &o)| o).collect();
            let g = &basis[k];
            let mut terms = Vec::with_capacity(g.terms.len());
            terms.push(g.terms[0].clone());
            let tail = self.reduce(g.terms[1..].to_vec(), &basis, &others)?;
            terms.extend(tail);
            out.push(Elem { terms, mask: g.mask, sugar: g.sugar });
        }
        out.sort_by(|a, b| {
            let (x, y) = (a.lead(), b.lead());
            cmp_terms(self.ord, y.comp, &y.mono, x.comp, &x.mono)
        });
        Ok(out)
    }
}
