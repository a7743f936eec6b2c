//! Finitely presented modules and torsion over prefix subrings.
//!
//! `B'_k = D[x_1,…,x_k]` is the subring on the first `k` variables. An
//! element is torsion over `B'_k` when some nonzero element of `B'_k` kills
//! it; over a domain the torsion elements form a submodule, so a module is
//! torsion as soon as its generators are.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::autom::VarChange;
use crate::coeff::CoeffRing;
use crate::error::{Error, Result};
use crate::gb::{self, element_annihilator, eliminate, FreeElem, GroebnerBasis, Ideal, Limits};
use crate::krull::Dim;
use crate::poly::{MonomialOrder, Poly};

/// `B^rank` modulo the submodule spanned by `relations`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulePresentation {
    ring: CoeffRing,
    nvars: usize,
    rank: usize,
    relations: Vec<FreeElem>,
    names: Vec<String>,
}

fn default_names(rank: usize) -> Vec<String> {
    (1..=rank).map(|i| format!("e{i}")).collect()
}

impl ModulePresentation {
    pub fn new(ring: CoeffRing, nvars: usize, rank: usize, relations: Vec<FreeElem>) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidArgument("a presentation needs at least one generator".into()));
        }
        for r in &relations {
            if r.rank() != rank {
                return Err(Error::ArityMismatch { expected: rank, found: r.rank() });
            }
            if r.ring() != ring {
                return Err(Error::RingMismatch);
            }
            if r.nvars() != nvars {
                return Err(Error::ArityMismatch { expected: nvars, found: r.nvars() });
            }
        }
        let relations = relations.into_iter().filter(|r| !r.is_zero()).collect();
        Ok(ModulePresentation { ring, nvars, rank, relations, names: default_names(rank) })
    }

    /// `B/J` as a cyclic module.
    pub fn cyclic(j: &Ideal) -> Self {
        ModulePresentation {
            ring: j.ring(),
            nvars: j.nvars(),
            rank: 1,
            relations: j.gens().iter().map(|g| FreeElem::from_poly(g.clone())).collect(),
            names: default_names(1),
        }
    }

    pub fn free(ring: CoeffRing, nvars: usize, rank: usize) -> Self {
        ModulePresentation { ring, nvars, rank: rank.max(1), relations: Vec::new(), names: default_names(rank.max(1)) }
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.rank {
            return Err(Error::ArityMismatch { expected: self.rank, found: names.len() });
        }
        self.names = names;
        Ok(self)
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

    pub fn relations(&self) -> &[FreeElem] {
        &self.relations
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// The class of the `i`-th generator (zero-based).
    pub fn generator(&self, i: usize) -> FreeElem {
        FreeElem::unit(self.ring, self.nvars, self.rank, i)
    }

    /// The same module with every relation rewritten through `phi`.
    pub fn rewrite(&self, phi: &VarChange) -> Result<Self> {
        if phi.nvars() != self.nvars {
            return Err(Error::ArityMismatch { expected: self.nvars, found: phi.nvars() });
        }
        let relations = self.relations.iter().map(|r| r.rewrite(phi)).collect::<Result<Vec<_>>>()?;
        Ok(ModulePresentation { relations, ..self.clone() })
    }

    /// An isomorphic presentation with fewer generators: while some
    /// relation has a unit constant in a component, that generator is
    /// solved for and substituted away. A zero module comes back as
    /// `B/⟨1⟩`.
    pub fn pruned(&self) -> Result<Self> {
        let ring = self.ring;
        let mut rows: Vec<Vec<Poly>> = self.relations.iter().map(|r| r.comps().to_vec()).collect();
        let mut alive: Vec<usize> = (0..self.rank).collect();
        loop {
            // cheapest pivot row first
            let mut pick: Option<(usize, usize, usize)> = None;
            for (ri, row) in rows.iter().enumerate() {
                let size: usize = row.iter().map(Poly::len).sum();
                for &c in &alive {
                    let unit = row[c].constant_value().filter(|v| !ring.is_zero(v) && ring.inv(v).is_ok());
                    if unit.is_some() && pick.is_none_or(|(_, _, s)| size < s) {
                        pick = Some((ri, c, size));
                    }
                }
            }
            let Some((ri, c, _)) = pick else { break };
            let pivot = rows.swap_remove(ri);
            let inv = ring.inv(&pivot[c].constant_value().unwrap_or_else(|| ring.one()))?;
            for row in &mut rows {
                if row[c].is_zero() {
                    continue;
                }
                let factor = row[c].scale(&ring.neg(&inv));
                for &k in &alive {
                    if !pivot[k].is_zero() {
                        row[k] = row[k].checked_add(&factor.checked_mul(&pivot[k])?)?;
                    }
                }
            }
            alive.retain(|&k| k != c);
            rows.retain(|row| alive.iter().any(|&k| !row[k].is_zero()));
        }
        if alive.is_empty() {
            let one = FreeElem::from_poly(Poly::one(ring, self.nvars));
            return ModulePresentation::new(ring, self.nvars, 1, alloc::vec![one]);
        }
        let relations = rows
            .into_iter()
            .map(|row| FreeElem::new(alive.iter().map(|&k| row[k].clone()).collect()))
            .collect::<Result<Vec<_>>>()?;
        let names = alive.iter().map(|&k| self.names[k].clone()).collect();
        ModulePresentation::new(ring, self.nvars, alive.len(), relations)?.with_names(names)
    }

    pub fn relation_basis(&self, ord: MonomialOrder, limits: &Limits) -> Result<GroebnerBasis> {
        gb::module_buchberger(self.ring, self.nvars, self.rank, &self.relations, ord, limits)
    }

    pub fn is_zero_module(&self, limits: &Limits) -> Result<bool> {
        Ok(self.relation_basis(MonomialOrder::GrevLex, limits)?.is_unit())
    }

    /// Whether `y` is the zero class.
    pub fn is_zero_class(&self, y: &FreeElem, limits: &Limits) -> Result<bool> {
        if y.is_zero() {
            return Ok(true);
        }
        self.relation_basis(MonomialOrder::GrevLex, limits)?.contains_elem(y)
    }
}

impl fmt::Display for ModulePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "module rank {} over {} vars", self.rank, self.nvars)?;
        for r in &self.relations {
            write!(f, "\nrel: ")?;
            for (i, c) in r.comps().iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{c}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Torsion {
    Torsion,
    NonTorsion,
}

/// Torsion status over `B'_0 ⊂ B'_1 ⊂ … ⊂ B'_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionProfile {
    flags: Vec<Torsion>,
}

impl TorsionProfile {
    /// Fails unless torsion over `B'_k` implies torsion over every larger `B'_k'`.
    pub fn new(flags: Vec<Torsion>) -> Result<Self> {
        if let Some(s) = flags.iter().position(|f| *f == Torsion::Torsion) {
            if flags[s..].contains(&Torsion::NonTorsion) {
                return Err(Error::InvariantViolation(format!("torsion profile is not monotone: {flags:?}")));
            }
        }
        Ok(TorsionProfile { flags })
    }

    pub fn flags(&self) -> &[Torsion] {
        &self.flags
    }

    pub fn nvars(&self) -> usize {
        self.flags.len() - 1
    }

    pub fn is_torsion(&self, k: usize) -> bool {
        self.flags[k] == Torsion::Torsion
    }

    /// Least `k` with torsion over `B'_k`, or `n + 1`.
    pub fn threshold(&self) -> usize {
        self.flags.iter().position(|f| *f == Torsion::Torsion).unwrap_or(self.flags.len())
    }

    /// `threshold − 1`, the dimension the profile predicts.
    pub fn m_profile(&self) -> Dim {
        match self.threshold() {
            0 => Dim::MinusInfinity,
            s => Dim::Finite(s - 1),
        }
    }
}

impl fmt::Display for TorsionProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, flag) in self.flags.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            let s = match flag {
                Torsion::Torsion => "torsion",
                Torsion::NonTorsion => "non-torsion",
            };
            write!(f, "k={k} {s}")?;
        }
        Ok(())
    }
}

fn check_k(p: &ModulePresentation, k: usize) -> Result<()> {
    if k > p.nvars {
        return Err(Error::InvalidArgument(format!("k = {k} exceeds {} variables", p.nvars)));
    }
    Ok(())
}

pub fn is_torsion_element(p: &ModulePresentation, y: &FreeElem, k: usize, limits: &Limits) -> Result<bool> {
    check_k(p, k)?;
    let ann = element_annihilator(p, y, limits)?;
    Ok(!eliminate(&ann, k, limits)?.is_zero_ideal())
}

pub fn is_torsion_module(p: &ModulePresentation, k: usize, limits: &Limits) -> Result<bool> {
    check_k(p, k)?;
    let p = &p.pruned()?;
    for i in 0..p.rank {
        if !is_torsion_element(p, &p.generator(i), k, limits)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Ann(e_i)` for every generator.
pub fn generator_annihilators(p: &ModulePresentation, limits: &Limits) -> Result<Vec<Ideal>> {
    (0..p.rank).map(|i| element_annihilator(p, &p.generator(i), limits)).collect()
}

/// Torsion profile of a module given its generator annihilators.
pub fn profile_from_annihilators(anns: &[Ideal], limits: &Limits) -> Result<TorsionProfile> {
    let mut live = Vec::new();
    for a in anns {
        if !a.is_unit(limits)? {
            live.push(a);
        }
    }
    let Some(first) = live.first() else { return Err(Error::ZeroModule) };
    let n = first.nvars();
    let mut flags = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut torsion = true;
        for a in &live {
            if eliminate(a, k, limits)?.is_zero_ideal() {
                torsion = false;
                break;
            }
        }
        flags.push(if torsion { Torsion::Torsion } else { Torsion::NonTorsion });
    }
    TorsionProfile::new(flags)
}

pub fn torsion_profile(p: &ModulePresentation, limits: &Limits) -> Result<TorsionProfile> {
    profile_from_annihilators(&generator_annihilators(&p.pruned()?, limits)?, limits)
}

fn witness_key(f: &Poly, last: usize) -> (bool, u32, usize) {
    (!f.is_monic_in(last), f.total_degree().unwrap_or(0), f.len())
}

/// A nonzero element of `B'_k` killing every generator, as a polynomial in
/// `k` variables; `None` when some generator is not torsion over `B'_k`.
pub fn witness_from_annihilators(anns: &[Ideal], k: usize, limits: &Limits) -> Result<Option<Poly>> {
    let Some(first) = anns.first() else { return Err(Error::InvalidArgument("no generators".into())) };
    let ring = first.ring();
    let mut w = Poly::one(ring, k);
    for a in anns {
        let e = eliminate(a, k, limits)?;
        let best = e
            .gens()
            .iter()
            .min_by(|f, g| witness_key(f, k.saturating_sub(1)).cmp(&witness_key(g, k.saturating_sub(1))));
        match best {
            Some(f) if f.is_constant() => {}
            Some(f) => w = w.checked_mul(f)?,
            None => return Ok(None),
        }
    }
    Ok(Some(w))
}

/// A nonzero `f` with `f·M = 0`: the product of one element from each
/// generator's annihilator.
pub fn module_annihilator_witness(p: &ModulePresentation, limits: &Limits) -> Result<Poly> {
    let anns = generator_annihilators(p, limits)?;
    witness_from_annihilators(&anns, p.nvars, limits)?.ok_or(Error::NotTorsion)
}

/// Rewrites `p` through `phi` and, using the monic annihilator `g` of the
/// rewritten module, presents it over the first `n − 1` variables.
///
/// With `e = deg_{t_n} g`, `B/⟨g⟩` is free over `B_{n−1}` on
/// `1, t_n, …, t_n^{e−1}`, so the generators become `e_i·t_n^j` and the
/// relations are the reductions of `t_n^j·r` modulo `g` for `j < e`.
pub fn descend(p: &ModulePresentation, phi: &VarChange, g: &Poly) -> Result<ModulePresentation> {
    let n = p.nvars;
    if n == 0 {
        return Err(Error::InvalidArgument("nothing to descend over 0 variables".into()));
    }
    if g.nvars() != n {
        return Err(Error::ArityMismatch { expected: n, found: g.nvars() });
    }
    let last = n - 1;
    if !g.is_monic_in(last) {
        return Err(Error::NotMonic);
    }
    let e = g.degree_in(last).unwrap_or(0) as usize;
    if e == 0 {
        return Err(Error::NotMonic);
    }
    let moved = p.rewrite(phi)?;
    let ring = p.ring;
    let new_rank = p.rank * e;
    let t = Poly::var(ring, n, last);
    let mut relations = Vec::new();
    for r in &moved.relations {
        let mut shifted = r.clone();
        for _ in 0..e {
            let mut buckets: Vec<Poly> = alloc::vec![Poly::zero(ring, n - 1); new_rank];
            for (i, c) in shifted.comps().iter().enumerate() {
                let red = c.rem_monic_in(g, last)?;
                for (m, v) in red.terms() {
                    let j = m.exponents()[last] as usize;
                    let mut exps = m.exponents().to_vec();
                    exps.truncate(last);
                    let mono = crate::poly::Monomial::from_exponents(&exps);
                    buckets[i * e + j] = buckets[i * e + j]
                        .checked_add(&Poly::term(ring, mono, v.clone()))?;
                }
            }
            relations.push(FreeElem::new(buckets)?);
            shifted = shifted.scale(&t)?;
        }
    }
    let names = p
        .names
        .iter()
        .flat_map(|nm| {
            (0..e).map(move |j| match j {
                0 => nm.clone(),
                1 => format!("{nm}*t{n}"),
                _ => format!("{nm}*t{n}^{j}"),
            })
        })
        .collect();
    ModulePresentation::new(ring, n - 1, new_rank, relations)?.with_names(names)
}

/// Dimension of the module from one basis of its relations.
pub fn lead_module_dimension(p: &ModulePresentation, limits: &Limits) -> Result<Dim> {
    gb::module_lead_dimension(&p.relation_basis(MonomialOrder::GrevLex, limits)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autom::monicize;
    use crate::poly::parse_poly;

    fn q(s: &str, n: usize) -> Poly {
        parse_poly(s, CoeffRing::Rationals, n).unwrap()
    }

    fn cyclic(gens: &[&str], n: usize) -> ModulePresentation {
        ModulePresentation::cyclic(&Ideal::new(CoeffRing::Rationals, n, gens.iter().map(|g| q(g, n)).collect()).unwrap())
    }

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn torsion_elements() {
        let p = cyclic(&["x1"], 2);
        let one = FreeElem::from_poly(q("1", 2));
        assert!(is_torsion_element(&p, &one, 1, &lim()).unwrap());
        assert!(!is_torsion_element(&p, &one, 0, &lim()).unwrap());
        let p = cyclic(&["x1*x2 - 1"], 2);
        assert!(!is_torsion_element(&p, &one, 1, &lim()).unwrap());
    }

    #[test]
    fn torsion_modules() {
        assert!(is_torsion_module(&cyclic(&["x1*x2 + 1"], 2), 2, &lim()).unwrap());
        assert!(!is_torsion_module(&ModulePresentation::free(CoeffRing::Rationals, 2, 1), 2, &lim()).unwrap());
        let p = cyclic(&["x1"], 2);
        assert!(is_torsion_module(&p, 1, &lim()).unwrap());
        assert!(!is_torsion_module(&p, 0, &lim()).unwrap());
    }

    #[test]
    fn profiles() {
        use self::Torsion::{NonTorsion, Torsion as T};
        let pr = torsion_profile(&cyclic(&["x1"], 2), &lim()).unwrap();
        assert_eq!(pr.flags(), &[NonTorsion, T, T]);
        assert_eq!(pr.m_profile(), Dim::Finite(0));
        let pr = torsion_profile(&ModulePresentation::free(CoeffRing::Rationals, 2, 1), &lim()).unwrap();
        assert_eq!(pr.flags(), &[NonTorsion, NonTorsion, NonTorsion]);
        assert_eq!(pr.m_profile(), Dim::Finite(2));
        let pr = torsion_profile(&cyclic(&["x1*x2 - 1"], 2), &lim()).unwrap();
        assert_eq!(pr.flags(), &[NonTorsion, NonTorsion, T]);
        assert_eq!(pr.m_profile(), Dim::Finite(1));
        assert_eq!(torsion_profile(&cyclic(&["1"], 2), &lim()), Err(Error::ZeroModule));
        assert!(TorsionProfile::new(alloc::vec![T, NonTorsion]).is_err());
    }

    #[test]
    fn witnesses() {
        let w = module_annihilator_witness(&cyclic(&["x1*x2 + 1"], 2), &lim()).unwrap();
        assert!(w.div_exact(&q("x1*x2 + 1", 2)).unwrap().is_some());
        let r = CoeffRing::Rationals;
        let p = ModulePresentation::new(
            r,
            2,
            2,
            alloc::vec![
                FreeElem::new(alloc::vec![q("x1", 2), q("0", 2)]).unwrap(),
                FreeElem::new(alloc::vec![q("0", 2), q("x2", 2)]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(module_annihilator_witness(&p, &lim()).unwrap(), q("x1*x2", 2));
        assert_eq!(module_annihilator_witness(&cyclic(&["1"], 2), &lim()).unwrap(), q("1", 2));
        assert_eq!(
            module_annihilator_witness(&ModulePresentation::free(r, 2, 1), &lim()),
            Err(Error::NotTorsion)
        );
    }

    #[test]
    fn pruning_drops_unit_pivots() {
        let rels = alloc::vec![
            FreeElem::new(alloc::vec![q("x1", 2), q("2", 2), q("x2", 2)]).unwrap(),
            FreeElem::new(alloc::vec![q("x2", 2), q("x1", 2), q("0", 2)]).unwrap(),
        ];
        let p = ModulePresentation::new(CoeffRing::Rationals, 2, 3, rels).unwrap();
        let pr = p.pruned().unwrap();
        assert_eq!(pr.rank(), 2);
        assert_eq!(pr.names(), [String::from("e1"), String::from("e3")]);
        // e2 = −(x1 e1 + x2 e3)/2, so x2 e1 + x1 e2 = 0 becomes (x2 − x1²/2) e1 − (x1 x2/2) e3
        let want = FreeElem::new(alloc::vec![q("x2 - 1/2*x1^2", 2), q("-1/2*x1*x2", 2)]).unwrap();
        assert_eq!(pr.relations(), [want]);
        let unit = cyclic(&["x1", "x2 + 1", "1"], 2);
        assert!(unit.pruned().unwrap().is_zero_module(&lim()).unwrap());
    }

    #[test]
    fn descend_examples() {
        let p = cyclic(&["x1*x2 + 1"], 2);
        let (phi, g) = monicize(&q("x1*x2 + 1", 2)).unwrap();
        assert_eq!(g, q("x2^3 + x1*x2 + 1", 2));
        let d = descend(&p, &phi, &g).unwrap();
        assert_eq!((d.nvars(), d.rank()), (1, 3));
        // t2^j * (t2^3 + t1 t2 + 1) reduces to zero: no relations survive
        assert!(d.relations().is_empty());

        let p = cyclic(&["x2 - 5"], 2);
        let id = VarChange::identity(CoeffRing::Rationals, 2);
        let d = descend(&p, &id, &q("x2 - 5", 2)).unwrap();
        assert_eq!((d.nvars(), d.rank(), d.relations().len()), (1, 1, 0));

        let p = cyclic(&["x2"], 2);
        let d = descend(&p, &id, &q("x2", 2)).unwrap();
        assert_eq!((d.nvars(), d.rank(), d.relations().len()), (1, 1, 0));
        assert_eq!(descend(&p, &id, &q("x1*x2", 2)), Err(Error::NotMonic));
    }

    #[test]
    fn descent_keeps_relations() {
        // B/<x2^2, x1*x2> descended along x2^2: generators 1, t2 with t2*x1 = 0
        let p = cyclic(&["x2^2", "x1*x2"], 2);
        let id = VarChange::identity(CoeffRing::Rationals, 2);
        let d = descend(&p, &id, &q("x2^2", 2)).unwrap();
        assert_eq!(d.rank(), 2);
        assert!(d.relations().iter().any(|r| r.comps()[1] == q("x1", 1) && r.comps()[0].is_zero()));
        assert_eq!(lead_module_dimension(&d, &lim()).unwrap(), Dim::Finite(1));
    }
}
