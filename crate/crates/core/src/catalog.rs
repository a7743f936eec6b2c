//! Fixed test modules and seeded random instances.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coeff::{BaseField, CoeffRing, CoeffValue};
use crate::gb::{FreeElem, Ideal};
use crate::krull::Dim;
use crate::modpres::ModulePresentation;
use crate::poly::{parse_poly, Monomial, Poly};

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub module: ModulePresentation,
    /// Dimension worked out by hand.
    pub expected: Dim,
}

fn poly(ring: CoeffRing, n: usize, s: &str) -> Poly {
    parse_poly(s, ring, n).expect("catalog polynomial")
}

fn cyclic(ring: CoeffRing, n: usize, gens: &[&str]) -> ModulePresentation {
    let gens = gens.iter().map(|g| poly(ring, n, g)).collect();
    ModulePresentation::cyclic(&Ideal::new(ring, n, gens).expect("catalog ideal"))
}

fn module(ring: CoeffRing, n: usize, rank: usize, rows: &[&[&str]]) -> ModulePresentation {
    let rels = rows
        .iter()
        .map(|row| FreeElem::new(row.iter().map(|s| poly(ring, n, s)).collect()).expect("catalog row"))
        .collect();
    ModulePresentation::new(ring, n, rank, rels).expect("catalog module")
}

/// Twenty modules with known dimension.
pub fn catalog() -> Vec<CatalogEntry> {
    let q = CoeffRing::Rationals;
    let f5 = CoeffRing::PrimeField(5);
    let f7 = CoeffRing::PrimeField(7);
    let e = |name, module, d| CatalogEntry { name, module, expected: Dim::Finite(d) };
    alloc::vec![
        e("zero ideal, n=3", cyclic(q, 3, &[]), 3),
        e("maximal ideal, n=3", cyclic(q, 3, &["x1", "x2", "x3"]), 0),
        e("hyperbola", cyclic(q, 2, &["x1*x2 - 1"]), 1),
        e("plane and line", cyclic(q, 3, &["x1*x3", "x2*x3"]), 2),
        e("diagonal rank 2", module(q, 2, 2, &[&["x1", "0"], &["0", "x2"]]), 1),
        e("coordinate line", cyclic(f5, 2, &["x1"]), 1),
        e("hyperbola plus", cyclic(q, 2, &["x1*x2 + 1"]), 1),
        e("horizontal line", cyclic(q, 2, &["x2 - 5"]), 1),
        e("x2 axis quotient", cyclic(q, 2, &["x2"]), 1),
        e("origin, n=2", cyclic(q, 2, &["x1", "x2"]), 0),
        e("three points", cyclic(q, 2, &["x1^2 - x2", "x1*x2 - x1"]), 0),
        e("twisted cubic", cyclic(q, 3, &["x2 - x1^2", "x3 - x1^3"]), 1),
        e("sphere", cyclic(q, 3, &["x1^2 + x2^2 + x3^2 - 1"]), 2),
        e("nilpotent line over F5", cyclic(f5, 3, &["x1^2*x2 + x3", "x2^3"]), 1),
        e("free rank 2", ModulePresentation::free(q, 2, 2), 2),
        e("one row of rank 2", module(q, 2, 2, &[&["x1", "x2"]]), 2),
        e("two rows of rank 2", module(q, 2, 2, &[&["x1", "x2"], &["x2", "-x1"]]), 1),
        e("cube root of two", cyclic(q, 1, &["x1^3 - 2"]), 0),
        e("quadric cone, n=4", cyclic(q, 4, &["x1*x2 - x3*x4"]), 3),
        e("curve over F7", cyclic(f7, 3, &["x1*x2*x3 - 1", "x1 + x2 + x3"]), 1),
    ]
}

fn random_coeff<R: Rng>(rng: &mut R, ring: CoeffRing) -> CoeffValue {
    let base = |rng: &mut R, b: BaseField| match b {
        BaseField::Rationals => {
            let v = rng.gen_range(1..=4i64);
            if rng.gen_bool(0.5) {
                -v
            } else {
                v
            }
        }
        BaseField::Prime(p) => rng.gen_range(1..p as i64),
    };
    match ring {
        CoeffRing::Rationals => ring.from_i64(base(rng, BaseField::Rationals)),
        CoeffRing::PrimeField(p) => ring.from_i64(base(rng, BaseField::Prime(p))),
        CoeffRing::DualNumbers { base: b, m } => {
            // unit, nilpotent, or mixed
            let mut v = ring.zero();
            let mut pow = ring.one();
            let u = ring.nilpotent_unit().unwrap_or_else(|_| ring.zero());
            for j in 0..m {
                let keep = match j {
                    0 => rng.gen_bool(0.6),
                    _ => rng.gen_bool(0.5),
                };
                if keep {
                    let c = ring.from_i64(base(rng, b));
                    v = ring.add(&v, &ring.mul(&c, &pow));
                }
                pow = ring.mul(&pow, &u);
            }
            if ring.is_zero(&v) {
                ring.one()
            } else {
                v
            }
        }
        CoeffRing::ProductField { base: b, r } => {
            let comps: Vec<CoeffValue> = (0..r)
                .map(|_| {
                    let f = b.as_ring();
                    if rng.gen_bool(0.25) {
                        f.zero()
                    } else {
                        f.from_i64(base(rng, b))
                    }
                })
                .collect();
            let v = CoeffValue::Tuple(comps);
            if ring.is_zero(&v) {
                ring.one()
            } else {
                v
            }
        }
    }
}

fn random_monomial<R: Rng>(rng: &mut R, n: usize, max_deg: u32) -> Monomial {
    let mut exps = alloc::vec![0u32; n];
    if n > 0 {
        let d = rng.gen_range(0..=max_deg);
        for _ in 0..d {
            exps[rng.gen_range(0..n)] += 1;
        }
    }
    Monomial::from_exponents(&exps)
}

/// A nonzero polynomial with 1 to `max_terms` terms of degree at most `max_deg`.
pub fn random_poly<R: Rng>(rng: &mut R, ring: CoeffRing, n: usize, max_deg: u32, max_terms: usize) -> Poly {
    loop {
        let k = rng.gen_range(1..=max_terms.max(1));
        let mut p = Poly::zero(ring, n);
        for _ in 0..k {
            let t = Poly::term(ring, random_monomial(rng, n, max_deg), random_coeff(rng, ring));
            p = &p + &t;
        }
        if !p.is_zero() {
            return p;
        }
    }
}

/// A random polynomial that contains a pure power of the last variable.
pub fn random_poly_with_pure_power<R: Rng>(
    rng: &mut R,
    ring: CoeffRing,
    n: usize,
    max_deg: u32,
    max_terms: usize,
) -> Poly {
    loop {
        let a = rng.gen_range(1..=max_deg.max(1));
        let pure = Poly::term(ring, Monomial::var(n, n - 1, a), random_coeff(rng, ring));
        let rest = random_poly(rng, ring, n, max_deg, max_terms.saturating_sub(1).max(1));
        let f = &pure + &rest;
        if f.coeff_in_var(n - 1, a).terms().any(|(m, _)| m.is_one()) && f.degree_in(n - 1) == Some(a) {
            return f;
        }
    }
}

pub fn random_ideal<R: Rng>(
    rng: &mut R,
    ring: CoeffRing,
    n: usize,
    max_deg: u32,
    max_gens: usize,
    max_terms: usize,
) -> Ideal {
    let k = rng.gen_range(1..=max_gens.max(1));
    let gens = (0..k).map(|_| random_poly(rng, ring, n, max_deg, max_terms)).collect();
    Ideal::new(ring, n, gens).expect("random generators share a ring")
}

/// A random element of `B^rank`, possibly zero in some components.
pub fn random_elem<R: Rng>(rng: &mut R, ring: CoeffRing, n: usize, rank: usize, max_deg: u32) -> FreeElem {
    let comps = (0..rank)
        .map(|_| if rng.gen_bool(0.3) { Poly::zero(ring, n) } else { random_poly(rng, ring, n, max_deg, 2) })
        .collect();
    FreeElem::new(comps).expect("rank at least 1")
}

/// Seeded cyclic modules `B/J` with `n ≤ 4` and at most three generators
/// of degree at most 3.
pub fn random_cyclic(ring: CoeffRing, count: usize, seed: u64) -> Vec<ModulePresentation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=4);
            ModulePresentation::cyclic(&random_ideal(&mut rng, ring, n, 3, 3, 3))
        })
        .collect()
}

/// Modules over `F_3[u]/(u^2)` in one or two variables: a fixed list
/// followed by seeded random ones, `count` in total.
pub fn artinian_modules(count: usize, seed: u64) -> Vec<ModulePresentation> {
    let a = CoeffRing::DualNumbers { base: BaseField::Prime(3), m: 2 };
    let mut out = alloc::vec![
        cyclic(a, 1, &["u"]),
        cyclic(a, 2, &["x1"]),
        cyclic(a, 2, &["(1+u)*x1"]),
        cyclic(a, 2, &["u*x1", "x2"]),
        cyclic(a, 2, &["u*x1*x2 + x1"]),
        cyclic(a, 1, &["x1^2 + u"]),
        ModulePresentation::free(a, 2, 1),
        module(a, 2, 2, &[&["u", "x1"]]),
        module(a, 2, 2, &[&["x1", "0"], &["u", "x2"]]),
        cyclic(a, 2, &["1 + u*x1"]),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while out.len() < count {
        let n = rng.gen_range(1..=2);
        let rank = rng.gen_range(1..=2);
        let rows = rng.gen_range(0..=2);
        let rels = (0..rows).map(|_| random_elem(&mut rng, a, n, rank, 2)).collect();
        out.push(ModulePresentation::new(a, n, rank, rels).expect("consistent rows"));
    }
    out.truncate(count);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_has_twenty_entries() {
        let c = catalog();
        assert_eq!(c.len(), 20);
        assert!(c.iter().any(|e| e.module.rank() > 1 && e.module.relations().len() > 1));
    }

    #[test]
    fn random_instances_are_reproducible() {
        let a = random_cyclic(CoeffRing::PrimeField(5), 10, 3);
        let b = random_cyclic(CoeffRing::PrimeField(5), 10, 3);
        assert_eq!(a, b);
        assert!(a.iter().all(|m| m.nvars() >= 1 && m.nvars() <= 4));
        assert_eq!(artinian_modules(25, 1).len(), 25);
    }
}
