mod common;

use common::*;
use krull_core::catalog::random_ideal;
use krull_core::gb::{colon_element, element_annihilator, eliminate, lt_dimension};
use krull_core::{parse_poly, CoeffRing, FreeElem, Ideal, Limits, ModulePresentation, Monomial, MonomialOrder, Poly};
use proptest::prelude::*;

/// Plain multivariate division, written independently of the engine.
fn remainder(f: &Poly, divisors: &[Poly], ord: MonomialOrder) -> Poly {
    let ring = f.ring();
    let mut p = f.clone();
    let mut rem = Poly::zero(ring, f.nvars());
    while !p.is_zero() {
        let (m, c) = p.leading_term(ord).unwrap();
        let lead = Poly::term(ring, m.clone(), c.value().clone());
        let hit = divisors.iter().find(|g| g.leading_term(ord).unwrap().0.divides(&m));
        match hit {
            Some(g) => {
                let (gm, gc) = g.leading_term(ord).unwrap();
                let q = Poly::term(ring, gm.quotient_of(&m), c.mul(&gc.invert().unwrap()).unwrap().into_value());
                p = &p - &(&q * g);
            }
            None => {
                rem = &rem + &lead;
                p = &p - &lead;
            }
        }
    }
    rem
}

fn s_poly(f: &Poly, g: &Poly, ord: MonomialOrder) -> Poly {
    let (fm, fc) = f.leading_term(ord).unwrap();
    let (gm, gc) = g.leading_term(ord).unwrap();
    let l = fm.lcm(&gm);
    let a = f.mul_monomial(&fm.quotient_of(&l)).scale(gc.value());
    let b = g.mul_monomial(&gm.quotient_of(&l)).scale(fc.value());
    &a - &b
}

fn orders(n: usize) -> Vec<MonomialOrder> {
    vec![MonomialOrder::Lex, MonomialOrder::GrevLex, MonomialOrder::Block(n / 2)]
}

fn small_ideal(ring: CoeffRing, n: usize, seed: u64) -> Ideal {
    random_ideal(&mut rng(seed), ring, n, 3, 3, 3)
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn bases_are_reduced_groebner_bases(ring in field(), n in 1usize..4, seed in any::<u64>()) {
        let j = small_ideal(ring, n, seed);
        for ord in orders(n) {
            let Ok(gb) = j.basis(ord, &Limits::default()) else { continue };
            let polys = gb.polys();
            for g in j.gens() {
                prop_assert!(remainder(g, &polys, ord).is_zero());
            }
            for (i, f) in polys.iter().enumerate() {
                let (m, c) = f.leading_term(ord).unwrap();
                prop_assert!(c.is_one());
                for (k, g) in polys.iter().enumerate() {
                    if k > i {
                        prop_assert!(remainder(&s_poly(f, g, ord), &polys, ord).is_zero());
                    }
                    if k != i {
                        let gm = g.leading_term(ord).unwrap().0;
                        prop_assert!(!f.terms().any(|(t, _)| gm.divides(t)), "not reduced");
                    }
                }
                prop_assert!(!m.is_one() || polys.len() == 1);
            }
        }
    }

    #[test]
    fn membership_does_not_depend_on_order(ring in field(), n in 1usize..4, seed in any::<u64>(), f in any::<u64>(), c in any::<u64>()) {
        let j = small_ideal(ring, n, seed);
        let lim = Limits::default();
        // an element of J and a perturbation of it
        let inside = j.gens().iter().enumerate().fold(Poly::zero(ring, n), |acc, (i, g)| {
            &acc + &(&poly(c.wrapping_add(i as u64), ring, n, 2, 2) * g)
        });
        let outside = &inside + &poly(f, ring, n, 2, 2);
        let mut seen = Vec::new();
        for ord in orders(n) {
            let Ok(gb) = j.basis(ord, &lim) else { continue };
            prop_assert!(gb.contains(&inside).unwrap());
            seen.push(gb.contains(&outside).unwrap());
        }
        prop_assert!(seen.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn dimension_does_not_depend_on_order(ring in field(), n in 1usize..4, seed in any::<u64>()) {
        let j = small_ideal(ring, n, seed);
        let dims: Vec<_> = orders(n)
            .into_iter()
            .filter_map(|o| lt_dimension(&j, o, &Limits::default()).ok())
            .collect();
        prop_assert!(dims.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn elimination_is_the_contraction(ring in prop_oneof![Just(F5), Just(F7)], n in 2usize..4, m in 0usize..3, seed in any::<u64>()) {
        let m = m.min(n - 1);
        let j = small_ideal(ring, n, seed);
        let lim = Limits::default();
        let e = eliminate(&j, m, &lim).unwrap();
        prop_assert_eq!(e.nvars(), m);
        for g in e.gens() {
            prop_assert!(j.contains(&g.with_nvars(n).unwrap(), &lim).unwrap());
        }
        // eliminating one variable at a time gives the same ideal
        let step = eliminate(&eliminate(&j, m + 1, &lim).unwrap(), m, &lim).unwrap();
        prop_assert!(step.same_as(&e, &lim).unwrap());
        // anything of J in the first m variables lies in the elimination ideal
        let lex = j.basis(MonomialOrder::Lex, &lim).unwrap();
        for g in lex.polys() {
            if let Ok(h) = g.with_nvars(m) {
                prop_assert!(e.contains(&h, &lim).unwrap());
            }
        }
    }

    #[test]
    fn annihilator_of_a_class_is_the_colon(ring in field(), n in 1usize..4, seed in any::<u64>(), g in any::<u64>()) {
        let j = small_ideal(ring, n, seed);
        let g = poly(g, ring, n, 2, 2);
        let lim = Limits::default();
        let Ok(colon) = colon_element(&j, &g, &lim) else { return Ok(()) };
        let p = ModulePresentation::cyclic(&j);
        let Ok(ann) = element_annihilator(&p, &FreeElem::from_poly(g.clone()), &lim) else { return Ok(()) };
        prop_assert!(ann.same_as(&colon, &lim).unwrap());
        // everything in the colon kills g
        for h in colon.gens() {
            prop_assert!(j.contains(&(h * &g), &lim).unwrap());
        }
    }
}

#[test]
fn twisted_cubic_implicitization() {
    let lim = Limits::default();
    let gens = ["x1 - x4", "x2 - x4^2", "x3 - x4^3"].iter().map(|s| parse_poly(s, Q, 4).unwrap()).collect();
    let j = Ideal::new(Q, 4, gens).unwrap();
    let e = eliminate(&j, 3, &lim).unwrap();
    let want = ["x2 - x1^2", "x3 - x1*x2", "x1*x3 - x2^2"].iter().map(|s| parse_poly(s, Q, 3).unwrap()).collect();
    assert!(e.same_as(&Ideal::new(Q, 3, want).unwrap(), &lim).unwrap());
}

#[test]
fn monomial_ideal_dimension() {
    // ⟨x1x2, x1x3⟩: the union of a plane and a line has dimension 2
    let lim = Limits::default();
    let gens = ["x1*x2", "x1*x3"].iter().map(|s| parse_poly(s, F7, 3).unwrap()).collect();
    let j = Ideal::new(F7, 3, gens).unwrap();
    assert_eq!(lt_dimension(&j, MonomialOrder::Lex, &lim).unwrap(), krull_core::Dim::Finite(2));
    let leads = [Monomial::from_exponents(&[1, 1, 0]), Monomial::from_exponents(&[1, 0, 1])];
    assert_eq!(krull_core::gb::lead_dimension(3, leads.iter()).unwrap(), krull_core::Dim::Finite(2));
}
