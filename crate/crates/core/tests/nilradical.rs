mod common;

use common::*;
use krull_core::catalog::{artinian_modules, random_elem};
use krull_core::nilrad::{check_artinian, is_n_torsion, is_zero_class, n_torsion_profile, reduce_mod_n};
use krull_core::{parse_poly, BaseField, CoeffRing, CoeffValue, Config, Dim, FreeElem, ModulePresentation, Poly, Torsion};

const A: CoeffRing = CoeffRing::DualNumbers { base: BaseField::Prime(3), m: 2 };

fn elem(ring: CoeffRing, n: usize, comps: &[&str]) -> FreeElem {
    FreeElem::new(comps.iter().map(|s| parse_poly(s, ring, n).unwrap()).collect()).unwrap()
}

#[test]
fn artinian_modules_pass() {
    let cfg = Config::default();
    let mut r = rng(5);
    let modules = artinian_modules(24, 17);
    assert!(modules.len() >= 20);
    for p in &modules {
        let mut sample: Vec<_> = (0..p.rank()).map(|i| p.generator(i)).collect();
        for _ in 0..3 {
            sample.push(random_elem(&mut r, A, p.nvars(), p.rank(), 2));
        }
        let rep = check_artinian(p, &sample, &cfg).unwrap();
        assert!(rep.profiles_agree(), "{p}");
        assert!(rep.dim_in_range(), "{p}");
        assert!(rep.s_torsion_free_holds(), "{p}");
    }
}

#[test]
fn nilpotent_multiple_of_a_free_generator_is_not_torsion() {
    // u·e1 dies in M/MN, yet no d regular modulo N kills it in M
    let free = ModulePresentation::free(A, 1, 1);
    let y = elem(A, 1, &["u"]);
    assert!(!is_zero_class(&free, &y, &Default::default()).unwrap());
    assert!(reduce_mod_n(&free).unwrap().relations().is_empty());
    for k in 0..=1 {
        assert!(!is_n_torsion(&free, &y, k, &Default::default()).unwrap());
    }
}

#[test]
fn nilpotent_relations_change_nothing_modulo_n() {
    // B/⟨u·x1⟩ has the same support as B
    let p = ModulePresentation::new(A, 1, 1, vec![elem(A, 1, &["u*x1"])]).unwrap();
    let prof = n_torsion_profile(&p, &Default::default()).unwrap();
    assert_eq!(prof.flags(), [Torsion::NonTorsion, Torsion::NonTorsion]);
    // while B/⟨x1 + u⟩ is torsion over B'_1
    let q = ModulePresentation::new(A, 1, 1, vec![elem(A, 1, &["x1 + u"])]).unwrap();
    let prof = n_torsion_profile(&q, &Default::default()).unwrap();
    assert_eq!(prof.flags(), [Torsion::NonTorsion, Torsion::Torsion]);
}

#[test]
fn product_rings_split_into_components() {
    let r = CoeffRing::ProductField { base: BaseField::Prime(5), r: 2 };
    let f = BaseField::Prime(5).as_ring();
    let e = CoeffValue::Tuple(vec![f.one(), f.zero()]);
    let rel = Poly::var(r, 1, 0).scale(&e);
    let p = ModulePresentation::new(r, 1, 1, vec![FreeElem::from_poly(rel)]).unwrap();
    let rep = check_artinian(&p, &[p.generator(0)], &Config::default()).unwrap();
    assert!(rep.passes());
    assert_eq!(rep.dim, Dim::Finite(1));
}
