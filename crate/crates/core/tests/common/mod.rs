#![allow(dead_code)]

use krull_core::catalog::random_poly;
use krull_core::{CoeffRing, Poly};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const Q: CoeffRing = CoeffRing::Rationals;
pub const F5: CoeffRing = CoeffRing::PrimeField(5);
pub const F7: CoeffRing = CoeffRing::PrimeField(7);

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn field() -> impl Strategy<Value = CoeffRing> {
    prop_oneof![Just(Q), Just(F5), Just(F7)]
}

/// Nonzero polynomial drawn from a seed.
pub fn poly(seed: u64, ring: CoeffRing, n: usize, deg: u32, terms: usize) -> Poly {
    random_poly(&mut rng(seed), ring, n, deg, terms)
}

/// Possibly zero: the difference of two draws sometimes cancels, and a
/// tenth of the time it is zero outright.
pub fn maybe_zero(seed: u64, ring: CoeffRing, n: usize, deg: u32) -> Poly {
    if seed.is_multiple_of(10) {
        return Poly::zero(ring, n);
    }
    poly(seed, ring, n, deg, 4)
}

/// Fixed seed so runs are reproducible and timings stable.
pub fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        rng_seed: proptest::test_runner::RngSeed::Fixed(0x6b72_756c_6c),
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}
