#![allow(dead_code)]

use monolef::monomial::{binomial, monomials_of_degree};
use monolef::scan::sample_ideal;
use monolef::{Monomial, MonomialIdeal};
use proptest::prelude::*;

/// Seeded artinian ideal with `n ≤ max_n`, `2 ≤ d ≤ max_d` and a generator
/// count anywhere from the pure powers up to all of `S_d`.
pub fn artinian(max_n: usize, max_d: u32) -> impl Strategy<Value = MonomialIdeal> {
    (1..=max_n, 2..=max_d, any::<u64>(), any::<u64>()).prop_map(|(n, d, pick, seed)| {
        let total = binomial((n as u32 + d - 1) as i64, d as i64) as usize;
        let count = n + (pick as usize) % (total - n + 1);
        sample_ideal(n, d, count, seed).unwrap()
    })
}

/// Any nonempty subset of `S_d`, artinian or not.
pub fn any_ideal(max_n: usize, max_d: u32) -> impl Strategy<Value = MonomialIdeal> {
    (1..=max_n, 1..=max_d)
        .prop_flat_map(|(n, d)| {
            let all = monomials_of_degree(n, d, None);
            let k = all.len();
            (Just((n, d, all)), proptest::collection::vec(any::<bool>(), k))
        })
        .prop_filter_map("empty generator set", |((n, d, all), keep)| {
            let gens: Vec<Monomial> = all.into_iter().zip(keep).filter(|(_, k)| *k).map(|(m, _)| m).collect();
            (!gens.is_empty()).then(|| MonomialIdeal::new(n, d, gens).unwrap())
        })
}
