#![allow(dead_code)]

use fano_baskets::enumerate::pair_types;
use fano_baskets::{Basket, Pair};
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn bk(s: &str) -> Basket {
    s.parse().unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random basket with `sum r <= max_sum_r`, biased towards small `r`.
pub fn random_basket(rng: &mut ChaCha8Rng, max_sum_r: u64) -> Basket {
    let types = pair_types(max_sum_r);
    let target = rng.gen_range(0..=max_sum_r);
    let mut items = Vec::new();
    let mut sum = 0;
    while sum < target {
        let hi = if rng.gen_bool(0.7) {
            types.len().min(8)
        } else {
            types.len()
        };
        let t: Pair = types[rng.gen_range(0..hi)];
        if sum + t.r() > max_sum_r {
            break;
        }
        sum += t.r();
        items.push((t, 1));
    }
    Basket::from_weighted(items)
}

pub fn arb_pair(max_r: u64) -> impl Strategy<Value = Pair> {
    let types = pair_types(max_r);
    (0..types.len()).prop_map(move |i| types[i])
}

pub fn arb_basket(max_r: u64, max_len: usize) -> impl Strategy<Value = Basket> {
    prop::collection::vec(arb_pair(max_r), 0..=max_len)
        .prop_map(|v| Basket::from_weighted(v.into_iter().map(|p| (p, 1))))
}
