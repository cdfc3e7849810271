//! The canonical sequence `B^(0)(B) > B^(5)(B) > B^(6)(B) > ... > B`.
//!
//! `S^(0)` is `{1/k : k >= 2}`, `S^(5)` adds `2/5`, and for `n >= 6` the set
//! `S^(n)` adds every reduced `b/n <= 1/2`. Consecutive elements of each
//! `S^(n)` are Farey neighbours, and `B^(n)(B)` replaces every pair outside
//! `S^(n)` by the two neighbours bracketing it.

use std::collections::BTreeMap;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::basket::{Basket, Pair};
use crate::error::{Error, Result};

/// A reduced fraction `q/p` in `(0, 1/2]`, together with the level queried.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LevelFraction {
    pub q: u64,
    pub p: u64,
    pub level: u32,
}

impl LevelFraction {
    pub fn pair(&self) -> Pair {
        Pair::new(self.q, self.p).expect("level fractions are admissible pairs")
    }
}

/// Levels `1..=4` are not part of the sequence.
pub fn check_level(level: u32) -> Result<()> {
    if (1..5).contains(&level) {
        Err(Error::InvalidLevel(level))
    } else {
        Ok(())
    }
}

/// The defined levels `0, 5, 6, ..., cap`.
pub fn levels_up_to(cap: u32) -> Vec<u32> {
    std::iter::once(0).chain(5..=cap).collect()
}

/// Whether `q/p` lies in `S^(level)`.
pub fn membership(q: u64, p: u64, level: u32) -> Result<bool> {
    check_level(level)?;
    Pair::new(q, p)?;
    Ok(q == 1 || (level >= 5 && p <= level as u64))
}

/// The consecutive elements `lower < b/r < upper` of `S^(level)`.
pub fn neighbors(b: u64, r: u64, level: u32) -> Result<(LevelFraction, LevelFraction)> {
    if membership(b, r, level)? {
        return Err(Error::NotBracketed { q: b, p: r, level });
    }
    // b >= 2, so r/b is not an integer and 1/(k+1) < b/r < 1/k.
    let k = r / b;
    let mut lower = (1u64, k + 1);
    let mut upper = (1u64, k);
    let below = |x: (u64, u64), y: (u64, u64)| x.0 * y.1 < y.0 * x.1;
    for p in 5..=level as u64 {
        for q in 2..=p / 2 {
            if q.gcd(&p) != 1 {
                continue;
            }
            let f = (q, p);
            if below(lower, f) && below(f, (b, r)) {
                lower = f;
            } else if below((b, r), f) && below(f, upper) {
                upper = f;
            }
        }
    }
    if upper.0 * lower.1 != upper.1 * lower.0 + 1 {
        return Err(Error::Invariant(format!(
            "neighbours {}/{} < {}/{} of {b}/{r} are not unimodular",
            lower.0, lower.1, upper.0, upper.1
        )));
    }
    Ok((
        LevelFraction {
            q: lower.0,
            p: lower.1,
            level,
        },
        LevelFraction {
            q: upper.0,
            p: upper.1,
            level,
        },
    ))
}

/// `B^(level)(B)`.
pub fn unpack_level(basket: &Basket, level: u32) -> Result<Basket> {
    check_level(level)?;
    let mut out = Vec::with_capacity(basket.pairs().len() + 4);
    for &(pair, mult) in basket.pairs() {
        let (b, r) = (pair.b(), pair.r());
        if membership(b, r, level)? {
            out.push((pair, mult));
            continue;
        }
        let (lo, hi) = neighbors(b, r, level)?;
        // (r q_hi - b p_hi) copies of the lower neighbour, (b p_lo - r q_lo) of the upper.
        let n_lo = r * hi.q - b * hi.p;
        let n_hi = b * lo.p - r * lo.q;
        out.push((lo.pair(), n_lo * mult));
        out.push((hi.pair(), n_hi * mult));
    }
    Ok(Basket::from_weighted(out))
}

/// The canonical sequence of a basket together with the prime-packing counts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalChain {
    pub levels: BTreeMap<u32, Basket>,
    /// `eps[n]` prime packings between the previous defined level and `n`.
    pub eps: BTreeMap<u32, i64>,
    pub stabilized_at: u32,
}

impl CanonicalChain {
    pub fn level(&self, n: u32) -> Option<&Basket> {
        self.levels.get(&n)
    }

    pub fn eps(&self, n: u32) -> i64 {
        self.eps.get(&n).copied().unwrap_or(0)
    }

    /// `sigma_5`: pairs `(1, r)`, `r >= 5`, in `B^(0)`, with multiplicity.
    pub fn sigma5(&self) -> u64 {
        self.levels[&0]
            .pairs()
            .iter()
            .filter(|(p, _)| p.r() >= 5)
            .map(|&(_, m)| m)
            .sum()
    }
}

/// Default level cap: `max(5, max r)`.
pub fn default_cap(basket: &Basket) -> u32 {
    basket.max_r().max(5) as u32
}

/// Builds `B^(n)(B)` for `n = 0, 5, ..., cap` and checks the Delta identities
/// `Delta^j(B^(n)) = Delta^j(B)` for `j <= n` (for `j = 3, 4` at level 0) and
/// `eps_n = Delta^n(B^(n-1)) - Delta^n(B^(n)) = Delta^n(B^(n-1)) - Delta^n(B)`.
pub fn build_chain(basket: &Basket, cap: Option<u32>) -> Result<CanonicalChain> {
    let cap = cap.unwrap_or_else(|| default_cap(basket)).max(5);
    let mut levels = BTreeMap::new();
    let mut eps = BTreeMap::new();
    let mut prev: Option<Basket> = None;
    for n in levels_up_to(cap) {
        let cur = unpack_level(basket, n)?;
        let checked: Vec<u32> = if n == 0 { vec![3, 4] } else { (2..=n).collect() };
        for j in checked {
            if cur.delta(j)? != basket.delta(j)? {
                return Err(Error::Invariant(format!("Delta^{j} differs between B^({n}) and B")));
            }
        }
        if let Some(prev) = prev {
            let before = prev.delta(n)?;
            let e = before - cur.delta(n)?;
            if e != before - basket.delta(n)? || e < 0 {
                return Err(Error::Invariant(format!("eps_{n} = {e} is inconsistent")));
            }
            eps.insert(n, e);
        }
        levels.insert(n, cur.clone());
        prev = Some(cur);
    }
    if levels[&cap] != *basket {
        return Err(Error::ChainNotStabilized { cap });
    }
    let stabilized_at = levels
        .iter()
        .find(|(_, b)| *b == basket)
        .map(|(&n, _)| n)
        .expect("last level equals the basket");
    Ok(CanonicalChain {
        levels,
        eps,
        stabilized_at,
    })
}
