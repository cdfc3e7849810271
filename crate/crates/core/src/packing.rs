//! Packings `(b1, r1), (b2, r2) -> (b1 + b2, r1 + r2)` and the domination
//! order they generate.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use crate::basket::{Basket, Pair};
use crate::error::{Error, Result};

/// Largest `sum r` accepted by domination searches.
pub const DOMINATION_CAP: u64 = 64;

/// Which one-step packings generate the order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum PackingMode {
    /// `b1 r2 - b2 r1 = 1`.
    Prime,
    /// Any merge of two distinct pairs whose sum `(b1 + b2, r1 + r2)` is coprime.
    General,
}

/// One packing of two distinct pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PackingStep {
    /// Source pairs, larger ratio `b/r` first.
    pub merged: (Pair, Pair),
    /// The merged pair after reduction, with the multiplicity it contributes.
    pub result: (Pair, u64),
    pub prime: bool,
}

impl PackingStep {
    pub fn new(x: Pair, y: Pair) -> PackingStep {
        let (hi, lo) = if x.b() * y.r() >= y.b() * x.r() { (x, y) } else { (y, x) };
        let (p, d) =
            Pair::normalize(hi.b() + lo.b(), hi.r() + lo.r()).expect("sum of two admissible pairs is admissible");
        let prime = hi.b() * lo.r() == lo.b() * hi.r() + 1;
        PackingStep {
            merged: (hi, lo),
            result: (p, d),
            prime,
        }
    }

    /// `b1 + b2` coprime to `r1 + r2`.
    pub fn is_coprime(&self) -> bool {
        self.result.1 == 1
    }

    pub fn allowed(&self, mode: PackingMode) -> bool {
        match mode {
            PackingMode::Prime => self.prime,
            PackingMode::General => self.is_coprime() && self.merged.0 != self.merged.1,
        }
    }

    fn apply(&self, basket: &Basket) -> Basket {
        let mut items: Vec<(Pair, u64)> = basket.pairs().to_vec();
        for src in [self.merged.0, self.merged.1] {
            let slot = items
                .iter_mut()
                .find(|(p, m)| *p == src && *m > 0)
                .expect("source pair present");
            slot.1 -= 1;
        }
        items.push(self.result);
        Basket::from_weighted(items)
    }
}

/// Merges the pairs in slots `i` and `j` of the multiplicity-expanded basket.
///
/// A non-coprime sum `(db, dr)` is recorded as `d x (b, r)`, so merging two
/// copies of the same pair gives the basket back unchanged.
pub fn pack_once(basket: &Basket, i: usize, j: usize) -> Result<Basket> {
    let len = basket.count() as usize;
    for idx in [i, j] {
        if idx >= len {
            return Err(Error::SelectorOutOfRange { index: idx, len });
        }
    }
    if i == j {
        return Err(Error::SameSlot(i));
    }
    let slots: Vec<Pair> = basket.slots().collect();
    Ok(PackingStep::new(slots[i], slots[j]).apply(basket))
}

/// All non-trivial one-step packings allowed in `mode`, with their results.
pub fn steps(basket: &Basket, mode: PackingMode) -> Vec<(PackingStep, Basket)> {
    let pairs = basket.pairs();
    let mut out = Vec::new();
    for (i, &(x, _)) in pairs.iter().enumerate() {
        for &(y, _) in &pairs[i + 1..] {
            let step = PackingStep::new(x, y);
            if step.allowed(mode) {
                out.push((step, step.apply(basket)));
            }
        }
    }
    out
}

/// Distinct baskets one packing below `basket`, in canonical order.
pub fn successors(basket: &Basket, mode: PackingMode) -> BTreeSet<Basket> {
    steps(basket, mode).into_iter().map(|(_, b)| b).collect()
}

fn check_cap(basket: &Basket) -> Result<()> {
    let sum_r = basket.sum_r();
    if sum_r > DOMINATION_CAP {
        return Err(Error::SizeBound {
            sum_r,
            cap: DOMINATION_CAP,
        });
    }
    Ok(())
}

/// Every `B'` with `basket >= B'` (including `basket` itself), in canonical order.
pub fn dominated_set(basket: &Basket, mode: PackingMode) -> Result<Vec<Basket>> {
    check_cap(basket)?;
    let mut seen: HashSet<Basket> = HashSet::new();
    let mut stack = vec![basket.clone()];
    seen.insert(basket.clone());
    while let Some(b) = stack.pop() {
        for next in successors(&b, mode) {
            if seen.insert(next.clone()) {
                stack.push(next);
            }
        }
    }
    let mut out: Vec<Basket> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// Members of the dominated set that admit no further packing.
pub fn minimal_elements(basket: &Basket, mode: PackingMode) -> Result<Vec<Basket>> {
    Ok(dominated_set(basket, mode)?
        .into_iter()
        .filter(|b| steps(b, mode).is_empty())
        .collect())
}

/// A chain `from = B_0 > B_1 > ... > B_k = to` of one-step packings, if any.
pub fn find_path(from: &Basket, to: &Basket, mode: PackingMode) -> Result<Option<Vec<Basket>>> {
    check_cap(from)?;
    if from.sigma() != to.sigma() || from.sum_r() != to.sum_r() {
        return Ok(None);
    }
    let mut dead: HashSet<Basket> = HashSet::new();
    let mut path = vec![from.clone()];
    Ok(search_path(to, mode, &mut path, &mut dead).then_some(path))
}

fn search_path(target: &Basket, mode: PackingMode, path: &mut Vec<Basket>, dead: &mut HashSet<Basket>) -> bool {
    let cur = path.last().expect("non-empty path").clone();
    if &cur == target {
        return true;
    }
    if cur.count() <= target.count() {
        return false;
    }
    for next in successors(&cur, mode) {
        if dead.contains(&next) {
            continue;
        }
        path.push(next);
        if search_path(target, mode, path, dead) {
            return true;
        }
        let failed = path.pop().expect("pushed above");
        dead.insert(failed);
    }
    false
}
