//! Inverting anti-plurigenera into canonical-sequence data.
//!
//! Given `P_-1 .. P_-8` and the free tail `n_{1,r}` (`r >= 5`) of `B^(0)`,
//! these linear forms recover `sigma`, `Delta^m`, the multiplicities of
//! `B^(0)` and `B^(5)`, and the prime-packing counts `eps_5 .. eps_8`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::basket::{Basket, Pair};
use crate::error::{Error, Result};

/// Anti-plurigenera `P_-m` (1-based, possibly partial) plus the tail of `B^(0)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PluriData {
    pub p: BTreeMap<u32, i64>,
    /// `r -> n_{1,r}` for `r >= 5`.
    pub tail: BTreeMap<u64, i64>,
}

impl PluriData {
    /// `values[i]` is `P_-(i+1)`.
    pub fn new(values: &[i64], tail: &[(u64, i64)]) -> PluriData {
        PluriData {
            p: values.iter().enumerate().map(|(i, &v)| (i as u32 + 1, v)).collect(),
            tail: tail.iter().copied().filter(|&(_, k)| k != 0).collect(),
        }
    }

    pub fn get(&self, m: u32) -> Result<i64> {
        self.p.get(&m).copied().ok_or(Error::MissingPlurigenus(m))
    }

    fn tail_at(&self, r: u64) -> i64 {
        self.tail.get(&r).copied().unwrap_or(0)
    }

    /// `sigma_5 = sum_{r >= 5} n_{1,r}`.
    pub fn sigma5(&self) -> i64 {
        self.tail.values().sum()
    }

    /// `epsilon = 2 sigma_5 - n_{1,5}`.
    pub fn epsilon(&self) -> i64 {
        2 * self.sigma5() - self.tail_at(5)
    }
}

/// `sigma = 10 - 5 P_-1 + P_-2`.
pub fn sigma_from_p(p1: i64, p2: i64) -> i64 {
    10 - 5 * p1 + p2
}

/// `Delta^m = (2 - 5m + 2m^2) + m(5 - 3m)/2 P_-1 + m(m-1)/2 P_-2 + P_-(m-1) - P_-m`.
pub fn delta_from_p(data: &PluriData, m: u32) -> Result<i64> {
    if m < 2 {
        return Err(Error::DeltaOrder(m));
    }
    let k = m as i64;
    let (p1, p2) = (data.get(1)?, data.get(2)?);
    let (prev, cur) = (data.get(m - 1)?, data.get(m)?);
    Ok((2 - 5 * k + 2 * k * k) + k * (5 - 3 * k) / 2 * p1 + k * (k - 1) / 2 * p2 + prev - cur)
}

/// A solved multiplicity; negative values mark infeasible data.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Multiplicity {
    pub b: u64,
    pub r: u64,
    pub mult: i64,
}

/// The level data recovered from anti-plurigenera.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolvedLevels {
    pub sigma: i64,
    pub sigma5: i64,
    pub epsilon: i64,
    pub n0: Vec<Multiplicity>,
    pub n5: Option<Vec<Multiplicity>>,
    pub eps5: Option<i64>,
    pub eps6: Option<i64>,
    /// The `P_-6` forced by `eps_6 = 0`.
    pub implied_p6: Option<i64>,
    pub eps7: Option<i64>,
    pub eps8: Option<i64>,
    pub feasible: bool,
    pub violations: Vec<String>,
}

impl SolvedLevels {
    fn to_basket(entries: &[Multiplicity]) -> Option<Basket> {
        let mut items = Vec::with_capacity(entries.len());
        for e in entries {
            if e.mult < 0 {
                return None;
            }
            items.push((Pair::new(e.b, e.r).ok()?, e.mult as u64));
        }
        Some(Basket::from_weighted(items))
    }

    /// `B^(0)` when every multiplicity is non-negative.
    pub fn basket_b0(&self) -> Option<Basket> {
        SolvedLevels::to_basket(&self.n0)
    }

    pub fn basket_b5(&self) -> Option<Basket> {
        self.n5.as_deref().and_then(SolvedLevels::to_basket)
    }

    fn flag(&mut self, name: String, value: i64) {
        if value < 0 {
            self.violations.push(format!("{name} = {value}"));
            self.feasible = false;
        }
    }
}

fn tail_entries(data: &PluriData) -> Vec<Multiplicity> {
    data.tail
        .iter()
        .map(|(&r, &k)| Multiplicity { b: 1, r, mult: k })
        .collect()
}

/// `B^(0) = {n_{1,2} x (1,2), n_{1,3} x (1,3), n_{1,4} x (1,4)} + tail`. Needs `P_-1 .. P_-4`.
pub fn solve_b0(data: &PluriData) -> Result<SolvedLevels> {
    let (p1, p2, p3, p4) = (data.get(1)?, data.get(2)?, data.get(3)?, data.get(4)?);
    let s5 = data.sigma5();
    let n12 = 5 - 6 * p1 + 4 * p2 - p3;
    let n13 = 4 - 2 * p1 - 2 * p2 + 3 * p3 - p4;
    let n14 = 1 + 3 * p1 - p2 - 2 * p3 + p4 - s5;
    let mut n0 = vec![
        Multiplicity { b: 1, r: 2, mult: n12 },
        Multiplicity { b: 1, r: 3, mult: n13 },
        Multiplicity { b: 1, r: 4, mult: n14 },
    ];
    n0.extend(tail_entries(data));
    let mut out = SolvedLevels {
        sigma: sigma_from_p(p1, p2),
        sigma5: s5,
        epsilon: data.epsilon(),
        n0,
        n5: None,
        eps5: None,
        eps6: None,
        implied_p6: None,
        eps7: None,
        eps8: None,
        feasible: true,
        violations: Vec::new(),
    };
    for (name, v) in [("n0(1,2)", n12), ("n0(1,3)", n13), ("n0(1,4)", n14)] {
        out.flag(name.to_string(), v);
    }
    for (&r, &k) in &data.tail {
        if r < 5 {
            out.violations.push(format!("tail entry r = {r} is below 5"));
            out.feasible = false;
        }
        out.flag(format!("n0(1,{r})"), k);
    }
    Ok(out)
}

/// Adds `B^(5)`, `eps_5 .. eps_8` and the `eps_6 = 0` consistency check to
/// [`solve_b0`]. Needs `P_-1 .. P_-5`; `eps_6`, `eps_7`, `eps_8` are filled
/// in when the plurigenera they use are present.
pub fn solve_b5_and_eps(data: &PluriData) -> Result<SolvedLevels> {
    let mut out = solve_b0(data)?;
    let (p1, p2, p3, p4, p5) = (data.get(1)?, data.get(2)?, data.get(3)?, data.get(4)?, data.get(5)?);
    let s5 = data.sigma5();
    let eps = data.epsilon();
    let (n15, n16, n17) = (data.tail_at(5), data.tail_at(6), data.tail_at(7));

    let eps5 = 2 + p2 - 2 * p4 + p5 - s5;
    let mut n5 = vec![
        Multiplicity {
            b: 1,
            r: 2,
            mult: 3 - 6 * p1 + 3 * p2 - p3 + 2 * p4 - p5 + s5,
        },
        Multiplicity {
            b: 1,
            r: 3,
            mult: 2 - 2 * p1 - 3 * p2 + 3 * p3 + p4 - p5 + s5,
        },
        Multiplicity {
            b: 1,
            r: 4,
            mult: 1 + 3 * p1 - p2 - 2 * p3 + p4 - s5,
        },
        Multiplicity { b: 2, r: 5, mult: eps5 },
    ];
    n5.extend(tail_entries(data));
    n5.sort_by_key(|m| (m.r, m.b));
    for m in &n5 {
        if m.r <= 5 {
            out.flag(format!("n5({},{})", m.b, m.r), m.mult);
        }
    }
    out.n5 = Some(n5);
    out.eps5 = Some(eps5);
    out.flag("eps5".into(), eps5);
    out.flag("epsilon".into(), eps);

    // eps_6 = 3P1 + P2 - P3 - P4 - P5 + P6 - epsilon must vanish.
    let implied = eps - 3 * p1 - p2 + p3 + p4 + p5;
    out.implied_p6 = Some(implied);
    if let Ok(p6) = data.get(6) {
        let eps6 = 3 * p1 + p2 - p3 - p4 - p5 + p6 - eps;
        out.eps6 = Some(eps6);
        if eps6 != 0 {
            out.violations.push(format!("eps6 = {eps6} (must be 0)"));
            out.feasible = false;
        }
        if let Ok(p7) = data.get(7) {
            let eps7 = 1 + p1 + p2 - p5 - p6 + p7 - 2 * s5 + 2 * n15 + n16;
            out.eps7 = Some(eps7);
            out.flag("eps7".into(), eps7);
        }
    }
    if let (Ok(p7), Ok(p8)) = (data.get(7), data.get(8)) {
        let eps8 = 2 * p1 + p2 + p3 - p4 - p5 - p7 + p8 - 3 * s5 + 3 * n15 + 2 * n16 + n17;
        out.eps8 = Some(eps8);
        out.flag("eps8".into(), eps8);
    }
    Ok(out)
}
