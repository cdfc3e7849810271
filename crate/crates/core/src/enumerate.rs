//! Exhaustive search over formal baskets satisfying the geometric constraints.
//!
//! Every pair costs `r - 1/r` of the budget `24` in `gamma(B) >= 0`, so a
//! depth-first walk over multisets of pair types stops as soon as the budget
//! is spent. Since `1/r <= r/4` for `r >= 2`, `gamma >= 0` forces
//! `sum r <= 24 + sum r / 4`, i.e. `sum r <= 32`; with the gamma constraint on
//! and `max_sum_r >= 32` the walk is complete.

use std::time::Instant;

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::basket::{Basket, Pair};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::riemann_roch::{is_superadditive, FormalBasket, InvariantReport, DEFAULT_CHECK_HORIZON};

/// Largest `sum r` allowed by `gamma >= 0`.
pub const GAMMA_SUM_R_BOUND: u64 = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintSet {
    pub gamma: bool,
    pub volume: bool,
    pub superadditive: bool,
    pub nonneg: bool,
}

impl Default for ConstraintSet {
    fn default() -> Self {
        ConstraintSet {
            gamma: true,
            volume: true,
            superadditive: true,
            nonneg: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub max_sum_r: u64,
    /// Inclusive; empty when `p1_min > p1_max`.
    pub p1_min: u64,
    pub p1_max: u64,
    /// Number of anti-plurigenera computed and checked.
    pub horizon: u32,
    pub constraints: ConstraintSet,
    pub fixed_p1: Option<u64>,
    pub fixed_p2: Option<i64>,
    /// Keep only hits with `-K^3 <= ceiling`.
    pub volume_ceiling: Option<Rational>,
    /// Worker threads; `1` runs on the calling thread, `0` uses all cores.
    pub threads: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_sum_r: GAMMA_SUM_R_BOUND,
            p1_min: 0,
            p1_max: 10,
            horizon: DEFAULT_CHECK_HORIZON,
            constraints: ConstraintSet::default(),
            fixed_p1: None,
            fixed_p2: None,
            volume_ceiling: None,
            threads: 1,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_sum_r < 2 {
            return Err(Error::Config(format!("max_sum_r = {} is below 2", self.max_sum_r)));
        }
        if self.horizon < 2 {
            return Err(Error::Config(format!("horizon = {} is below 2", self.horizon)));
        }
        Ok(())
    }

    /// Whether the hit set is the full set of config-satisfying formal
    /// baskets (within the `P_-1` range) rather than a truncation.
    pub fn is_exhaustive(&self) -> bool {
        self.constraints.gamma && self.max_sum_r >= GAMMA_SUM_R_BOUND
    }

    fn p1_candidates(&self, sigma: i64) -> impl Iterator<Item = u64> + '_ {
        (self.p1_min..=self.p1_max)
            .filter(move |&p1| self.fixed_p1.is_none_or(|f| f == p1))
            .filter(move |&p1| self.fixed_p2.is_none_or(|p2| 5 * p1 as i64 + sigma - 10 == p2))
    }

    /// Staged acceptance test, cheapest constraint first.
    fn accept(&self, basket: &Basket, gamma: &Rational, p1: u64) -> Result<Option<InvariantReport>> {
        let c = &self.constraints;
        let fb = FormalBasket::new(basket.clone(), p1);
        if c.gamma && gamma.is_negative() {
            return Ok(None);
        }
        let volume = fb.volume();
        if c.volume && !volume.is_positive() {
            return Ok(None);
        }
        if let Some(ceiling) = &self.volume_ceiling {
            if &volume > ceiling {
                return Ok(None);
            }
        }
        let p = fb.plurigenera(self.horizon)?;
        if c.nonneg && p.iter().any(|&x| x < 0) {
            return Ok(None);
        }
        if c.superadditive && !is_superadditive(&p) {
            return Ok(None);
        }
        fb.report(self.horizon).map(Some)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    /// Baskets visited.
    pub nodes: u64,
    /// Extensions cut by the gamma budget.
    pub pruned: u64,
    /// Formal baskets evaluated.
    pub evaluated: u64,
    pub hits: u64,
    /// Largest `P_-1` among hits; compare with `p1_max` to confirm headroom.
    pub max_p1_hit: Option<u64>,
    pub exhaustive: bool,
    pub elapsed_ms: u64,
}

impl SearchStats {
    fn merge(mut self, other: SearchStats) -> SearchStats {
        self.nodes += other.nodes;
        self.pruned += other.pruned;
        self.evaluated += other.evaluated;
        self.hits += other.hits;
        self.max_p1_hit = self.max_p1_hit.max(other.max_p1_hit);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationReport {
    pub config: SearchConfig,
    pub stats: SearchStats,
    /// Sorted by basket, then `P_-1`.
    pub hits: Vec<InvariantReport>,
}

impl EnumerationReport {
    pub fn formal_baskets(&self) -> impl Iterator<Item = FormalBasket> + '_ {
        self.hits.iter().map(|h| FormalBasket::new(h.basket.clone(), h.p1))
    }
}

/// All admissible pair types with `r <= max_r`, in `(r, b)` order.
pub fn pair_types(max_r: u64) -> Vec<Pair> {
    let mut out = Vec::new();
    for r in 2..=max_r {
        for b in 1..=r / 2 {
            if b.gcd(&r) == 1 {
                out.push(Pair::new(b, r).expect("reduced"));
            }
        }
    }
    out
}

struct Walker<'a> {
    config: &'a SearchConfig,
    types: &'a [Pair],
    stack: Vec<(Pair, u64)>,
    hits: Vec<InvariantReport>,
    stats: SearchStats,
}

impl Walker<'_> {
    fn visit(&mut self, gamma: &Rational) -> Result<()> {
        self.stats.nodes += 1;
        let basket = Basket::from_weighted(self.stack.iter().copied());
        for p1 in self.config.p1_candidates(basket.sigma()) {
            self.stats.evaluated += 1;
            if let Some(hit) = self.config.accept(&basket, gamma, p1)? {
                self.stats.hits += 1;
                self.stats.max_p1_hit = self.stats.max_p1_hit.max(Some(p1));
                self.hits.push(hit);
            }
        }
        Ok(())
    }

    /// Visits the current basket and every extension by types at index `>= from`.
    fn walk(&mut self, from: usize, sum_r: u64, gamma: Rational) -> Result<()> {
        self.visit(&gamma)?;
        for idx in from..self.types.len() {
            let t = self.types[idx];
            if sum_r + t.r() > self.config.max_sum_r {
                break;
            }
            let next_gamma = &gamma + &(Rational::new(1, t.r() as i64) - Rational::from(t.r() as i64));
            if self.config.constraints.gamma && next_gamma.is_negative() {
                // cost r - 1/r only grows with r
                self.stats.pruned += 1;
                break;
            }
            self.push(t);
            self.walk(idx, sum_r + t.r(), next_gamma)?;
            self.pop();
        }
        Ok(())
    }

    fn push(&mut self, t: Pair) {
        match self.stack.last_mut() {
            Some((p, m)) if *p == t => *m += 1,
            _ => self.stack.push((t, 1)),
        }
    }

    fn pop(&mut self) {
        let last = self.stack.last_mut().expect("pop after push");
        last.1 -= 1;
        if last.1 == 0 {
            self.stack.pop();
        }
    }
}

fn run_subtree(
    config: &SearchConfig,
    types: &[Pair],
    first: Option<usize>,
) -> Result<(Vec<InvariantReport>, SearchStats)> {
    let mut w = Walker {
        config,
        types,
        stack: Vec::new(),
        hits: Vec::new(),
        stats: SearchStats::default(),
    };
    let gamma = Rational::from(24);
    match first {
        // the empty basket alone
        None => w.visit(&gamma)?,
        Some(idx) => {
            let t = types[idx];
            let g = gamma + (Rational::new(1, t.r() as i64) - Rational::from(t.r() as i64));
            if t.r() > config.max_sum_r {
                return Ok((w.hits, w.stats));
            }
            if config.constraints.gamma && g.is_negative() {
                w.stats.pruned += 1;
                return Ok((w.hits, w.stats));
            }
            w.push(t);
            w.walk(idx, t.r(), g)?;
        }
    }
    Ok((w.hits, w.stats))
}

/// Pruned depth-first enumeration of all formal baskets accepted by `config`.
///
/// The walk is split on the first (smallest) pair type; subtrees are
/// independent, and the merged hits are sorted, so the result does not
/// depend on `threads`.
pub fn enumerate(config: &SearchConfig) -> Result<EnumerationReport> {
    config.validate()?;
    let start = Instant::now();
    let types = pair_types(config.max_sum_r);
    let roots: Vec<Option<usize>> = std::iter::once(None).chain((0..types.len()).map(Some)).collect();

    let parts: Vec<Result<(Vec<InvariantReport>, SearchStats)>> = if config.threads == 1 {
        roots.iter().map(|&r| run_subtree(config, &types, r)).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.threads)
            .build()
            .map_err(|e| Error::Config(e.to_string()))?;
        pool.install(|| roots.par_iter().map(|&r| run_subtree(config, &types, r)).collect())
    };

    let mut hits = Vec::new();
    let mut stats = SearchStats::default();
    for part in parts {
        let (h, s) = part?;
        hits.extend(h);
        stats = stats.merge(s);
    }
    hits.sort_by(|a, b| (&a.basket, a.p1).cmp(&(&b.basket, b.p1)));
    stats.exhaustive = config.is_exhaustive();
    stats.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(EnumerationReport {
        config: config.clone(),
        stats,
        hits,
    })
}

/// Generate-then-filter reference: every multiset with `sum r <= max_sum_r`,
/// no pruning, each formal basket judged by its full constraint report.
pub fn enumerate_naive(config: &SearchConfig) -> Result<Vec<InvariantReport>> {
    config.validate()?;
    let types = pair_types(config.max_sum_r);
    let mut baskets = Vec::new();
    let mut current: Vec<(Pair, u64)> = Vec::new();
    collect_all(&types, 0, config.max_sum_r, &mut current, &mut baskets);

    let c = &config.constraints;
    let mut hits = Vec::new();
    for basket in baskets {
        for p1 in config.p1_min..=config.p1_max {
            let fb = FormalBasket::new(basket.clone(), p1);
            let report = fb.report(config.horizon)?;
            let f = report.flags;
            let p2 = report.p[1];
            let ok = (!c.gamma || f.gamma_nonneg)
                && (!c.volume || f.volume_positive)
                && (!c.superadditive || f.superadditive)
                && (!c.nonneg || f.p_nonneg)
                && config.fixed_p1.is_none_or(|x| x == p1)
                && config.fixed_p2.is_none_or(|x| x == p2)
                && config.volume_ceiling.as_ref().is_none_or(|v| &report.volume <= v);
            if ok {
                hits.push(report);
            }
        }
    }
    hits.sort_by(|a, b| (&a.basket, a.p1).cmp(&(&b.basket, b.p1)));
    Ok(hits)
}

fn collect_all(types: &[Pair], from: usize, budget: u64, current: &mut Vec<(Pair, u64)>, out: &mut Vec<Basket>) {
    out.push(Basket::from_weighted(current.iter().copied()));
    for (idx, &t) in types.iter().enumerate().skip(from) {
        if t.r() > budget {
            continue;
        }
        current.push((t, 1));
        collect_all(types, idx, budget - t.r(), current, out);
        current.pop();
    }
}

/// The minimum `-K^3` over all hits and every formal basket attaining it.
pub fn min_volume(config: &SearchConfig) -> Result<(Rational, Vec<FormalBasket>)> {
    let report = enumerate(config)?;
    let min = report
        .hits
        .iter()
        .map(|h| &h.volume)
        .min()
        .ok_or(Error::NoHits)?
        .clone();
    let minimizers = report
        .hits
        .iter()
        .filter(|h| h.volume == min)
        .map(|h| FormalBasket::new(h.basket.clone(), h.p1))
        .collect();
    Ok((min, minimizers))
}

/// One verified statement about all hits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub witnesses: Vec<FormalBasket>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub hits: usize,
    pub horizon: u32,
    pub checks: Vec<TheoremCheck>,
}

impl TheoremReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// The basket with `P_-4 = 0` at `P_-1 = 0`.
pub const P4_ZERO_EXCEPTION: &str = "2x(1,2),3x(2,5),(1,3),(1,4)";

/// Checks over every hit: `P_-6 >= 1`, `P_-8 >= 2`, `P_-10, P_-12 >= 2`, and
/// `P_-4 = 0` only for [`P4_ZERO_EXCEPTION`] at `P_-1 = 0`.
pub fn verify_theorems(config: &SearchConfig) -> Result<TheoremReport> {
    if config.horizon < 12 {
        return Err(Error::Config(format!(
            "theorem checks need horizon >= 12, got {}",
            config.horizon
        )));
    }
    let report = enumerate(config)?;
    Ok(check_theorems(&report))
}

/// [`verify_theorems`] on an existing enumeration.
pub fn check_theorems(report: &EnumerationReport) -> TheoremReport {
    let hits = &report.hits;
    let fb = |h: &InvariantReport| FormalBasket::new(h.basket.clone(), h.p1);

    let min_check = |name: &str, ms: &[usize], floor: i64| -> TheoremCheck {
        let value = |h: &InvariantReport| {
            ms.iter()
                .map(|&m| h.p_minus(m).unwrap_or(i64::MIN))
                .min()
                .unwrap_or(i64::MIN)
        };
        let min = hits.iter().map(value).min();
        let witnesses: Vec<FormalBasket> = match min {
            Some(v) => hits.iter().filter(|h| value(h) == v).map(fb).collect(),
            None => Vec::new(),
        };
        let label = ms.iter().map(|m| format!("P_-{m}")).collect::<Vec<_>>().join(", ");
        TheoremCheck {
            name: name.to_string(),
            passed: min.is_none_or(|v| v >= floor),
            detail: match min {
                Some(v) => format!(
                    "min over hits of {label} = {v} (need >= {floor}); {} witnesses",
                    witnesses.len()
                ),
                None => "no hits".to_string(),
            },
            witnesses,
        }
    };

    let mut checks = vec![
        min_check("P_-6 >= 1", &[6], 1),
        min_check("P_-8 >= 2", &[8], 2),
        min_check("P_-10 >= 2 and P_-12 >= 2", &[10, 12], 2),
    ];

    let zero_p4: Vec<FormalBasket> = hits.iter().filter(|h| h.p_minus(4) == Some(0)).map(fb).collect();
    let expected = FormalBasket::new(P4_ZERO_EXCEPTION.parse().expect("constant basket"), 0);
    checks.push(TheoremCheck {
        name: "P_-4 >= 1 except one basket".to_string(),
        passed: zero_p4 == [expected.clone()],
        detail: format!(
            "{} hit(s) with P_-4 = 0; expected exactly ({}, P_-1 = 0)",
            zero_p4.len(),
            expected.basket
        ),
        witnesses: zero_p4,
    });

    TheoremReport {
        hits: hits.len(),
        horizon: report.config.horizon,
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_type_order() {
        let t = pair_types(7);
        let s: Vec<String> = t.iter().map(|p| p.to_string()).collect();
        assert_eq!(
            s,
            ["(1,2)", "(1,3)", "(1,4)", "(1,5)", "(2,5)", "(1,6)", "(1,7)", "(2,7)", "(3,7)"]
        );
    }

    #[test]
    fn empty_p1_range_gives_nothing() {
        let cfg = SearchConfig {
            p1_min: 3,
            p1_max: 2,
            ..SearchConfig::default()
        };
        let r = enumerate(&cfg).unwrap();
        assert!(r.hits.is_empty());
        assert_eq!(r.stats.evaluated, 0);
        assert_eq!(min_volume(&cfg), Err(Error::NoHits));
    }

    #[test]
    fn invalid_configs() {
        assert!(enumerate(&SearchConfig {
            max_sum_r: 1,
            ..SearchConfig::default()
        })
        .is_err());
        assert!(enumerate(&SearchConfig {
            horizon: 1,
            ..SearchConfig::default()
        })
        .is_err());
        assert!(verify_theorems(&SearchConfig::default()).is_err());
    }

    #[test]
    fn exhaustive_label() {
        assert!(SearchConfig::default().is_exhaustive());
        let mut cfg = SearchConfig::default();
        cfg.constraints.gamma = false;
        assert!(!cfg.is_exhaustive());
        assert!(!SearchConfig {
            max_sum_r: 20,
            ..SearchConfig::default()
        }
        .is_exhaustive());
    }

    #[test]
    fn volume_toggle_admits_zero_volume_basket() {
        let target: Basket = "12x(1,2)".parse().unwrap();
        let mut cfg = SearchConfig {
            fixed_p1: Some(0),
            fixed_p2: Some(2),
            ..SearchConfig::default()
        };
        let on = enumerate(&cfg).unwrap();
        assert!(on.hits.iter().all(|h| h.basket != target));
        cfg.constraints.volume = false;
        let off = enumerate(&cfg).unwrap();
        let hit = off.hits.iter().find(|h| h.basket == target).expect("12x(1,2) present");
        assert!(hit.volume.is_zero());
    }
}
