//! Formal baskets: the anti-canonical volume, the anti-plurigenus sequence
//! (by recursion and by the closed Riemann-Roch formula) and the geometric
//! inequalities a basket coming from a weak Q-Fano threefold must satisfy.

use serde::{Deserialize, Serialize};

use crate::basket::Basket;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Horizon used when checking constraints.
pub const DEFAULT_CHECK_HORIZON: u32 = 8;
/// Horizon used when verifying the plurigenus theorems.
pub const DEFAULT_THEOREM_HORIZON: u32 = 12;

/// A basket together with the prescribed `P_-1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FormalBasket {
    pub basket: Basket,
    pub p1: u64,
}

impl FormalBasket {
    pub fn new(basket: Basket, p1: u64) -> FormalBasket {
        FormalBasket { basket, p1 }
    }

    /// `-K^3 + sigma'`, always the integer `2 P_-1 + sigma - 6`.
    pub fn volume_plus_sigma_prime(&self) -> i64 {
        2 * self.p1 as i64 + self.basket.sigma() - 6
    }

    /// `-K^3 = 2 P_-1 + sigma - sigma' - 6`.
    pub fn volume(&self) -> Rational {
        Rational::from(self.volume_plus_sigma_prime()) - self.basket.sigma_prime()
    }

    /// `[P_-1, ..., P_-M]` from the difference recursion
    /// `P_-(m+1) - P_-m = (m+1)^2 (-K^3 + sigma') / 2 + 2 - (m+1) sigma / 2 - Delta^(m+1)`.
    ///
    /// Runs entirely in integers: `(m+1)^2 K - (m+1) sigma` is even because
    /// `K = -K^3 + sigma'` has the parity of `sigma`.
    pub fn plurigenera(&self, horizon: u32) -> Result<Vec<i64>> {
        if horizon < 2 {
            return Err(Error::Horizon(horizon));
        }
        let sigma = self.basket.sigma();
        let k = self.volume_plus_sigma_prime();
        let mut p = Vec::with_capacity(horizon as usize);
        p.push(self.p1 as i64);
        p.push(5 * self.p1 as i64 + sigma - 10);
        for m in 2..horizon as i64 {
            let n = m + 1;
            let twice = n * n * k - n * sigma;
            if twice % 2 != 0 {
                return Err(Error::Integrality {
                    m: n as u32,
                    value: format!("{twice}/2"),
                });
            }
            let step = twice / 2 + 2 - self.basket.delta(n as u32)?;
            p.push(p[m as usize - 1] + step);
        }
        Ok(p)
    }

    /// The same sequence from `P_-n = n(n+1)(2n+1)/12 (-K^3) + (2n + 1) - l(-n)`.
    pub fn plurigenera_closed(&self, horizon: u32) -> Result<Vec<i64>> {
        if horizon < 2 {
            return Err(Error::Horizon(horizon));
        }
        let vol = self.volume();
        (1..=horizon)
            .map(|n| {
                let ni = n as i64;
                let value = Rational::new(ni * (ni + 1) * (2 * ni + 1), 12) * &vol + Rational::from(2 * ni + 1)
                    - self.basket.ell(n)?;
                value.to_i64().ok_or(Error::Integrality {
                    m: n,
                    value: value.to_string(),
                })
            })
            .collect()
    }

    /// Evaluates all geometric constraints over `P_-1 .. P_-M`.
    pub fn check_constraints(&self, horizon: u32) -> Result<ConstraintFlags> {
        let p = self.plurigenera(horizon)?;
        Ok(ConstraintFlags::evaluate(&self.basket.gamma(), &self.volume(), &p))
    }

    /// `(-1 - P_-1 - P_-2 + P_-4) / 12`, a lower bound for `-K^3` on
    /// geometric formal baskets.
    pub fn volume_lower_bound(&self) -> Result<Rational> {
        let p = self.plurigenera(4)?;
        Ok(Rational::new(-1 - p[0] - p[1] + p[3], 12))
    }

    pub fn report(&self, horizon: u32) -> Result<InvariantReport> {
        let p = self.plurigenera(horizon)?;
        let gamma = self.basket.gamma();
        let volume = self.volume();
        let flags = ConstraintFlags::evaluate(&gamma, &volume, &p);
        Ok(InvariantReport {
            basket: self.basket.clone(),
            p1: self.p1,
            sigma: self.basket.sigma(),
            sigma_prime: self.basket.sigma_prime(),
            gamma,
            volume,
            p,
            flags,
        })
    }
}

/// Which geometric constraints hold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintFlags {
    /// `gamma(B) >= 0`.
    pub gamma_nonneg: bool,
    /// `-K^3 > 0`, i.e. `sigma' < 2 P_-1 + sigma - 6`.
    pub volume_positive: bool,
    /// `P_-(m+n) >= P_-m + P_-n - 1` whenever both are positive and `m + n <= M`.
    pub superadditive: bool,
    pub p_nonneg: bool,
    pub geometric: bool,
}

impl ConstraintFlags {
    pub fn evaluate(gamma: &Rational, volume: &Rational, p: &[i64]) -> ConstraintFlags {
        let gamma_nonneg = !gamma.is_negative();
        let volume_positive = volume.is_positive();
        let p_nonneg = p.iter().all(|&x| x >= 0);
        let superadditive = is_superadditive(p);
        ConstraintFlags {
            gamma_nonneg,
            volume_positive,
            superadditive,
            p_nonneg,
            geometric: gamma_nonneg && volume_positive && superadditive && p_nonneg,
        }
    }
}

/// `p[i]` is `P_-(i+1)`.
pub fn is_superadditive(p: &[i64]) -> bool {
    let horizon = p.len();
    for m in 1..horizon {
        if p[m - 1] <= 0 {
            continue;
        }
        for n in m..=horizon - m {
            if p[n - 1] > 0 && p[m + n - 1] < p[m - 1] + p[n - 1] - 1 {
                return false;
            }
        }
    }
    true
}

/// Everything computed for one formal basket.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub basket: Basket,
    pub p1: u64,
    pub sigma: i64,
    pub sigma_prime: Rational,
    pub gamma: Rational,
    pub volume: Rational,
    #[serde(rename = "P")]
    pub p: Vec<i64>,
    pub flags: ConstraintFlags,
}

impl InvariantReport {
    /// `P_-m`, 1-based.
    pub fn p_minus(&self, m: usize) -> Option<i64> {
        m.checked_sub(1).and_then(|i| self.p.get(i)).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fb(s: &str, p1: u64) -> FormalBasket {
        FormalBasket::new(s.parse().unwrap(), p1)
    }

    const NO1: &str = "2x(1,2),3x(2,5),(1,3),(1,4)";
    const EXTREMAL: &str = "(1,2),(2,5),(1,3),(2,11)";

    #[test]
    fn volume_examples() {
        assert_eq!(fb(NO1, 0).volume(), Rational::new(1, 60));
        assert_eq!(fb(EXTREMAL, 1).volume(), Rational::new(1, 330));
        assert_eq!(fb("(10,21),(1,4)", 0).volume(), Rational::new(-1, 84));
    }

    #[test]
    fn recursion_examples() {
        assert_eq!(fb(NO1, 0).plurigenera(8).unwrap(), vec![0, 0, 0, 0, 1, 1, 1, 2]);
        assert_eq!(fb(EXTREMAL, 1).plurigenera(4).unwrap(), vec![1, 1, 1, 1]);
        for p1 in 0..6u64 {
            let p = fb("{}", p1).plurigenera(3).unwrap();
            assert_eq!(p[1], 5 * p1 as i64 - 10);
            // Gorenstein case: P_-n = n(n+1)(2n+1)/12 (2 p1 - 6) + 2n + 1.
            let k = 2 * p1 as i64 - 6;
            assert_eq!(p[2], 3 * 4 * 7 * k / 12 + 7);
        }
        assert_eq!(fb(NO1, 0).plurigenera(1), Err(Error::Horizon(1)));
    }

    #[test]
    fn closed_formula_examples() {
        let closed = fb(EXTREMAL, 1).plurigenera_closed(2).unwrap();
        assert_eq!(closed[1], 1);
        assert_eq!(fb(NO1, 0).plurigenera_closed(8).unwrap()[7], 2);
        for p1 in 0..4 {
            assert_eq!(fb(NO1, p1).plurigenera_closed(2).unwrap()[0], p1 as i64);
        }
    }

    #[test]
    fn constraint_examples() {
        let f = fb(NO1, 0).check_constraints(8).unwrap();
        assert!(f.gamma_nonneg && f.volume_positive && f.superadditive && f.p_nonneg && f.geometric);
        let f = fb("(10,21),(1,4)", 0).check_constraints(8).unwrap();
        assert!(!f.volume_positive && !f.geometric);
        let f = fb("2x(1,2),2x(1,3),2x(1,5)", 1).check_constraints(8).unwrap();
        assert!(!f.volume_positive);
    }

    #[test]
    fn superadditivity_cases() {
        assert!(is_superadditive(&[0, 0, 0, 0, 1, 1, 1, 2]));
        // P_-2 = 1 forces P_-4 >= 1; here P_-4 = 0.
        assert!(!is_superadditive(&[0, 1, 1, 0]));
        // m = n = 1: P_-2 >= 2 P_-1 - 1.
        assert!(!is_superadditive(&[2, 2]));
        assert!(is_superadditive(&[2, 3]));
    }

    #[test]
    fn lower_bound_examples() {
        assert_eq!(fb(NO1, 0).volume_lower_bound().unwrap(), Rational::new(-1, 12));
        let p = fb("{}", 3).plurigenera(4).unwrap();
        assert_eq!(p, vec![3, 5, 7, 9]);
        assert_eq!(
            fb("{}", 3).volume_lower_bound().unwrap(),
            Rational::new(-1 - p[0] - p[1] + p[3], 12)
        );
    }

    #[test]
    fn report_json_shape() {
        let r = fb(NO1, 0).report(8).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["volume"], "1/60");
        assert_eq!(v["sigma_prime"], "239/60");
        assert_eq!(v["gamma"], "11/60");
        assert_eq!(v["P"], serde_json::json!([0, 0, 0, 0, 1, 1, 1, 2]));
        assert_eq!(v["flags"]["geometric"], true);
        let back: InvariantReport = serde_json::from_value(v).unwrap();
        assert_eq!(back, r);
    }
}
