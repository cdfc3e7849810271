//! Pairs `(b, r)` standing for virtual quotient singularities of type
//! `1/r (1, -1, b)`, baskets of them, and their elementary invariants.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// A reduced pair with `0 < b <= r/2` and `gcd(b, r) = 1`.
///
/// Ordered by `(r, b)`, which is the canonical order of pairs in a basket.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Pair {
    b: u64,
    r: u64,
}

impl Pair {
    /// Validates an already reduced pair.
    pub fn new(b: u64, r: u64) -> Result<Pair> {
        if r < 2 || b == 0 || 2 * b > r || b.gcd(&r) != 1 {
            return Err(Error::PairOutOfRange { b, r });
        }
        Ok(Pair { b, r })
    }

    /// Reduces `(db, dr)` to `(b, r)` and returns the factor `d`, so that the
    /// pair counts as `d x (b, r)`.
    pub fn normalize(b: u64, r: u64) -> Result<(Pair, u64)> {
        if b == 0 || r == 0 {
            return Err(Error::PairOutOfRange { b, r });
        }
        let d = b.gcd(&r);
        Ok((Pair::new(b / d, r / d)?, d))
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    /// `Delta^n` of the single pair in the floor form.
    fn delta(&self, n: u64) -> i128 {
        let (b, r, n) = (self.b as i128, self.r as i128, n as i128);
        let l = n * b / r;
        l * b * n - (l * l + l) / 2 * r
    }

    fn residue_term(&self, k: u64) -> Rational {
        let r = self.r as i128;
        let x = ((self.b as i128) * (k as i128)).rem_euclid(r);
        Rational::new(i64::try_from(x * (r - x)).expect("overflow"), (2 * r) as i64)
    }
}

impl PartialOrd for Pair {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Pair {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.r, self.b).cmp(&(other.r, other.b))
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.b, self.r)
    }
}

/// A finite multiset of pairs in canonical form: sorted by `(r, b)` with
/// equal pairs merged into a multiplicity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Basket {
    pairs: Vec<(Pair, u64)>,
}

impl Basket {
    pub fn empty() -> Basket {
        Basket { pairs: Vec::new() }
    }

    /// Builds a canonical basket from weighted pairs, merging duplicates and
    /// dropping zero multiplicities.
    pub fn from_weighted<I: IntoIterator<Item = (Pair, u64)>>(items: I) -> Basket {
        let mut pairs: Vec<(Pair, u64)> = items.into_iter().filter(|&(_, m)| m > 0).collect();
        pairs.sort_by_key(|&(p, _)| p);
        let mut merged: Vec<(Pair, u64)> = Vec::with_capacity(pairs.len());
        for (p, m) in pairs {
            match merged.last_mut() {
                Some((q, k)) if *q == p => *k += m,
                _ => merged.push((p, m)),
            }
        }
        Basket { pairs: merged }
    }

    /// Builds a basket from raw `(b, r)` entries, normalizing non-coprime ones.
    pub fn from_raw(items: &[(u64, u64)]) -> Result<Basket> {
        let mut out = Vec::with_capacity(items.len());
        for &(b, r) in items {
            let (p, d) = Pair::normalize(b, r)?;
            out.push((p, d));
        }
        Ok(Basket::from_weighted(out))
    }

    pub fn pairs(&self) -> &[(Pair, u64)] {
        &self.pairs
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Number of pairs counted with multiplicity.
    pub fn count(&self) -> u64 {
        self.pairs.iter().map(|&(_, m)| m).sum()
    }

    pub fn multiplicity(&self, p: Pair) -> u64 {
        self.pairs
            .binary_search_by_key(&p, |&(q, _)| q)
            .map(|i| self.pairs[i].1)
            .unwrap_or(0)
    }

    /// Pairs expanded by multiplicity, in canonical order.
    pub fn slots(&self) -> impl Iterator<Item = Pair> + '_ {
        self.pairs.iter().flat_map(|&(p, m)| std::iter::repeat_n(p, m as usize))
    }

    pub fn sum_r(&self) -> u64 {
        self.pairs.iter().map(|&(p, m)| p.r * m).sum()
    }

    pub fn max_r(&self) -> u64 {
        self.pairs.iter().map(|&(p, _)| p.r).max().unwrap_or(0)
    }

    /// Multiset union.
    pub fn union(&self, other: &Basket) -> Basket {
        Basket::from_weighted(self.pairs.iter().chain(other.pairs.iter()).copied())
    }

    /// `sigma = sum of b`.
    pub fn sigma(&self) -> i64 {
        self.pairs.iter().map(|&(p, m)| (p.b * m) as i64).sum()
    }

    /// `sigma' = sum of b^2 / r`.
    pub fn sigma_prime(&self) -> Rational {
        self.pairs
            .iter()
            .map(|&(p, m)| Rational::new((p.b * p.b * m) as i64, p.r as i64))
            .sum()
    }

    /// `gamma = sum 1/r - sum r + 24`; non-negative for geometric baskets.
    pub fn gamma(&self) -> Rational {
        let inv: Rational = self
            .pairs
            .iter()
            .map(|&(p, m)| Rational::new(m as i64, p.r as i64))
            .sum();
        inv - Rational::from(self.sum_r() as i64) + Rational::from(24)
    }

    /// `Delta^n` via `l = floor(nb/r)`, `Delta = l b n - (l^2 + l) r / 2`.
    pub fn delta(&self, n: u32) -> Result<i64> {
        if n < 2 {
            return Err(Error::DeltaOrder(n));
        }
        let total: i128 = self.pairs.iter().map(|&(p, m)| p.delta(n as u64) * m as i128).sum();
        debug_assert!(total >= 0);
        Ok(i64::try_from(total).expect("Delta overflow"))
    }

    /// `Delta^n` via residues mod r. Kept separate from [`Basket::delta`] so
    /// the two can be compared.
    pub fn delta_residue(&self, n: u32) -> Result<Rational> {
        if n < 2 {
            return Err(Error::DeltaOrder(n));
        }
        Ok(self
            .pairs
            .iter()
            .map(|&(p, m)| {
                let bn = (p.b * n as u64) as i64;
                let r = p.r as i64;
                let plain = Rational::new(bn * (r - bn), 2 * r);
                (p.residue_term(n as u64) - plain) * Rational::from(m as i64)
            })
            .sum())
    }

    /// `l(-n) = l(n+1) = sum_i sum_{j=1..n} jb(r - jb) / 2r` with `jb`
    /// reduced mod r.
    pub fn ell(&self, n: u32) -> Result<Rational> {
        if n < 1 {
            return Err(Error::EllOrder(n));
        }
        Ok(self
            .pairs
            .iter()
            .map(|&(p, m)| {
                let s: Rational = (1..=n as u64).map(|j| p.residue_term(j)).sum();
                s * Rational::from(m as i64)
            })
            .sum())
    }
}

impl fmt::Display for Basket {
    /// `2x(1,2),(1,3)`; the empty basket renders as `{}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pairs.is_empty() {
            return f.write_str("{}");
        }
        for (i, (p, m)) in self.pairs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            if *m > 1 {
                write!(f, "{m}x")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for Basket {
    type Err = Error;

    fn from_str(s: &str) -> Result<Basket> {
        parse_basket(s)
    }
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn token(&self) -> String {
        let rest = &self.src[self.pos..];
        if rest.is_empty() {
            "<end of input>".to_string()
        } else {
            rest.chars().take(12).collect()
        }
    }

    fn fail<T>(&self, reason: &str) -> Result<T> {
        Err(Error::Parse {
            token: self.token(),
            reason: reason.to_string(),
        })
    }

    fn number(&mut self) -> Result<Option<u64>> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Ok(None);
        }
        match self.src[start..self.pos].parse() {
            Ok(n) => Ok(Some(n)),
            Err(_) => {
                self.pos = start;
                self.fail("integer out of range")
            }
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.fail(&format!("expected `{c}`"))
        }
    }

    fn item(&mut self) -> Result<(Pair, u64)> {
        self.skip_ws();
        let item_start = self.pos;
        let mult = match self.number()? {
            Some(k) => {
                if !(self.eat('x') || self.eat('X') || self.eat('×')) {
                    return self.fail("expected `x` after multiplicity");
                }
                if k == 0 {
                    self.pos = item_start;
                    return self.fail("multiplicity must be positive");
                }
                k
            }
            None => 1,
        };
        self.expect('(')?;
        let b = match self.number()? {
            Some(b) => b,
            None => return self.fail("expected integer b"),
        };
        self.expect(',')?;
        let r = match self.number()? {
            Some(r) => r,
            None => return self.fail("expected integer r"),
        };
        self.expect(')')?;
        let bad = |reason: &str| Error::Parse {
            token: self.src[item_start..self.pos].trim().to_string(),
            reason: reason.to_string(),
        };
        if r < 2 {
            return Err(bad("r must be at least 2"));
        }
        if b == 0 {
            return Err(bad("b must be positive"));
        }
        if 2 * b > r {
            return Err(bad("b/r exceeds 1/2"));
        }
        let (p, d) = Pair::normalize(b, r).map_err(|_| bad("invalid pair"))?;
        Ok((p, d * mult))
    }
}

/// Parses `item ("," item)*` with `item := [k "x"] "(" b "," r ")"`.
///
/// Whitespace is ignored, the whole list may be wrapped in braces, and `{}`
/// or an empty string is the empty basket. `(db, dr)` counts as `d x (b, r)`.
pub fn parse_basket(text: &str) -> Result<Basket> {
    let mut c = Cursor { src: text, pos: 0 };
    let braced = c.eat('{');
    let mut items = Vec::new();
    c.skip_ws();
    let at_end = |c: &mut Cursor| {
        c.skip_ws();
        c.peek().is_none() || (braced && c.peek() == Some('}'))
    };
    if !at_end(&mut c) {
        loop {
            items.push(c.item()?);
            if !c.eat(',') {
                break;
            }
        }
    }
    if braced {
        c.expect('}')?;
    }
    c.skip_ws();
    if c.peek().is_some() {
        return c.fail("unexpected trailing input");
    }
    Ok(Basket::from_weighted(items))
}

#[derive(Serialize, Deserialize)]
struct PairJson {
    b: u64,
    r: u64,
    mult: u64,
}

#[derive(Serialize, Deserialize)]
struct BasketJson {
    pairs: Vec<PairJson>,
}

impl Serialize for Basket {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BasketJson {
            pairs: self
                .pairs
                .iter()
                .map(|&(p, m)| PairJson {
                    b: p.b,
                    r: p.r,
                    mult: m,
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Basket {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = BasketJson::deserialize(d)?;
        let mut items = Vec::with_capacity(raw.pairs.len());
        for pj in raw.pairs {
            let p = Pair::new(pj.b, pj.r).map_err(serde::de::Error::custom)?;
            items.push((p, pj.mult));
        }
        Ok(Basket::from_weighted(items))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bk(s: &str) -> Basket {
        s.parse().unwrap()
    }

    #[test]
    fn parse_merges_and_sorts() {
        let b = bk("2x(1,2),3x(2,5),(1,3),(1,4)");
        assert_eq!(b.to_string(), "2x(1,2),(1,3),(1,4),3x(2,5)");
        assert_eq!(b.count(), 7);
        assert_eq!(bk(" 2 x ( 1 , 2 ) , (1,2)"), bk("3x(1,2)"));
        assert_eq!(bk("{2 × (1,2), (2,5)}"), bk("2x(1,2),(2,5)"));
        assert_eq!(bk(""), Basket::empty());
        assert_eq!(bk("{}"), Basket::empty());
    }

    #[test]
    fn parse_normalizes_non_coprime() {
        assert_eq!(bk("(2,4)"), bk("2x(1,2)"));
        assert_eq!(bk("3x(4,10)"), bk("6x(2,5)"));
    }

    #[test]
    fn parse_errors() {
        for bad in [
            "(3,5)",
            "(1,1)",
            "(0,5)",
            "(1,2",
            "1,2)",
            "2(1,2)",
            "0x(1,2)",
            "(1,2),",
            "(1,2)(1,3)",
            "(a,3)",
        ] {
            assert!(matches!(parse_basket(bad), Err(Error::Parse { .. })), "{bad}");
        }
        match parse_basket("(1,2),(3,5)") {
            Err(Error::Parse { token, .. }) => assert_eq!(token, "(3,5)"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(bk("2x(1,2),3x(2,5),(1,3),(1,4)").sigma(), 10);
        assert_eq!(Basket::empty().sigma(), 0);
        assert_eq!(bk("(1,2),(2,5),(1,3),(2,11)").sigma(), 6);
    }

    #[test]
    fn sigma_prime_examples() {
        assert_eq!(bk("2x(1,2),3x(2,5),(1,3),(1,4)").sigma_prime(), Rational::new(239, 60));
        assert_eq!(Basket::empty().sigma_prime(), Rational::zero());
        assert_eq!(bk("(1,2),(2,5),(1,3),(2,11)").sigma_prime(), Rational::new(659, 330));
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(bk("2x(1,2),3x(2,5),(1,3),(1,4)").gamma(), Rational::new(11, 60));
        assert_eq!(Basket::empty().gamma(), Rational::from(24));
        assert!(bk("9x(1,2),(1,3),(1,13)").gamma().is_negative());
        assert_eq!(bk("2x(1,2),2x(1,3),(1,4),(1,12)").gamma(), Rational::zero());
        assert!(bk("2x(1,2),2x(1,3),(1,4),(1,13)").gamma().is_negative());
    }

    #[test]
    fn delta_examples() {
        assert_eq!(bk("(2,5)").delta(3).unwrap(), 1);
        assert_eq!(bk("(1,2)").delta(5).unwrap(), 4);
        for r in 3..12 {
            for n in 2..r {
                assert_eq!(Basket::from_raw(&[(1, r)]).unwrap().delta(n as u32).unwrap(), 0);
            }
        }
        assert_eq!(bk("(1,2)").delta(1), Err(Error::DeltaOrder(1)));
        assert_eq!(bk("(1,2)").delta_residue(0), Err(Error::DeltaOrder(0)));
    }

    #[test]
    fn delta_residue_examples() {
        assert_eq!(bk("(2,5)").delta_residue(3).unwrap(), Rational::from(1));
        // l = 1: Delta = 2 - (1 + 1) * 2 / 2 = 0, and the residue form gives (0 - 0) / 4.
        assert_eq!(bk("(1,2)").delta(2).unwrap(), 0);
        assert_eq!(bk("(1,2)").delta_residue(2).unwrap(), Rational::zero());
        assert_eq!(bk("(1,3)").delta_residue(2).unwrap(), Rational::zero());
    }

    #[test]
    fn ell_examples() {
        assert_eq!(bk("(1,2),(2,5),(1,3),(2,11)").ell(2).unwrap(), Rational::new(529, 132));
        assert_eq!(bk("(1,2)").ell(1).unwrap(), Rational::new(1, 4));
        assert_eq!(Basket::empty().ell(7).unwrap(), Rational::zero());
        assert_eq!(bk("(1,2)").ell(0), Err(Error::EllOrder(0)));
    }

    #[test]
    fn json_shape() {
        let b = bk("2x(1,2),(2,5)");
        let j = serde_json::to_string(&b).unwrap();
        assert_eq!(j, r#"{"pairs":[{"b":1,"r":2,"mult":2},{"b":2,"r":5,"mult":1}]}"#);
        let back: Basket = serde_json::from_str(&j).unwrap();
        assert_eq!(back, b);
        assert!(serde_json::from_str::<Basket>(r#"{"pairs":[{"b":3,"r":5,"mult":1}]}"#).is_err());
    }
}
