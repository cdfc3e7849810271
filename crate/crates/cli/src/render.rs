//! Plain-text rendering. Rationals print reduced as `n/d`, integers bare.

use std::collections::BTreeSet;

use fano_baskets::canonical::CanonicalChain;
use fano_baskets::enumerate::{EnumerationReport, TheoremReport};
use fano_baskets::packing::PackingStep;
use fano_baskets::riemann_roch::FormalBasket;
use fano_baskets::solver::{Multiplicity, SolvedLevels};
use fano_baskets::table_a::TABLE_A;
use fano_baskets::{Basket, InvariantReport, Rational};

/// Left-aligned columns separated by two spaces, no trailing blanks.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (i, (cell, w)) in cells.iter().zip(&widths).enumerate() {
            if i > 0 {
                s.push_str("  ");
            }
            s.push_str(cell);
            s.extend(std::iter::repeat_n(' ', w - cell.chars().count()));
        }
        s.trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    for row in rows {
        out += &line(row.iter().map(String::as_str).collect());
    }
    out
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn join(p: &[i64]) -> String {
    p.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")
}

pub fn render_eval(r: &InvariantReport) -> String {
    let f = &r.flags;
    let rows = vec![
        vec!["basket".to_string(), r.basket.to_string()],
        vec!["P_-1".to_string(), r.p1.to_string()],
        vec!["sigma".to_string(), r.sigma.to_string()],
        vec!["sigma'".to_string(), r.sigma_prime.to_string()],
        vec!["gamma".to_string(), r.gamma.to_string()],
        vec!["-K^3".to_string(), r.volume.to_string()],
        vec!["gamma >= 0".to_string(), yes(f.gamma_nonneg).to_string()],
        vec!["-K^3 > 0".to_string(), yes(f.volume_positive).to_string()],
        vec!["superadditive".to_string(), yes(f.superadditive).to_string()],
        vec!["P >= 0".to_string(), yes(f.p_nonneg).to_string()],
        vec!["geometric".to_string(), yes(f.geometric).to_string()],
    ];
    let mut out = table(&["invariant", "value"], &rows);
    out.push('\n');
    let header: Vec<String> = (1..=r.p.len()).map(|m| m.to_string()).collect();
    let mut head = vec!["m"];
    head.extend(header.iter().map(String::as_str));
    let mut prow = vec!["P_-m".to_string()];
    prow.extend(r.p.iter().map(i64::to_string));
    out += &table(&head, &[prow]);
    out
}

pub fn render_chain(chain: &CanonicalChain) -> String {
    let rows: Vec<Vec<String>> = chain
        .levels
        .iter()
        .map(|(&n, b)| {
            let eps = if n == 0 {
                "-".to_string()
            } else {
                chain.eps(n).to_string()
            };
            vec![n.to_string(), eps, b.to_string()]
        })
        .collect();
    let mut out = table(&["level", "eps", "basket"], &rows);
    out += &format!("stabilized at level {}\n", chain.stabilized_at);
    out
}

pub fn render_steps(steps: &[(PackingStep, Basket)]) -> String {
    let rows: Vec<Vec<String>> = steps
        .iter()
        .map(|(s, b)| {
            vec![
                format!("{} + {}", s.merged.0, s.merged.1),
                yes(s.prime).to_string(),
                b.to_string(),
            ]
        })
        .collect();
    table(&["packing", "prime", "result"], &rows)
}

pub fn render_baskets(baskets: &[Basket], p1: Option<u64>) -> String {
    match p1 {
        Some(p1) => {
            let rows: Vec<Vec<String>> = baskets
                .iter()
                .map(|b| vec![b.to_string(), FormalBasket::new(b.clone(), p1).volume().to_string()])
                .collect();
            table(&["basket", "-K^3"], &rows)
        }
        None => {
            let rows: Vec<Vec<String>> = baskets.iter().map(|b| vec![b.to_string()]).collect();
            table(&["basket"], &rows)
        }
    }
}

fn mult_rows(ms: &[Multiplicity]) -> String {
    ms.iter()
        .map(|m| {
            if m.mult == 1 {
                format!("({},{})", m.b, m.r)
            } else {
                format!("{}x({},{})", m.mult, m.b, m.r)
            }
        })
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn render_solved(s: &SolvedLevels) -> String {
    let opt = |v: Option<i64>| v.map_or("-".to_string(), |x| x.to_string());
    let mut rows = vec![
        vec!["sigma".to_string(), s.sigma.to_string()],
        vec!["sigma_5".to_string(), s.sigma5.to_string()],
        vec!["epsilon".to_string(), s.epsilon.to_string()],
        vec!["B^(0)".to_string(), mult_rows(&s.n0)],
    ];
    if let Some(n5) = &s.n5 {
        rows.push(vec!["B^(5)".to_string(), mult_rows(n5)]);
    }
    rows.push(vec!["eps_5".to_string(), opt(s.eps5)]);
    rows.push(vec!["eps_6".to_string(), opt(s.eps6)]);
    rows.push(vec!["implied P_-6".to_string(), opt(s.implied_p6)]);
    rows.push(vec!["eps_7".to_string(), opt(s.eps7)]);
    rows.push(vec!["eps_8".to_string(), opt(s.eps8)]);
    rows.push(vec!["feasible".to_string(), yes(s.feasible).to_string()]);
    let mut out = table(&["quantity", "value"], &rows);
    for v in &s.violations {
        out += &format!("violation: {v}\n");
    }
    out
}

pub fn render_summary(r: &EnumerationReport) -> String {
    let s = &r.stats;
    let scope = if s.exhaustive {
        "exhaustive"
    } else {
        "bounded search, not exhaustive"
    };
    format!(
        "hits {}  nodes {}  pruned {}  evaluated {}  max P_-1 hit {}  {}  {} ms\n",
        s.hits,
        s.nodes,
        s.pruned,
        s.evaluated,
        s.max_p1_hit.map_or("-".to_string(), |p| p.to_string()),
        scope,
        s.elapsed_ms
    )
}

pub fn render_hits(r: &EnumerationReport) -> String {
    let rows: Vec<Vec<String>> = r
        .hits
        .iter()
        .map(|h| vec![h.basket.to_string(), h.p1.to_string(), h.volume.to_string(), join(&h.p)])
        .collect();
    table(&["basket", "P_-1", "-K^3", "P_-1..P_-M"], &rows)
}

/// The `P_-1 = P_-2 = 0` hits in reference row order; hits outside the
/// reference are appended and flagged `extra`.
pub fn render_table_a(r: &EnumerationReport) -> String {
    let p = |h: &InvariantReport, m: usize| h.p_minus(m).map_or("-".to_string(), |v| v.to_string());
    let row = |label: String, h: &InvariantReport| {
        let mut cells = vec![label, h.basket.to_string(), h.volume.to_string()];
        cells.extend((3..=8).map(|m| p(h, m)));
        cells
    };
    let mut rows = Vec::new();
    let mut known = BTreeSet::new();
    for golden in &TABLE_A {
        let b = golden.basket();
        if let Some(h) = r.hits.iter().find(|h| h.basket == b) {
            rows.push(row(format!("No.{}", golden.no), h));
        }
        known.insert(b);
    }
    for h in r.hits.iter().filter(|h| !known.contains(&h.basket)) {
        rows.push(row("extra".to_string(), h));
    }
    table(
        &["No.", "B", "-K^3", "P_-3", "P_-4", "P_-5", "P_-6", "P_-7", "P_-8"],
        &rows,
    )
}

pub fn render_min_volume(min: &Rational, who: &[FormalBasket]) -> String {
    let rows: Vec<Vec<String>> = who
        .iter()
        .map(|f| vec![f.basket.to_string(), f.p1.to_string()])
        .collect();
    format!("min -K^3 = {min}\n") + &table(&["minimizer", "P_-1"], &rows)
}

pub fn render_theorems(r: &TheoremReport) -> String {
    let mut out = String::new();
    for c in &r.checks {
        out += &format!("{} {}: {}\n", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
        for w in c.witnesses.iter().take(5) {
            out += &format!("    witness {} P_-1={}\n", w.basket, w.p1);
        }
        if c.witnesses.len() > 5 {
            out += &format!("    ... {} more\n", c.witnesses.len() - 5);
        }
    }
    out
}
