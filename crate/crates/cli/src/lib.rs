//! Command-line front end: argument parsing, config resolution and output.

pub mod config;
pub mod render;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use fano_baskets::canonical::{build_chain, unpack_level};
use fano_baskets::enumerate::{check_theorems, enumerate, min_volume};
use fano_baskets::packing::{minimal_elements, steps, PackingMode};
use fano_baskets::riemann_roch::{FormalBasket, DEFAULT_CHECK_HORIZON, DEFAULT_THEOREM_HORIZON};
use fano_baskets::solver::{solve_b0, solve_b5_and_eps, PluriData};
use fano_baskets::{Basket, Error, Rational, SearchConfig};
use serde_json::json;

use crate::config::FileConfig;

/// Exit status for a failed verification or an empty result.
pub const EXIT_FAILED: i32 = 1;
/// Exit status for bad arguments or malformed input.
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "fano-baskets",
    version,
    about = "Basket calculus for terminal weak Q-Fano threefolds"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Invariants, anti-plurigenera and constraint flags of a formal basket.
    Eval {
        basket: String,
        #[arg(long)]
        p1: u64,
        #[arg(long, default_value_t = DEFAULT_CHECK_HORIZON)]
        max_n: u32,
        #[arg(long)]
        json: bool,
    },
    /// One level of the canonical sequence, or the whole chain.
    Unpack {
        basket: String,
        #[arg(long, conflicts_with = "chain")]
        level: Option<u32>,
        #[arg(long)]
        chain: bool,
        /// Last level of the chain; defaults to max(5, max r).
        #[arg(long)]
        cap: Option<u32>,
        #[arg(long)]
        json: bool,
    },
    /// One-step packings, or the minimal elements below a basket.
    Packings {
        basket: String,
        #[arg(long)]
        prime_only: bool,
        #[arg(long)]
        minimal: bool,
        /// Show -K^3 of minimal elements at this P_-1.
        #[arg(long)]
        p1: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Recover B^(0), B^(5) and eps_5..eps_8 from anti-plurigenera.
    Solve {
        /// Comma-separated P_-1,P_-2,...
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
        p: Vec<i64>,
        /// Comma-separated r:k entries of the B^(0) tail (r >= 5).
        #[arg(long, value_delimiter = ',')]
        tail: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Search all formal baskets satisfying the constraints.
    Enumerate {
        #[command(flatten)]
        search: SearchArgs,
        /// Write hits as line-delimited JSON.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Minimum -K^3 over the search and every basket attaining it.
    MinVolume {
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long)]
        json: bool,
    },
    /// Check the anti-plurigenus lower bounds over every hit.
    Verify {
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Debug, Default)]
pub struct SearchArgs {
    /// Fix P_-1.
    #[arg(long)]
    pub p1: Option<u64>,
    /// Fix P_-2.
    #[arg(long, allow_negative_numbers = true)]
    pub p2: Option<i64>,
    #[arg(long)]
    pub p1_max: Option<u64>,
    #[arg(long)]
    pub max_n: Option<u32>,
    #[arg(long)]
    pub max_sum_r: Option<u64>,
    #[arg(long)]
    pub no_gamma: bool,
    #[arg(long)]
    pub no_volume: bool,
    #[arg(long)]
    pub no_superadd: bool,
    #[arg(long)]
    pub no_nonneg: bool,
    /// Keep hits with -K^3 at most this value.
    #[arg(long)]
    pub volume_ceiling: Option<Rational>,
    /// Worker threads; 0 uses every core.
    #[arg(long)]
    pub threads: Option<usize>,
}

impl SearchArgs {
    /// Defaults, then the config file, then flags.
    pub fn resolve(&self, file: &FileConfig, default_horizon: u32) -> SearchConfig {
        let mut cfg = SearchConfig {
            horizon: default_horizon,
            ..SearchConfig::default()
        };
        file.apply(&mut cfg);
        if let Some(p1) = self.p1 {
            cfg.fixed_p1 = Some(p1);
            cfg.p1_min = p1;
            cfg.p1_max = p1;
        }
        if let Some(v) = self.p1_max {
            cfg.p1_max = v;
        }
        cfg.fixed_p2 = self.p2;
        if let Some(v) = self.max_n {
            cfg.horizon = v;
        }
        if let Some(v) = self.max_sum_r {
            cfg.max_sum_r = v;
        }
        if let Some(v) = self.threads {
            cfg.threads = v;
        }
        cfg.volume_ceiling = self.volume_ceiling.clone();
        let c = &mut cfg.constraints;
        c.gamma &= !self.no_gamma;
        c.volume &= !self.no_volume;
        c.superadditive &= !self.no_superadd;
        c.nonneg &= !self.no_nonneg;
        cfg
    }
}

enum Failure {
    Usage(String),
    Failed(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::NoHits | Error::Integrality { .. } | Error::Invariant(_) => Failure::Failed(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure::Failed(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Failure {
        Failure::Failed(e.to_string())
    }
}

fn basket(text: &str) -> Result<Basket, Failure> {
    text.parse::<Basket>().map_err(Failure::from)
}

fn emit_json(out: &mut dyn Write, value: &impl serde::Serialize) -> Result<(), Failure> {
    writeln!(out, "{}", serde_json::to_string_pretty(value)?)?;
    Ok(())
}

fn parse_tail(items: &[String]) -> Result<Vec<(u64, i64)>, Failure> {
    items
        .iter()
        .map(|item| {
            let bad = || Failure::Usage(format!("bad tail entry {item:?}, expected r:k"));
            let (r, k) = item.split_once(':').ok_or_else(bad)?;
            Ok((
                r.trim().parse().map_err(|_| bad())?,
                k.trim().parse().map_err(|_| bad())?,
            ))
        })
        .collect()
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        Command::Eval {
            basket: text,
            p1,
            max_n,
            json,
        } => {
            let report = FormalBasket::new(basket(&text)?, p1).report(max_n)?;
            if json {
                emit_json(out, &report)?;
            } else {
                write!(out, "{}", render::render_eval(&report))?;
            }
        }
        Command::Unpack {
            basket: text,
            level,
            chain: _,
            cap,
            json,
        } => {
            let b = basket(&text)?;
            match level {
                Some(n) => {
                    let lb = unpack_level(&b, n)?;
                    if json {
                        emit_json(out, &json!({ "level": n, "basket": lb }))?;
                    } else {
                        writeln!(out, "B^({n}) = {lb}")?;
                    }
                }
                None => {
                    let chain = build_chain(&b, cap)?;
                    if json {
                        emit_json(out, &chain)?;
                    } else {
                        write!(out, "{}", render::render_chain(&chain))?;
                    }
                }
            }
        }
        Command::Packings {
            basket: text,
            prime_only,
            minimal,
            p1,
            json,
        } => {
            let b = basket(&text)?;
            let mode = if prime_only {
                PackingMode::Prime
            } else {
                PackingMode::General
            };
            if minimal {
                let mins = minimal_elements(&b, mode)?;
                if json {
                    let items: Vec<_> = mins
                        .iter()
                        .map(|m| {
                            let vol = p1.map(|p| FormalBasket::new(m.clone(), p).volume());
                            json!({ "basket": m, "volume": vol })
                        })
                        .collect();
                    emit_json(out, &items)?;
                } else {
                    write!(out, "{}", render::render_baskets(&mins, p1))?;
                }
            } else {
                let all = steps(&b, mode);
                if json {
                    let items: Vec<_> = all.iter().map(|(s, r)| json!({ "step": s, "result": r })).collect();
                    emit_json(out, &items)?;
                } else {
                    write!(out, "{}", render::render_steps(&all))?;
                }
            }
        }
        Command::Solve { p, tail, json } => {
            let data = PluriData::new(&p, &parse_tail(&tail)?);
            let solved = if p.len() >= 5 {
                solve_b5_and_eps(&data)?
            } else {
                solve_b0(&data)?
            };
            if json {
                emit_json(out, &solved)?;
            } else {
                write!(out, "{}", render::render_solved(&solved))?;
            }
        }
        Command::Enumerate {
            search,
            out: path,
            json,
        } => {
            let cfg = search.resolve(&FileConfig::from_env()?, DEFAULT_CHECK_HORIZON);
            let report = enumerate(&cfg)?;
            if let Some(path) = path {
                let mut file = std::io::BufWriter::new(std::fs::File::create(&path)?);
                for h in &report.hits {
                    writeln!(file, "{}", serde_json::to_string(h)?)?;
                }
                file.flush()?;
                write!(out, "{}", render::render_summary(&report))?;
            } else if json {
                emit_json(out, &report)?;
            } else {
                write!(out, "{}", render::render_summary(&report))?;
                if cfg.fixed_p1 == Some(0) && cfg.fixed_p2 == Some(0) {
                    write!(out, "{}", render::render_table_a(&report))?;
                } else {
                    write!(out, "{}", render::render_hits(&report))?;
                }
            }
        }
        Command::MinVolume { search, json } => {
            let cfg = search.resolve(&FileConfig::from_env()?, DEFAULT_CHECK_HORIZON);
            let (min, who) = min_volume(&cfg)?;
            if json {
                emit_json(out, &json!({ "min": min, "minimizers": who }))?;
            } else {
                write!(out, "{}", render::render_min_volume(&min, &who))?;
            }
        }
        Command::Verify { search, json } => {
            let cfg = search.resolve(&FileConfig::from_env()?, DEFAULT_THEOREM_HORIZON);
            if cfg.horizon < 12 {
                return Err(Failure::Usage(format!(
                    "verify needs --max-n >= 12, got {}",
                    cfg.horizon
                )));
            }
            let report = check_theorems(&enumerate(&cfg)?);
            if json {
                emit_json(out, &report)?;
            } else {
                write!(out, "{}", render::render_theorems(&report))?;
            }
            if !report.all_passed() {
                return Ok(EXIT_FAILED);
            }
        }
    }
    Ok(0)
}

/// Runs one invocation and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Failed(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_FAILED
        }
    }
}
