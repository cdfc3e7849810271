//! Search settings resolved from flags, a `key=value` file named by
//! `FANO_BASKETS_CONFIG`, and built-in defaults, in that order of precedence.

use std::collections::BTreeMap;
use std::path::Path;

use fano_baskets::{Error, Result, SearchConfig};

pub const CONFIG_ENV: &str = "FANO_BASKETS_CONFIG";

/// Settings a config file may carry. Unset keys fall through to defaults.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FileConfig {
    pub max_n: Option<u32>,
    pub max_sum_r: Option<u64>,
    pub p1_min: Option<u64>,
    pub p1_max: Option<u64>,
    pub threads: Option<usize>,
    pub gamma: Option<bool>,
    pub volume: Option<bool>,
    pub superadd: Option<bool>,
    pub nonneg: Option<bool>,
}

fn value<T: std::str::FromStr>(key: &str, raw: &str) -> Result<T> {
    raw.parse()
        .map_err(|_| Error::Config(format!("bad value {raw:?} for {key}")))
}

impl FileConfig {
    pub fn parse(text: &str) -> Result<FileConfig> {
        let mut seen = BTreeMap::new();
        for (no, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key=value", no + 1)))?;
            seen.insert(k.trim().to_string(), v.trim().to_string());
        }
        let mut cfg = FileConfig::default();
        for (k, v) in &seen {
            match k.as_str() {
                "max_n" => cfg.max_n = Some(value(k, v)?),
                "max_sum_r" => cfg.max_sum_r = Some(value(k, v)?),
                "p1_min" => cfg.p1_min = Some(value(k, v)?),
                "p1_max" => cfg.p1_max = Some(value(k, v)?),
                "threads" => cfg.threads = Some(value(k, v)?),
                "gamma" => cfg.gamma = Some(value(k, v)?),
                "volume" => cfg.volume = Some(value(k, v)?),
                "superadd" => cfg.superadd = Some(value(k, v)?),
                "nonneg" => cfg.nonneg = Some(value(k, v)?),
                other => return Err(Error::Config(format!("unknown config key {other:?}"))),
            }
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<FileConfig> {
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        FileConfig::parse(&text)
    }

    /// The file named by the environment variable, or an empty config.
    pub fn from_env() -> Result<FileConfig> {
        match std::env::var_os(CONFIG_ENV) {
            Some(p) => FileConfig::load(Path::new(&p)),
            None => Ok(FileConfig::default()),
        }
    }

    pub fn apply(&self, cfg: &mut SearchConfig) {
        if let Some(v) = self.max_n {
            cfg.horizon = v;
        }
        if let Some(v) = self.max_sum_r {
            cfg.max_sum_r = v;
        }
        if let Some(v) = self.p1_min {
            cfg.p1_min = v;
        }
        if let Some(v) = self.p1_max {
            cfg.p1_max = v;
        }
        if let Some(v) = self.threads {
            cfg.threads = v;
        }
        let c = &mut cfg.constraints;
        for (slot, v) in [
            (&mut c.gamma, self.gamma),
            (&mut c.volume, self.volume),
            (&mut c.superadditive, self.superadd),
            (&mut c.nonneg, self.nonneg),
        ] {
            if let Some(v) = v {
                *slot = v;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_applies() {
        let f = FileConfig::parse("# comment\nmax_sum_r = 20\ngamma=false\n\nthreads=4\n").unwrap();
        let mut cfg = SearchConfig::default();
        f.apply(&mut cfg);
        assert_eq!(cfg.max_sum_r, 20);
        assert_eq!(cfg.threads, 4);
        assert!(!cfg.constraints.gamma);
        assert!(cfg.constraints.volume);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(FileConfig::parse("max_sum_r").is_err());
        assert!(FileConfig::parse("colour=blue").is_err());
        assert!(FileConfig::parse("gamma=maybe").is_err());
    }
}
