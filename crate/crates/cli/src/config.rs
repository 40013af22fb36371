//! Plain `key = value` configuration.
//!
//! ```text
//! # comments start with '#'
//! field.16.modulus = 1,1,0,0,1
//! budget.distance = 50000000
//! budget.search = 1000000
//! budget.enumeration = 65536
//! ```

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use skewcodes::galois::{prime_power, GaloisField};

pub const CONFIG_ENV: &str = "SKEWCODES_CONFIG";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    /// Ascending `F_p` coefficients of the modulus, keyed by field order.
    pub moduli: BTreeMap<u32, Vec<u32>>,
    /// Node budget for the distance search.
    pub distance_budget: u64,
    /// Candidate budget per divisor scan.
    pub search_budget: u64,
    /// Largest `q^k` for which codewords are enumerated.
    pub enumeration_budget: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            moduli: BTreeMap::new(),
            distance_budget: 200_000_000,
            search_budget: 1 << 24,
            enumeration_budget: 1 << 16,
        }
    }
}

impl Config {
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Config::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                bail!("line {}: expected key = value", lineno + 1);
            };
            let (key, value) = (key.trim(), value.trim());
            let parts: Vec<&str> = key.split('.').collect();
            match parts.as_slice() {
                ["field", q, "modulus"] => {
                    let q: u32 = q.parse().with_context(|| format!("line {}: bad field order", lineno + 1))?;
                    let coeffs = value
                        .split(',')
                        .map(|c| c.trim().parse::<u32>())
                        .collect::<std::result::Result<Vec<_>, _>>()
                        .with_context(|| format!("line {}: bad modulus coefficients", lineno + 1))?;
                    cfg.moduli.insert(q, coeffs);
                }
                ["budget", "distance"] => cfg.distance_budget = parse_u64(value, lineno)?,
                ["budget", "search"] => cfg.search_budget = parse_u64(value, lineno)?,
                ["budget", "enumeration"] => cfg.enumeration_budget = parse_u64(value, lineno)?,
                _ => bail!("line {}: unknown key `{key}`", lineno + 1),
            }
        }
        Ok(cfg)
    }

    /// Reads `path`, else the file named by `SKEWCODES_CONFIG`, else defaults.
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let path: Option<PathBuf> = path.map(Path::to_path_buf).or_else(|| std::env::var_os(CONFIG_ENV).map(PathBuf::from));
        match path {
            Some(p) => {
                let text = std::fs::read_to_string(&p).with_context(|| format!("reading config {}", p.display()))?;
                Self::parse(&text).with_context(|| format!("in config {}", p.display()))
            }
            None => Ok(Config::default()),
        }
    }

    /// The field of order `q` under the configured or default modulus.
    pub fn field(&self, q: u32) -> Result<GaloisField> {
        self.field_with(q, self.moduli.get(&q).map(Vec::as_slice))
    }

    pub fn field_with(&self, q: u32, modulus: Option<&[u32]>) -> Result<GaloisField> {
        let (p, m) = prime_power(q).with_context(|| format!("{q} is not a prime power"))?;
        match modulus {
            Some(mo) => Ok(GaloisField::new(p, m, Some(mo))?),
            None => Ok(GaloisField::with_order(q)?),
        }
    }
}

fn parse_u64(value: &str, lineno: usize) -> Result<u64> {
    value.replace('_', "").parse().with_context(|| format!("line {}: expected an integer", lineno + 1))
}
