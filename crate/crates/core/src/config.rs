//! Flat `key = value` run configuration.

use std::path::Path;

use crate::error::{Error, Result};
use crate::grassmann::DEFAULT_GENERATORS;

pub const SEED_ENV: &str = "SUPER_SPECTRAL_SEED";

#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub n_generators: usize,
    pub max_jet_order: usize,
    pub ko_dimension: u8,
    pub seed: u64,
    pub tolerance_numeric: f64,
}

impl Default for Config {
    fn default() -> Self {
        Config { n_generators: DEFAULT_GENERATORS, max_jet_order: 3, ko_dimension: 6, seed: 0, tolerance_numeric: 1e-9 }
    }
}

fn parse_value<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse().map_err(|_| Error::Config(format!("bad value for {key}: {v:?}")))
}

impl Config {
    /// Parse `key = value` lines; `#` starts a comment, blank lines are skipped.
    pub fn parse(src: &str) -> Result<Self> {
        let mut c = Config::default();
        for (no, raw) in src.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", no + 1)))?;
            let (k, v) = (k.trim(), v.trim());
            match k {
                "n_generators" => c.n_generators = parse_value(k, v)?,
                "max_jet_order" => c.max_jet_order = parse_value(k, v)?,
                "ko_dimension" => c.ko_dimension = parse_value(k, v)?,
                "seed" => c.seed = parse_value(k, v)?,
                "tolerance_numeric" => c.tolerance_numeric = parse_value(k, v)?,
                _ => return Err(Error::Config(format!("unknown key {k:?}"))),
            }
        }
        if c.n_generators == 0 {
            return Err(Error::Config("n_generators must be positive".into()));
        }
        if !(c.tolerance_numeric > 0.0) {
            return Err(Error::Config("tolerance_numeric must be positive".into()));
        }
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let src = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&src)
    }

    /// Apply the seed override from the environment, if set.
    pub fn with_env(mut self) -> Result<Self> {
        if let Ok(v) = std::env::var(SEED_ENV) {
            self.seed = parse_value(SEED_ENV, v.trim())?;
        }
        Ok(self)
    }
}
