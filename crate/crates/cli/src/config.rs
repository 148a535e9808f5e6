//! Run configuration: defaults, then a TOML file, then flags and their
//! environment variables.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use quatzero::eigen::spectrum::EigenConfig;
use quatzero::periods::PeriodConfig;
use quatzero::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Pretty,
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pretty" => Ok(Format::Pretty),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(Error::precondition(format!("unknown format '{s}' (pretty, json, csv)"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    /// Separating operators are searched among T_p with p below this.
    pub separating_prime_bound: u64,
    /// Eigenvalues are computed and verified for primes up to this.
    pub check_primes_upto: u64,
    /// Largest number of lattice vectors one short-vector search may visit.
    pub short_vector_budget: usize,
    /// Starting and maximal bits for interval evaluation of periods.
    pub interval_start_bits: u32,
    pub interval_max_bits: u32,
    pub cache_dir: Option<PathBuf>,
    pub format: Format,
    /// Worker threads for census; 0 uses every core.
    pub jobs: usize,
}

impl Default for Config {
    fn default() -> Self {
        let e = EigenConfig::default();
        let p = PeriodConfig::default();
        Config {
            separating_prime_bound: e.separating_prime_bound,
            check_primes_upto: e.check_primes_upto,
            short_vector_budget: 10_000_000,
            interval_start_bits: p.start_bits,
            interval_max_bits: p.max_bits,
            cache_dir: None,
            format: Format::Pretty,
            jobs: 0,
        }
    }
}

impl Config {
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let cfg = match path {
            None => Config::default(),
            Some(p) => {
                let text = std::fs::read_to_string(p)?;
                toml::from_str(&text)
                    .map_err(|e| Error::precondition(format!("config {}: {e}", p.display())))?
            }
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.separating_prime_bound < 3
            || self.check_primes_upto < 2
            || self.short_vector_budget == 0
            || self.interval_start_bits == 0
            || self.interval_max_bits < self.interval_start_bits
        {
            return Err(Error::precondition("config bounds must be positive and start_bits <= max_bits"));
        }
        Ok(())
    }

    pub fn eigen(&self) -> EigenConfig {
        EigenConfig {
            separating_prime_bound: self.separating_prime_bound,
            check_primes_upto: self.check_primes_upto,
            ..EigenConfig::default()
        }
    }

    pub fn period(&self) -> PeriodConfig {
        PeriodConfig {
            start_bits: self.interval_start_bits,
            max_bits: self.interval_max_bits,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toml_overrides_defaults() {
        let c: Config = toml::from_str("short_vector_budget = 5\nformat = \"json\"").unwrap();
        assert_eq!(c.short_vector_budget, 5);
        assert_eq!(c.format, Format::Json);
        assert_eq!(c.separating_prime_bound, 200);
        assert!(toml::from_str::<Config>("bogus = 1").is_err());
    }

    #[test]
    fn bounds_checked() {
        let c = Config {
            interval_max_bits: 64,
            ..Config::default()
        };
        assert!(c.validate().is_err());
    }
}
