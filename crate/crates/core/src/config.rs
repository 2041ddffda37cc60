//! Runtime limits. Every limit has a default, can be overridden from the
//! environment, and is validated before use.

use std::env;

use crate::error::ConfigError;

/// Widest hypercube an [`ESet`](crate::ESet) can hold: 2^7 = 128 bits.
pub const STORAGE_MAX_K: u32 = 7;

pub const ENV_MAX_K: &str = "PLIABLE_MAX_K";
pub const ENV_LP_MAX_K: &str = "PLIABLE_LP_MAX_K";
pub const ENV_PARTITION_BUDGET: &str = "PLIABLE_PARTITION_BUDGET";
pub const ENV_PIVOT_BUDGET: &str = "PLIABLE_PIVOT_BUDGET";
pub const ENV_CONSTRUCT_BUDGET: &str = "PLIABLE_CONSTRUCT_BUDGET";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Config {
    /// Largest k accepted by the family construction.
    pub max_k: u32,
    /// Member pairs the construction may visit, summed over generations.
    pub construct_pair_budget: u64,
    /// Largest k for which the full realizability LP is materialized.
    pub lp_max_k: u32,
    /// Search nodes the uncrossable-partition search may visit.
    pub partition_node_budget: u64,
    /// Simplex pivots the feasibility solver may perform.
    pub pivot_budget: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_k: 6,
            construct_pair_budget: 1_000_000_000,
            lp_max_k: 3,
            partition_node_budget: 50_000_000,
            pivot_budget: 1_000_000,
        }
    }
}

impl Config {
    /// Defaults overridden by any `PLIABLE_*` environment variables that are set.
    pub fn from_env() -> Result<Self, ConfigError> {
        let mut cfg = Config::default();
        if let Some(v) = read_env(ENV_MAX_K)? {
            cfg.max_k = narrow(ENV_MAX_K, v)?;
        }
        if let Some(v) = read_env(ENV_LP_MAX_K)? {
            cfg.lp_max_k = narrow(ENV_LP_MAX_K, v)?;
        }
        if let Some(v) = read_env(ENV_PARTITION_BUDGET)? {
            cfg.partition_node_budget = v;
        }
        if let Some(v) = read_env(ENV_PIVOT_BUDGET)? {
            cfg.pivot_budget = v;
        }
        if let Some(v) = read_env(ENV_CONSTRUCT_BUDGET)? {
            cfg.construct_pair_budget = v;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(3..=STORAGE_MAX_K).contains(&self.max_k) {
            return Err(ConfigError::OutOfRange {
                name: "max_k",
                value: self.max_k as u64,
                min: 3,
                max: STORAGE_MAX_K as u64,
            });
        }
        if !(1..=STORAGE_MAX_K).contains(&self.lp_max_k) {
            return Err(ConfigError::OutOfRange {
                name: "lp_max_k",
                value: self.lp_max_k as u64,
                min: 1,
                max: STORAGE_MAX_K as u64,
            });
        }
        if self.partition_node_budget == 0 || self.pivot_budget == 0 || self.construct_pair_budget == 0 {
            return Err(ConfigError::ZeroBudget);
        }
        Ok(())
    }
}

fn read_env(name: &'static str) -> Result<Option<u64>, ConfigError> {
    match env::var(name) {
        Ok(raw) => raw
            .trim()
            .parse::<u64>()
            .map(Some)
            .map_err(|_| ConfigError::Unparsable { name, raw }),
        Err(_) => Ok(None),
    }
}

fn narrow(name: &'static str, v: u64) -> Result<u32, ConfigError> {
    u32::try_from(v).map_err(|_| ConfigError::Unparsable {
        name,
        raw: v.to_string(),
    })
}
