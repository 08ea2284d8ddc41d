use std::path::{Path, PathBuf};

use anyhow::Context;
use mpl_core::potential::QuadratureOptions;
use serde::Deserialize;

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    /// Largest facet coordinate the enumerator accepts.
    pub p_max_guard: Option<i64>,
    pub h0_grid: Option<usize>,
    pub h0_margin: Option<f64>,
    pub quadrature: QuadratureOptions,
    pub cache_dir: Option<PathBuf>,
}

impl Config {
    pub fn load(path: Option<&Path>) -> anyhow::Result<Config> {
        let Some(path) = path else {
            return Ok(Config::default());
        };
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let config = toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        Ok(config)
    }

    /// `MPL_CACHE_DIR` wins over the config file.
    pub fn cache_dir(&self) -> Option<PathBuf> {
        match std::env::var_os("MPL_CACHE_DIR") {
            Some(d) if !d.is_empty() => Some(PathBuf::from(d)),
            _ => self.cache_dir.clone(),
        }
    }
}
