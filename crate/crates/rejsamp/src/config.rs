//! Flat `key=value` configuration with CLI overrides.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{bail, Context, Result};
use rejsamp_core::graph::GraphFamily;

/// A flat, ordered key/value configuration. Later writes win, so CLI
/// overrides are applied after loading a file.
#[derive(Debug, Clone, Default)]
pub struct Config {
    map: BTreeMap<String, String>,
}

impl Config {
    pub fn new() -> Config {
        Config::default()
    }

    /// Parse a config file: one `key=value` per line, `#` comments and
    /// blank lines ignored, whitespace around key and value trimmed.
    pub fn from_file(path: &Path) -> Result<Config> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        let mut cfg = Config::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .with_context(|| format!("{}:{}: expected key=value", path.display(), lineno + 1))?;
            cfg.set(key.trim(), value.trim());
        }
        Ok(cfg)
    }

    pub fn set(&mut self, key: &str, value: &str) {
        self.map.insert(key.to_string(), value.to_string());
    }

    /// Apply `key=value` override strings (from the CLI).
    pub fn apply_overrides(&mut self, overrides: &[String]) -> Result<()> {
        for pair in overrides {
            let (key, value) = pair
                .split_once('=')
                .with_context(|| format!("override '{pair}' is not key=value"))?;
            self.set(key.trim(), value.trim());
        }
        Ok(())
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.map.get(key).map(String::as_str)
    }

    pub fn get_u64(&self, key: &str, default: u64) -> Result<u64> {
        match self.map.get(key) {
            Some(v) => v.parse().with_context(|| format!("config {key}={v}: expected integer")),
            None => Ok(default),
        }
    }

    pub fn get_u32(&self, key: &str, default: u32) -> Result<u32> {
        Ok(self.get_u64(key, default as u64)? as u32)
    }

    pub fn get_usize(&self, key: &str, default: usize) -> Result<usize> {
        Ok(self.get_u64(key, default as u64)? as usize)
    }

    pub fn get_f64(&self, key: &str, default: f64) -> Result<f64> {
        match self.map.get(key) {
            Some(v) => v.parse().with_context(|| format!("config {key}={v}: expected number")),
            None => Ok(default),
        }
    }

    pub fn get_family(&self, key: &str, default: GraphFamily) -> Result<GraphFamily> {
        match self.map.get(key) {
            Some(v) => parse_family(v),
            None => Ok(default),
        }
    }

    /// Comma-separated list of integers.
    pub fn get_u32_list(&self, key: &str, default: &[u32]) -> Result<Vec<u32>> {
        match self.map.get(key) {
            Some(v) => v
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse()
                        .with_context(|| format!("config {key}={v}: expected integer list"))
                })
                .collect(),
            None => Ok(default.to_vec()),
        }
    }

    /// All entries in key order, for report headers.
    pub fn entries(&self) -> impl Iterator<Item = (&str, &str)> {
        self.map.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }
}

pub fn parse_family(s: &str) -> Result<GraphFamily> {
    match s {
        "g1" => Ok(GraphFamily::TwoCliques),
        "g2" => Ok(GraphFamily::CompleteBipartite),
        other => bail!("unknown family '{other}' (expected g1 or g2)"),
    }
}
