//! Experiment suites: each reads its parameters from a [`Config`],
//! produces a deterministic [`Report`], and judges itself against its
//! configured thresholds.

pub mod advantage;
pub mod chi;
pub mod events;
pub mod trend;
pub mod tv;

use anyhow::{bail, Result};

use crate::config::Config;
use crate::report::SuiteResult;

pub const SUITE_NAMES: &[&str] = &[
    "advantage",
    "tv-junta",
    "tv-unate-adaptive",
    "tv-unate-nonadaptive",
    "distance-trend",
    "event-frequency",
    "chi-table",
];

/// Dispatch a suite by name.
pub fn run(name: &str, config: &Config) -> Result<SuiteResult> {
    match name {
        "advantage" => advantage::run(config),
        "tv-junta" => tv::run_junta(config),
        "tv-unate-adaptive" => tv::run_unate_adaptive(config),
        "tv-unate-nonadaptive" => tv::run_unate_nonadaptive(config),
        "distance-trend" => trend::run(config),
        "event-frequency" => events::run(config),
        "chi-table" => chi::run(config),
        other => bail!("unknown suite '{other}' (expected one of {SUITE_NAMES:?})"),
    }
}
