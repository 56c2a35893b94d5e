//! Deterministic CSV reports with reproducibility headers.
//!
//! Layout: `#key=value` header lines (config echo plus artifact and PRNG
//! identifiers), one CSV header row, data rows, then `#summary key=value`
//! lines. Re-running with an identical config produces identical bytes.

use std::path::Path;

use anyhow::{Context, Result};

use crate::config::Config;
use rejsamp_core::rng::PRNG_ID;
use rejsamp_core::ARTIFACT_VERSION;

#[derive(Debug, Clone)]
pub struct Report {
    headers: Vec<(String, String)>,
    columns: Vec<String>,
    rows: Vec<Vec<String>>,
    summary: Vec<(String, String)>,
}

impl Report {
    /// Start a report for one suite, echoing the full configuration.
    pub fn new(suite: &str, config: &Config, columns: &[&str]) -> Report {
        let mut headers = vec![
            ("artifact_version".to_string(), ARTIFACT_VERSION.to_string()),
            ("prng_id".to_string(), PRNG_ID.to_string()),
            ("suite".to_string(), suite.to_string()),
        ];
        for (k, v) in config.entries() {
            headers.push((format!("config.{k}"), v.to_string()));
        }
        Report {
            headers,
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            summary: Vec::new(),
        }
    }

    pub fn push_header(&mut self, key: &str, value: impl ToString) {
        self.headers.push((key.to_string(), value.to_string()));
    }

    pub fn push_row(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len(), "row width must match columns");
        self.rows.push(row);
    }

    pub fn push_summary(&mut self, key: &str, value: impl ToString) {
        self.summary.push((key.to_string(), value.to_string()));
    }

    pub fn rows(&self) -> &[Vec<String>] {
        &self.rows
    }

    pub fn summary(&self) -> &[(String, String)] {
        &self.summary
    }

    pub fn summary_value(&self, key: &str) -> Option<&str> {
        self.summary.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    /// Render the whole report deterministically.
    pub fn to_csv_string(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.headers {
            out.push_str(&format!("#{k}={v}\n"));
        }
        let mut writer = csv::WriterBuilder::new().from_writer(Vec::new());
        writer.write_record(&self.columns).expect("in-memory csv");
        for row in &self.rows {
            writer.write_record(row).expect("in-memory csv");
        }
        out.push_str(
            std::str::from_utf8(&writer.into_inner().expect("in-memory csv"))
                .expect("csv output is UTF-8"),
        );
        for (k, v) in &self.summary {
            out.push_str(&format!("#summary {k}={v}\n"));
        }
        out
    }

    pub fn write_to(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_csv_string())
            .with_context(|| format!("writing report {}", path.display()))
    }
}

/// A suite's report plus its verdict against the configured thresholds.
#[derive(Debug, Clone)]
pub struct SuiteResult {
    pub report: Report,
    pub passed: bool,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reports_are_deterministic() {
        let mut cfg = Config::new();
        cfg.set("n", "8");
        let build = || {
            let mut r = Report::new("demo", &cfg, &["a", "b"]);
            r.push_row(vec!["1".into(), "x,y".into()]);
            r.push_summary("ok", "true");
            r
        };
        let s1 = build().to_csv_string();
        let s2 = build().to_csv_string();
        assert_eq!(s1, s2);
        assert!(s1.starts_with(&format!("#artifact_version={ARTIFACT_VERSION}\n")));
        assert!(s1.contains(&format!("#prng_id={PRNG_ID}\n")));
        assert!(s1.contains("#config.n=8\n"));
        assert!(s1.contains("\"x,y\""), "csv quoting applies to rows");
        assert!(s1.ends_with("#summary ok=true\n"));
    }
}
