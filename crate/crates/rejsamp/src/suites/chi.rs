//! Graph-score table: brute-force scores against the closed forms.

use anyhow::Result;

use crate::config::Config;
use crate::report::{Report, SuiteResult};
use rejsamp_core::graph::{
    build_graph, chi_junta, chi_junta_family, chi_unate, chi_unate_family, sample_partition,
    GraphFamily,
};

/// Tabulate both graph scores per (n, family), comparing the exhaustive
/// sweep against the closed forms. Passes iff every pair matches exactly.
pub fn run(config: &Config) -> Result<SuiteResult> {
    let ns = config.get_u32_list("ns", &[8, 12, 16, 20])?;
    let seed = config.get_u64("seed", 0)?;
    let mut report = Report::new(
        "chi-table",
        config,
        &["n", "family", "chi_junta", "chi_unate", "brute_matches"],
    );
    let mut passed = true;
    for &n in &ns {
        let partition = sample_partition(n, seed)?;
        for family in [GraphFamily::TwoCliques, GraphFamily::CompleteBipartite] {
            let graph = build_graph(&partition, family);
            let junta_closed = chi_junta_family(family, n)?;
            let unate_closed = chi_unate_family(family, n)?;
            let junta_brute = chi_junta(&graph, n / 2)?;
            let unate_brute = chi_unate(&graph)?;
            let matches = junta_brute == junta_closed && unate_brute == unate_closed;
            passed &= matches;
            report.push_row(vec![
                n.to_string(),
                family.as_str().to_string(),
                junta_closed.to_string(),
                unate_closed.to_string(),
                matches.to_string(),
            ]);
        }
    }
    report.push_summary("passed", passed);
    Ok(SuiteResult { report, passed })
}
