//! Distinguishing-advantage estimation for the odd-cycle distinguisher.

use anyhow::Result;
use rayon::prelude::*;

use crate::config::Config;
use crate::report::{Report, SuiteResult};
use rejsamp_core::distinguish::{
    advantage_trial, binomial_half_width, default_repetitions, Verdict,
};
use rejsamp_core::graph::GraphFamily;
use rejsamp_core::rng::derive_seed;

/// Estimate the advantage `Pr[OutputG1 | two cliques] − Pr[OutputG1 |
/// bipartite]` over fresh hidden partitions. Thresholds: `advantage_min`
/// (default 0.9) on the point estimate, `ci_max` (default 0.05) on each
/// binomial half-width.
pub fn run(config: &Config) -> Result<SuiteResult> {
    let n = config.get_u32("n", 64)?;
    let reps = config.get_u64("reps", default_repetitions(n))?;
    let trials = config.get_u64("trials", 500)?;
    let seed = config.get_u64("seed", 0)?;
    let advantage_min = config.get_f64("advantage_min", 0.9)?;
    let ci_max = config.get_f64("ci_max", 0.05)?;
    if trials == 0 {
        anyhow::bail!("trials must be positive");
    }

    let mut report = Report::new("advantage", config, &["trial", "family", "verdict"]);
    let mut g1_hits = 0u64;
    let mut g2_hits = 0u64;
    for (offset, family) in
        [(0, GraphFamily::TwoCliques), (trials, GraphFamily::CompleteBipartite)]
    {
        let verdicts: Vec<Verdict> = (0..trials)
            .into_par_iter()
            .map(|t| advantage_trial(n, family, reps, derive_seed(seed, offset + t)))
            .collect::<Result<_, _>>()?;
        for (t, verdict) in verdicts.iter().enumerate() {
            if *verdict == Verdict::OutputG1 {
                if family == GraphFamily::TwoCliques {
                    g1_hits += 1;
                } else {
                    g2_hits += 1;
                }
            }
            report.push_row(vec![
                t.to_string(),
                family.as_str().to_string(),
                format!("{verdict:?}"),
            ]);
        }
    }
    let p1 = g1_hits as f64 / trials as f64;
    let p2 = g2_hits as f64 / trials as f64;
    let advantage = p1 - p2;
    let hw1 = binomial_half_width(p1, trials);
    let hw2 = binomial_half_width(p2, trials);
    let passed = advantage >= advantage_min && hw1 <= ci_max && hw2 <= ci_max;
    report.push_summary("p_output_g1_given_g1", format!("{p1:.6}"));
    report.push_summary("p_output_g1_given_g2", format!("{p2:.6}"));
    report.push_summary("advantage", format!("{advantage:.6}"));
    report.push_summary("half_width_g1", format!("{hw1:.6}"));
    report.push_summary("half_width_g2", format!("{hw2:.6}"));
    report.push_summary("passed", passed);
    Ok(SuiteResult { report, passed })
}
