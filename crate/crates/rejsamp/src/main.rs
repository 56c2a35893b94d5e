//! Command-line interface: direct operations (distinguish, distance,
//! reduce, analyze) and the configuration-driven experiment suites.
//!
//! Exit codes: 0 = success / all thresholds met, 1 = a suite threshold
//! failed, 2 = usage or input error.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use rejsamp::config::{parse_family, Config};
use rejsamp::formats;
use rejsamp::report::Report;
use rejsamp::suites;
use rejsamp_core::analytics::event_report;
use rejsamp_core::boolfn::TruthTable;
use rejsamp_core::distance::{
    dist_to_kjunta_exact, dist_to_monotone_exact, dist_to_unate_exact,
};
use rejsamp_core::distinguish::{default_repetitions, run_odd_cycle_distinguisher};
use rejsamp_core::graph::{build_graph, sample_partition, GraphFamily};
use rejsamp_core::junta::JuntaInstance;
use rejsamp_core::oracle::OracleSession;
use rejsamp_core::reduce::{
    run_junta_reduction, run_unate_adaptive_reduction, run_unate_nonadaptive_reduction,
    AdaptiveStep, QueryBatch, UnateReductionContext,
};
use rejsamp_core::rng::derive_seed;
use rejsamp_core::unate::UnateInstance;

#[derive(Parser)]
#[command(name = "rejsamp", about = "Rejection-sampling graph-testing laboratory")]
struct Cli {
    /// Worker threads for parallel suites (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SuiteArgs {
    /// Flat key=value config file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Inline overrides, e.g. `--set n=64 --set trials=100`.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Report destination (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the odd-cycle distinguisher over fresh hidden partitions.
    Distinguish {
        #[arg(long)]
        n: u32,
        /// g1, g2, or auto (alternate per trial).
        #[arg(long, default_value = "auto")]
        family: String,
        #[arg(long)]
        reps: Option<u64>,
        #[arg(long, default_value_t = 10)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact distance computations on truth-table hex dumps.
    Distance {
        /// between | junta | monotone | unate
        #[arg(long)]
        op: String,
        #[arg(long)]
        table: PathBuf,
        #[arg(long)]
        table2: Option<PathBuf>,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Run a reduction against freshly sampled hidden instances.
    Reduce {
        /// junta | unate-adaptive | unate-nonadaptive
        #[arg(long)]
        kind: String,
        /// Query batch file: one bitstring per line.
        #[arg(long)]
        batch: PathBuf,
        #[arg(long)]
        family: String,
        /// Graph vertex count (the functions use twice as many variables).
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        trials: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recompute the diagnostic events of a recorded transcript.
    Analyze {
        #[arg(long)]
        transcript: PathBuf,
        #[arg(long)]
        partition: PathBuf,
        #[arg(long)]
        family: String,
        /// Balance-event threshold constant.
        #[arg(long, default_value_t = 1)]
        balance_c: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Distinguishing-advantage estimation suite.
    Advantage(SuiteArgs),
    /// TV equivalence of the junta reduction.
    TvJunta(SuiteArgs),
    /// TV equivalence of the adaptive unate reduction.
    TvUnateAdaptive(SuiteArgs),
    /// TV equivalence of the non-adaptive unate reduction.
    TvUnateNonadaptive(SuiteArgs),
    /// Per-family distance-median comparison.
    DistanceTrend(SuiteArgs),
    /// Diagnostic-event frequency sweep.
    EventFrequency(SuiteArgs),
    /// Graph-score table, brute force vs closed forms.
    ChiTable(SuiteArgs),
}

fn emit(report: &Report, out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(path) => report.write_to(path),
        None => {
            print!("{}", report.to_csv_string());
            Ok(())
        }
    }
}

fn run_suite(name: &str, args: &SuiteArgs) -> Result<bool> {
    let mut config = match &args.config {
        Some(path) => Config::from_file(path)?,
        None => Config::new(),
    };
    config.apply_overrides(&args.set)?;
    let result = suites::run(name, &config)?;
    emit(&result.report, args.out.as_ref())?;
    Ok(result.passed)
}

fn cmd_distinguish(
    n: u32,
    family: &str,
    reps: Option<u64>,
    trials: u64,
    seed: u64,
    out: Option<&PathBuf>,
) -> Result<()> {
    let reps = reps.unwrap_or_else(|| default_repetitions(n));
    let mut config = Config::new();
    config.set("n", &n.to_string());
    config.set("family", family);
    config.set("reps", &reps.to_string());
    config.set("trials", &trials.to_string());
    config.set("seed", &seed.to_string());
    let mut report = Report::new(
        "distinguish",
        &config,
        &["trial", "family", "verdict", "cost", "odd_cycle_found"],
    );
    for t in 0..trials {
        let fam = match family {
            "auto" => {
                if t % 2 == 0 {
                    GraphFamily::TwoCliques
                } else {
                    GraphFamily::CompleteBipartite
                }
            }
            other => parse_family(other)?,
        };
        let trial_seed = derive_seed(seed, t);
        let partition = sample_partition(n, derive_seed(trial_seed, 1))?;
        let graph = build_graph(&partition, fam);
        let mut session = OracleSession::new(&graph, derive_seed(trial_seed, 2))?;
        let (verdict, cycle) = run_odd_cycle_distinguisher(&mut session, reps)?;
        report.push_row(vec![
            t.to_string(),
            fam.as_str().to_string(),
            format!("{verdict:?}"),
            session.transcript().total_cost().to_string(),
            cycle.is_some().to_string(),
        ]);
    }
    emit(&report, out)
}

fn cmd_distance(op: &str, table: &PathBuf, table2: Option<&PathBuf>, k: Option<usize>) -> Result<()> {
    let read = |path: &PathBuf| -> Result<TruthTable> {
        formats::read_table(
            &std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?,
        )
    };
    let f = read(table)?;
    let d = match op {
        "between" => {
            let g = read(table2.context("--table2 required for op=between")?)?;
            rejsamp_core::boolfn::dist_between(&f, &g)?
        }
        "junta" => dist_to_kjunta_exact(&f, k.context("--k required for op=junta")?)?,
        "monotone" => dist_to_monotone_exact(&f)?,
        "unate" => dist_to_unate_exact(&f)?,
        other => bail!("unknown op '{other}' (expected between|junta|monotone|unate)"),
    };
    println!("{d}");
    Ok(())
}

fn cmd_reduce(
    kind: &str,
    batch_path: &PathBuf,
    family: &str,
    n: u32,
    seed: u64,
    trials: u64,
    out: Option<&PathBuf>,
) -> Result<()> {
    let family = parse_family(family)?;
    let queries = formats::read_batch(
        &std::fs::read_to_string(batch_path)
            .with_context(|| format!("reading {}", batch_path.display()))?,
    )?;
    let n_fn = 2 * n;
    if queries[0].len() != n_fn as usize {
        bail!("batch queries have {} variables, expected {n_fn} (= 2n)", queries[0].len());
    }
    let batch = QueryBatch::new(queries.clone())?;
    let mut config = Config::new();
    config.set("kind", kind);
    config.set("family", family.as_str());
    config.set("n", &n.to_string());
    config.set("seed", &seed.to_string());
    config.set("trials", &trials.to_string());
    let mut report =
        Report::new("reduce", &config, &["trial", "kind", "family", "verdict", "cost", "answers"]);
    for t in 0..trials {
        let trial_seed = derive_seed(seed, t);
        let (verdict, cost, bits) = match kind {
            "junta" => {
                let inst = JuntaInstance::sample(n_fn, family, derive_seed(trial_seed, 1))?;
                let mut session =
                    OracleSession::new(inst.graph(), derive_seed(trial_seed, 2))?;
                let outcome = run_junta_reduction(
                    |_| true,
                    &batch,
                    inst.m_set(),
                    &mut session,
                    derive_seed(trial_seed, 3),
                )?;
                (outcome.verdict, outcome.cost, outcome.answers.bits)
            }
            "unate-nonadaptive" => {
                let inst = UnateInstance::sample(n_fn, family, derive_seed(trial_seed, 1))?;
                let ctx = UnateReductionContext::from_instance(&inst);
                let mut session =
                    OracleSession::new(inst.graph(), derive_seed(trial_seed, 2))?;
                let outcome = run_unate_nonadaptive_reduction(
                    |_| true,
                    &batch,
                    &ctx,
                    &mut session,
                    derive_seed(trial_seed, 3),
                )?;
                (outcome.verdict, outcome.cost, outcome.answers.bits)
            }
            "unate-adaptive" => {
                let inst = UnateInstance::sample(n_fn, family, derive_seed(trial_seed, 1))?;
                let ctx = UnateReductionContext::from_instance(&inst);
                let mut session =
                    OracleSession::new(inst.graph(), derive_seed(trial_seed, 2))?;
                let mut next = 0usize;
                let outcome = run_unate_adaptive_reduction(
                    |_answers: &[bool]| {
                        if next == queries.len() {
                            AdaptiveStep::Decide(true)
                        } else {
                            let z = queries[next].clone();
                            next += 1;
                            AdaptiveStep::Query(z)
                        }
                    },
                    queries.len(),
                    &ctx,
                    &mut session,
                    derive_seed(trial_seed, 3),
                )?;
                (outcome.verdict, outcome.cost, outcome.answers.bits)
            }
            other => bail!("unknown kind '{other}'"),
        };
        let answers: String = bits.iter().map(|&b| if b { '1' } else { '0' }).collect();
        report.push_row(vec![
            t.to_string(),
            kind.to_string(),
            family.as_str().to_string(),
            format!("{verdict:?}"),
            cost.to_string(),
            answers,
        ]);
    }
    emit(&report, out)
}

fn cmd_analyze(
    transcript_path: &PathBuf,
    partition_path: &PathBuf,
    family: &str,
    balance_c: u64,
    out: Option<&PathBuf>,
) -> Result<()> {
    let family = parse_family(family)?;
    let transcript = formats::read_transcript(
        &std::fs::read_to_string(transcript_path)
            .with_context(|| format!("reading {}", transcript_path.display()))?,
    )?;
    let partition = formats::read_partition(
        &std::fs::read_to_string(partition_path)
            .with_context(|| format!("reading {}", partition_path.display()))?,
    )?;
    let events = event_report(&transcript, &partition, family, balance_c);
    let mut config = Config::new();
    config.set("family", family.as_str());
    config.set("balance_c", &balance_c.to_string());
    let mut report = Report::new(
        "analyze",
        &config,
        &["e_t", "e_f", "e_b", "balance", "consistent", "w", "v", "e_w", "cost"],
    );
    report.push_row(vec![
        events.e_t.to_string(),
        events.e_f.to_string(),
        events.balance.e_b.to_string(),
        events.balance.b.to_string(),
        events.consistent.to_string(),
        events.w.w.to_string(),
        events.w.v.to_string(),
        events.w.e_w.to_string(),
        formats::transcript_cost(&transcript).to_string(),
    ]);
    emit(&report, out)
}

fn dispatch(cli: Cli) -> Result<bool> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .context("configuring worker pool")?;
    }
    match &cli.command {
        Command::Distinguish { n, family, reps, trials, seed, out } => {
            cmd_distinguish(*n, family, *reps, *trials, *seed, out.as_ref())?;
            Ok(true)
        }
        Command::Distance { op, table, table2, k } => {
            cmd_distance(op, table, table2.as_ref(), *k)?;
            Ok(true)
        }
        Command::Reduce { kind, batch, family, n, seed, trials, out } => {
            cmd_reduce(kind, batch, family, *n, *seed, *trials, out.as_ref())?;
            Ok(true)
        }
        Command::Analyze { transcript, partition, family, balance_c, out } => {
            cmd_analyze(transcript, partition, family, *balance_c, out.as_ref())?;
            Ok(true)
        }
        Command::Advantage(args) => run_suite("advantage", args),
        Command::TvJunta(args) => run_suite("tv-junta", args),
        Command::TvUnateAdaptive(args) => run_suite("tv-unate-adaptive", args),
        Command::TvUnateNonadaptive(args) => run_suite("tv-unate-nonadaptive", args),
        Command::DistanceTrend(args) => run_suite("distance-trend", args),
        Command::EventFrequency(args) => run_suite("event-frequency", args),
        Command::ChiTable(args) => run_suite("chi-table", args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(true) => ExitCode::from(0),
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
