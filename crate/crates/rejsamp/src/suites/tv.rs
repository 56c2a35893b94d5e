//! Total-variation equivalence suites: the answer law produced by each
//! reduction through the oracle, against direct evaluation of a fresh hard
//! function drawn from the matching conditional distribution.
//!
//! Conditioning per run follows the laws being compared: the junta suite
//! fixes the half-set `M`, hidden side `A` and family, redrawing only the
//! subfunction randomness; the unate suites fix `M`, `m1`, `m2`, the term
//! stream and family, redrawing the hidden side and gadget randomness.

use anyhow::{bail, Result};

use crate::config::Config;
use crate::report::{Report, SuiteResult};
use rejsamp_core::boolfn::Bits;
use rejsamp_core::distance::{tv_distance_empirical, TvEstimate};
use rejsamp_core::graph::{build_graph, GraphFamily, Partition};
use rejsamp_core::junta::JuntaInstance;
use rejsamp_core::oracle::OracleSession;
use rejsamp_core::reduce::{
    group_queries_junta, group_queries_unate, run_unate_adaptive_reduction, simulate_junta_answers,
    simulate_unate_answers, AdaptiveStep, QueryBatch, UnateReductionContext,
};
use rejsamp_core::rng::{derive_seed, CounterRng};
use rejsamp_core::unate::UnateInstance;

const FAMILIES: [GraphFamily; 2] = [GraphFamily::TwoCliques, GraphFamily::CompleteBipartite];

fn pack_bits(bits: &[bool]) -> u64 {
    bits.iter().fold(0u64, |acc, &b| (acc << 1) | u64::from(b))
}

fn random_queries(n: usize, count: usize, seed: u64) -> Vec<Bits> {
    let mut rng = CounterRng::new(seed);
    (0..count)
        .map(|_| {
            let mut z = Bits::zeros(n);
            for j in 1..=n {
                z.set(j, rng.next_bit());
            }
            z
        })
        .collect()
}

struct TvParams {
    n_fn: u32,
    runs: u64,
    batch: usize,
    bootstrap: u32,
    seed: u64,
    tv_max: f64,
}

fn read_params(config: &Config, default_batch: usize, default_tv: f64) -> Result<TvParams> {
    let params = TvParams {
        n_fn: config.get_u32("n", 16)?,
        runs: config.get_u64("runs", 100_000)?,
        batch: config.get_usize("batch", default_batch)?,
        bootstrap: config.get_u32("bootstrap", 50)?,
        seed: config.get_u64("seed", 0)?,
        tv_max: config.get_f64("tv_max", default_tv)?,
    };
    if params.batch == 0 || params.batch > 16 {
        bail!("batch size must be in 1..=16 (outcomes are tabulated exhaustively)");
    }
    Ok(params)
}

fn finish(
    suite: &str,
    config: &Config,
    params: &TvParams,
    estimates: [TvEstimate; 2],
) -> SuiteResult {
    let mut report = Report::new(suite, config, &["family", "tv", "half_width", "samples"]);
    let mut passed = true;
    for (family, est) in FAMILIES.iter().zip(estimates) {
        passed &= est.estimate <= params.tv_max;
        report.push_row(vec![
            family.as_str().to_string(),
            format!("{:.6}", est.estimate),
            format!("{:.6}", est.half_width),
            est.samples.to_string(),
        ]);
    }
    report.push_summary("tv_max", params.tv_max);
    report.push_summary("passed", passed);
    SuiteResult { report, passed }
}

/// Junta reduction answer law vs direct evaluation, per family.
pub fn run_junta(config: &Config) -> Result<SuiteResult> {
    let params = read_params(config, 6, 0.02)?;
    let mut estimates = Vec::new();
    for (fam_idx, family) in FAMILIES.into_iter().enumerate() {
        let fam_seed = derive_seed(params.seed, fam_idx as u64);
        let master = JuntaInstance::sample(params.n_fn, family, derive_seed(fam_seed, 1))?;
        let queries =
            random_queries(params.n_fn as usize, params.batch, derive_seed(fam_seed, 2));
        let batch = QueryBatch::new(queries.clone())?;
        let groups = group_queries_junta(&batch, master.m_set())?;
        let graph = master.graph();
        let sim = |i: u64| {
            let s = derive_seed(derive_seed(fam_seed, 3), i);
            let mut session =
                OracleSession::new(graph, derive_seed(s, 1)).expect("valid session");
            let answers = simulate_junta_answers(&batch, &groups, &mut session, derive_seed(s, 2))
                .expect("simulation over a matching graph");
            pack_bits(&answers.bits)
        };
        let direct = |i: u64| {
            let s = derive_seed(derive_seed(fam_seed, 4), i);
            // Same (M, A, family); fresh subfunction randomness.
            let f = JuntaInstance::with_sets(
                params.n_fn,
                master.m_set().to_vec(),
                master.a_set().to_vec(),
                family,
                s,
            )
            .expect("sets validated by the master instance");
            pack_bits(&queries.iter().map(|z| f.eval(z)).collect::<Vec<_>>())
        };
        estimates.push(tv_distance_empirical(
            sim,
            direct,
            1 << params.batch,
            params.runs,
            params.bootstrap,
            derive_seed(fam_seed, 5),
        )?);
    }
    Ok(finish("tv-junta", config, &params, [estimates[0], estimates[1]]))
}

/// Shared unate-suite scaffolding: a fixed visible structure per family,
/// a fresh hidden side and gadget stream per run on both sides.
struct UnateTvSetup {
    ctx: UnateReductionContext,
    template: UnateInstance,
    queries: Vec<Bits>,
    fam_seed: u64,
}

fn unate_setup(params: &TvParams, family: GraphFamily, fam_idx: usize) -> Result<UnateTvSetup> {
    let fam_seed = derive_seed(params.seed, fam_idx as u64);
    let template = UnateInstance::sample(params.n_fn, family, derive_seed(fam_seed, 1))?;
    let ctx = UnateReductionContext::from_instance(&template);
    let queries = random_queries(params.n_fn as usize, params.batch, derive_seed(fam_seed, 2));
    Ok(UnateTvSetup { ctx, template, queries, fam_seed })
}

fn fresh_hidden_graph(
    setup: &UnateTvSetup,
    family: GraphFamily,
    run_seed: u64,
) -> (Partition, rejsamp_core::graph::Graph) {
    let n_graph = setup.ctx.n_graph();
    let universe: Vec<u32> = (1..=n_graph).collect();
    let side = CounterRng::from_chain(run_seed, &[0x74_41])
        .subset(&universe, n_graph as usize / 2);
    let partition = Partition::new(n_graph, side).expect("half-sized side");
    let graph = build_graph(&partition, family);
    (partition, graph)
}

fn fresh_direct_instance(
    setup: &UnateTvSetup,
    family: GraphFamily,
    run_seed: u64,
) -> UnateInstance {
    let m_bar = setup.ctx.m_bar();
    let a_fn = CounterRng::from_chain(run_seed, &[0x74_41]).subset(m_bar, m_bar.len() / 2);
    UnateInstance::with_sets(
        setup.ctx.n_fn(),
        setup.ctx.m_set().to_vec(),
        setup.ctx.m1(),
        setup.ctx.m2(),
        a_fn,
        family,
        setup.template.term_size(),
        derive_seed(run_seed, 9),
    )
    .expect("sets validated by the template instance")
    .with_term_seed(setup.template.term_seed())
}

/// Adaptive unate reduction answer law vs direct evaluation, per family.
pub fn run_unate_adaptive(config: &Config) -> Result<SuiteResult> {
    let params = read_params(config, 4, 0.02)?;
    let mut estimates = Vec::new();
    for (fam_idx, family) in FAMILIES.into_iter().enumerate() {
        let setup = unate_setup(&params, family, fam_idx)?;
        let q = params.batch;
        let sim = |i: u64| {
            let s = derive_seed(derive_seed(setup.fam_seed, 3), i);
            let (_, graph) = fresh_hidden_graph(&setup, family, s);
            let mut session =
                OracleSession::new(&graph, derive_seed(s, 1)).expect("valid session");
            let mut next = 0usize;
            let tester = |_answers: &[bool]| {
                if next == q {
                    AdaptiveStep::Decide(false)
                } else {
                    let z = setup.queries[next].clone();
                    next += 1;
                    AdaptiveStep::Query(z)
                }
            };
            let out = run_unate_adaptive_reduction(
                tester,
                q,
                &setup.ctx,
                &mut session,
                derive_seed(s, 2),
            )
            .expect("reduction over a matching graph");
            pack_bits(&out.answers.bits)
        };
        let direct = |i: u64| {
            let s = derive_seed(derive_seed(setup.fam_seed, 4), i);
            let f = fresh_direct_instance(&setup, family, s);
            pack_bits(&setup.queries.iter().map(|z| f.eval(z)).collect::<Vec<_>>())
        };
        estimates.push(tv_distance_empirical(
            sim,
            direct,
            1 << params.batch,
            params.runs,
            params.bootstrap,
            derive_seed(setup.fam_seed, 5),
        )?);
    }
    Ok(finish("tv-unate-adaptive", config, &params, [estimates[0], estimates[1]]))
}

/// Non-adaptive unate reduction answer law vs direct evaluation, per
/// family. The simulation is approximate by design, hence the looser
/// default threshold.
pub fn run_unate_nonadaptive(config: &Config) -> Result<SuiteResult> {
    let params = read_params(config, 4, 0.05)?;
    let mut estimates = Vec::new();
    for (fam_idx, family) in FAMILIES.into_iter().enumerate() {
        let setup = unate_setup(&params, family, fam_idx)?;
        let batch = QueryBatch::new(setup.queries.clone())?;
        let groups = group_queries_unate(&batch, &setup.ctx)?;
        let sim = |i: u64| {
            let s = derive_seed(derive_seed(setup.fam_seed, 3), i);
            let (_, graph) = fresh_hidden_graph(&setup, family, s);
            let mut session =
                OracleSession::new(&graph, derive_seed(s, 1)).expect("valid session");
            let answers =
                simulate_unate_answers(&batch, &groups, &setup.ctx, &mut session, derive_seed(s, 2))
                    .expect("simulation over a matching graph");
            pack_bits(&answers.bits)
        };
        let direct = |i: u64| {
            let s = derive_seed(derive_seed(setup.fam_seed, 4), i);
            let f = fresh_direct_instance(&setup, family, s);
            pack_bits(&setup.queries.iter().map(|z| f.eval(z)).collect::<Vec<_>>())
        };
        estimates.push(tv_distance_empirical(
            sim,
            direct,
            1 << params.batch,
            params.runs,
            params.bootstrap,
            derive_seed(setup.fam_seed, 5),
        )?);
    }
    Ok(finish("tv-unate-nonadaptive", config, &params, [estimates[0], estimates[1]]))
}
