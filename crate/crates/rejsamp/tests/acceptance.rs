//! Acceptance suite: one test per acceptance criterion, each printing a
//! single PASS/FAIL line (run with `--nocapture` to see the PASS lines).
//! Every tolerance, trial count, and runtime budget is pinned in code.

use std::time::{Duration, Instant};

use rejsamp::config::Config;
use rejsamp::suites;
use rejsamp_core::boolfn::{dist_between, Bits, TruthTable};
use rejsamp_core::distance::{
    dist_to_kjunta_exact, dist_to_monotone_enumerated, dist_to_monotone_exact, dist_to_unate_exact,
};
use rejsamp_core::distinguish::{advantage_trial, default_repetitions, Verdict};
use rejsamp_core::frac::ExactFraction;
use rejsamp_core::graph::{
    build_graph, chi_junta, chi_junta_family, chi_unate, chi_unate_family, sample_partition,
    GraphFamily,
};
use rejsamp_core::junta::{pad_dummy, pad_parity, JuntaInstance};
use rejsamp_core::oracle::OracleSession;
use rejsamp_core::reduce::{
    run_junta_reduction, run_unate_adaptive_reduction, run_unate_nonadaptive_reduction,
    AdaptiveStep, QueryBatch, UnateReductionContext,
};
use rejsamp_core::rng::{derive_seed, CounterRng};

const SEED: u64 = 0x5eed_2026;

fn report(name: &str, passed: bool, budget: Duration, elapsed: Duration, detail: &str) {
    let verdict = if passed && elapsed <= budget { "PASS" } else { "FAIL" };
    println!("acceptance {name}: {verdict} ({detail}; {elapsed:.2?} of {budget:?} budget)");
    assert!(passed, "{name}: {detail}");
    assert!(elapsed <= budget, "{name}: over budget ({elapsed:.2?} > {budget:?})");
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

/// 01 — Graph scores: Gray-code brute force equals the closed forms for
/// every even vertex count 4..=24, and the literal values 1/2 and 3/4
/// hold at every multiple of four.
#[test]
fn acceptance_01_graph_score_exactness() {
    let t0 = Instant::now();
    let mut ok = true;
    let mut detail = String::from("brute == closed for even n in 4..=24");
    for n in (4..=24).step_by(2) {
        let partition = sample_partition(n, derive_seed(SEED, n as u64)).unwrap();
        for family in [GraphFamily::TwoCliques, GraphFamily::CompleteBipartite] {
            let graph = build_graph(&partition, family);
            let junta_ok = chi_junta(&graph, n / 2).unwrap() == chi_junta_family(family, n).unwrap();
            let unate_ok = chi_unate(&graph).unwrap() == chi_unate_family(family, n).unwrap();
            if !(junta_ok && unate_ok) {
                ok = false;
                detail = format!("mismatch at n={n} family={}", family.as_str());
            }
        }
        if n % 4 == 0 {
            let g1 = chi_junta_family(GraphFamily::TwoCliques, n).unwrap();
            let g2 = chi_junta_family(GraphFamily::CompleteBipartite, n).unwrap();
            if g1 != ExactFraction::new(1, 2) || g2 != ExactFraction::new(3, 4) {
                ok = false;
                detail = format!("literal values off at n={n}: {g1}, {g2}");
            }
        }
    }
    report("01 graph-score exactness", ok, Duration::from_secs(10), t0.elapsed(), &detail);
}

/// 02 — One-sidedness: 1000 bipartite trials at n=64 yield zero
/// two-cliques verdicts (a bipartite graph has no odd cycle).
#[test]
fn acceptance_02_distinguisher_one_sidedness() {
    let t0 = Instant::now();
    let reps = default_repetitions(64);
    let false_positives = (0..1000u64)
        .filter(|&t| {
            advantage_trial(64, GraphFamily::CompleteBipartite, reps, derive_seed(SEED, t))
                .unwrap()
                == Verdict::OutputG1
        })
        .count();
    report(
        "02 distinguisher one-sidedness",
        false_positives == 0,
        Duration::from_secs(30),
        t0.elapsed(),
        &format!("{false_positives} false two-cliques verdicts in 1000 bipartite trials"),
    );
}

/// 03 — Advantage: n=64, 8·n·log₂n repetitions, 500 trials per family →
/// advantage ≥ 0.9 with both binomial CI half-widths ≤ 0.05.
#[test]
fn acceptance_03_distinguisher_advantage() {
    let t0 = Instant::now();
    let result = suites::run("advantage", &Config::new()).unwrap();
    let detail = format!(
        "advantage={} half_widths=({}, {})",
        result.report.summary_value("advantage").unwrap_or_default(),
        result.report.summary_value("half_width_g1").unwrap_or_default(),
        result.report.summary_value("half_width_g2").unwrap_or_default(),
    );
    report(
        "03 distinguisher advantage",
        result.passed,
        Duration::from_secs(300),
        t0.elapsed(),
        &detail,
    );
}

/// 04 — Exact-distance soundness: the min-cut monotone distance equals
/// the enumeration oracle on all 256 three-variable functions and 1000
/// random four-variable functions; dist-to-unate of x₁⊕x₂ is 1/4.
#[test]
fn acceptance_04_distance_oracle_soundness() {
    let t0 = Instant::now();
    let mut ok = true;
    let mut detail = String::from("min-cut == enumeration on 256 + 1000 functions; xor at 1/4");
    for bits in 0..256u16 {
        let f = TruthTable::from_fn(3, |x| {
            let idx = ((x.get(1) as u16) << 2) | ((x.get(2) as u16) << 1) | x.get(3) as u16;
            bits >> idx & 1 == 1
        })
        .unwrap();
        if dist_to_monotone_exact(&f).unwrap() != dist_to_monotone_enumerated(&f).unwrap() {
            ok = false;
            detail = format!("n=3 mismatch on table {bits:#04x}");
        }
    }
    let mut rng = CounterRng::new(derive_seed(SEED, 4));
    for trial in 0..1000 {
        let word = rng.next_u64() as u16;
        let f = TruthTable::from_hex(4, &format!("{word:04x}")).unwrap();
        if dist_to_monotone_exact(&f).unwrap() != dist_to_monotone_enumerated(&f).unwrap() {
            ok = false;
            detail = format!("n=4 mismatch on trial {trial} table {word:#06x}");
        }
    }
    let xor = TruthTable::from_fn(2, |x| x.get(1) ^ x.get(2)).unwrap();
    if dist_to_unate_exact(&xor).unwrap() != ExactFraction::new(1, 4) {
        ok = false;
        detail = "dist-to-unate of x1 xor x2 is not 1/4".to_string();
    }
    report("04 distance-oracle soundness", ok, Duration::from_secs(120), t0.elapsed(), &detail);
}

/// 05 — Witness identity: at n=8 over 50 seeds, the truth-table distance
/// between an instance and its repaired witness equals the witness's own
/// index-counting formula exactly.
#[test]
fn acceptance_05_junta_witness_identity() {
    let t0 = Instant::now();
    let mut ok = true;
    let mut detail = String::from("table distance == index formula over 50 seeds");
    for s in 0..50u64 {
        let seed = derive_seed(derive_seed(SEED, 5), s);
        let family =
            if s % 2 == 0 { GraphFamily::TwoCliques } else { GraphFamily::CompleteBipartite };
        let inst = JuntaInstance::sample(8, family, seed).unwrap();
        let m_bar = inst.m_bar().to_vec();
        // The repair needs |S| ≥ n/4; draw a valid size uniformly.
        let min_size = 2usize;
        let span = m_bar.len() as u64 - min_size as u64 + 1;
        let size = min_size + CounterRng::new(derive_seed(seed, 1)).below(span) as usize;
        let s_set = CounterRng::new(derive_seed(seed, 2)).subset(&m_bar, size);
        let witness = inst.witness(&s_set).unwrap();
        let f = inst.truth_table().unwrap();
        let g = TruthTable::from_fn(8, |x| witness.eval(x)).unwrap();
        if dist_between(&f, &g).unwrap() != witness.expected_distance().unwrap() {
            ok = false;
            detail = format!("identity broke at seed index {s}");
        }
    }
    report("05 junta witness identity", ok, Duration::from_secs(60), t0.elapsed(), &detail);
}

/// 06 — Distance trend: far-family median strictly above close-family
/// median for k-junta distance at n=8 and n=12 (50 seeds, k=3n/4) and
/// for unate distance at n=16 (30 seeds).
#[test]
fn acceptance_06_distance_trend() {
    let t0 = Instant::now();
    let mut ok = true;
    let mut details = Vec::new();
    for (mode, n, seeds) in [("junta", 8u32, 50u64), ("junta", 12, 50), ("unate", 16, 30)] {
        let mut cfg = Config::new();
        cfg.set("mode", mode);
        cfg.set("n", &n.to_string());
        cfg.set("seeds", &seeds.to_string());
        cfg.set("seed", &derive_seed(SEED, 6).to_string());
        let result = suites::run("distance-trend", &cfg).unwrap();
        ok &= result.passed;
        details.push(format!(
            "{mode} n={n}: close={} far={}",
            result.report.summary_value("median_close").unwrap_or_default(),
            result.report.summary_value("median_far").unwrap_or_default(),
        ));
    }
    report(
        "06 distance trend",
        ok,
        Duration::from_secs(600),
        t0.elapsed(),
        &details.join("; "),
    );
}

/// 07 — Reduction fidelity: empirical total-variation distance between
/// each reduction's answer law and direct evaluation, 10⁵ runs per
/// family — exact simulations ≤ 0.02, approximate non-adaptive ≤ 0.05.
#[test]
fn acceptance_07_reduction_fidelity() {
    let t0 = Instant::now();
    let mut ok = true;
    let mut details = Vec::new();
    for name in ["tv-junta", "tv-unate-adaptive", "tv-unate-nonadaptive"] {
        // This batch seed puts a 3-parity indexed group in both families'
        // unate batches, so the oracle-backed answer paths (including the
        // approximate Bernoulli cases) are actually exercised; most seeds
        // classify every query into a deterministic star region.
        let mut cfg = Config::new();
        cfg.set("seed", "1324");
        let result = suites::run(name, &cfg).unwrap();
        ok &= result.passed;
        let tvs: Vec<String> = result.report.rows().iter().map(|r| r[1].clone()).collect();
        details.push(format!("{name}: tv={}", tvs.join("/")));
    }
    report(
        "07 reduction fidelity",
        ok,
        Duration::from_secs(900),
        t0.elapsed(),
        &details.join("; "),
    );
}

/// 08 — Cost laws: the adaptive reduction bills exactly q·n (graph
/// vertices); the junta reduction stays within 100·q·log₂n at n=64 in
/// ≥99% of seeds; the non-adaptive unate reduction stays within
/// q·√n·log₂n at n=256 in ≥95% of seeds.
#[test]
fn acceptance_08_cost_laws() {
    let t0 = Instant::now();
    let mut ok = true;
    let mut details = Vec::new();

    // Adaptive: exactly q·n for any tester that issues q queries.
    for (q, seed_idx) in [(0usize, 0u64), (1, 1), (7, 2), (16, 3)] {
        let seed = derive_seed(derive_seed(SEED, 80), seed_idx);
        let ctx = UnateReductionContext::sample(128, derive_seed(seed, 1)).unwrap();
        let partition = sample_partition(64, derive_seed(seed, 2)).unwrap();
        let graph = build_graph(&partition, GraphFamily::TwoCliques);
        let mut session = OracleSession::new(&graph, derive_seed(seed, 3)).unwrap();
        let queries = random_queries(128, q, derive_seed(seed, 4));
        let mut next = 0usize;
        let outcome = run_unate_adaptive_reduction(
            |_| {
                if next == q {
                    AdaptiveStep::Decide(false)
                } else {
                    next += 1;
                    AdaptiveStep::Query(queries[next - 1].clone())
                }
            },
            q.max(1),
            &ctx,
            &mut session,
            derive_seed(seed, 5),
        )
        .unwrap();
        if outcome.cost != q as u64 * 64 {
            ok = false;
            details.push(format!("adaptive cost {} != {}·64", outcome.cost, q));
        }
    }
    if ok {
        details.push("adaptive cost == q·n".to_string());
    }

    // Junta at n=64 (128 function variables), q=32: ≤ 100·q·log₂n.
    let q = 32usize;
    let junta_bound = 100 * q as u64 * 6;
    let junta_within = (0..100u64)
        .filter(|&s| {
            let seed = derive_seed(derive_seed(SEED, 81), s);
            let inst = JuntaInstance::sample(128, GraphFamily::TwoCliques, seed).unwrap();
            let batch = QueryBatch::new(random_queries(128, q, derive_seed(seed, 1))).unwrap();
            let mut session = OracleSession::new(inst.graph(), derive_seed(seed, 2)).unwrap();
            let outcome =
                run_junta_reduction(|_| true, &batch, inst.m_set(), &mut session, derive_seed(seed, 3))
                    .unwrap();
            outcome.cost <= junta_bound
        })
        .count();
    details.push(format!("junta within 100·q·log₂n: {junta_within}/100"));
    ok &= junta_within >= 99;

    // Non-adaptive unate at n=256 (512 function variables), q=50:
    // ≤ q·√n·log₂n. Term size 16 keeps the term stream tractable; the
    // cost law does not depend on the term count.
    let q = 50usize;
    let unate_bound = 50u64 * 16 * 8;
    let unate_within = (0..200u64)
        .filter(|&s| {
            let seed = derive_seed(derive_seed(SEED, 82), s);
            let ctx =
                UnateReductionContext::sample_with_term_size(512, 16, derive_seed(seed, 1)).unwrap();
            let partition = sample_partition(256, derive_seed(seed, 2)).unwrap();
            let graph = build_graph(&partition, GraphFamily::TwoCliques);
            let batch = QueryBatch::new(random_queries(512, q, derive_seed(seed, 3))).unwrap();
            let mut session = OracleSession::new(&graph, derive_seed(seed, 4)).unwrap();
            let outcome =
                run_unate_nonadaptive_reduction(|_| true, &batch, &ctx, &mut session, derive_seed(seed, 5))
                    .unwrap();
            outcome.cost <= unate_bound
        })
        .count();
    details.push(format!("unate non-adaptive within q·√n·log₂n: {unate_within}/200"));
    ok &= unate_within >= 190;

    report("08 cost laws", ok, Duration::from_secs(300), t0.elapsed(), &details.join("; "));
}

/// 09 — Event frequencies: at n=1024 under the two-cliques family with
/// cost budget ⌊n²/⌈log₂n⌉⁶⌋, the tree, sparse-response, and balance
/// events each hold in ≥90% of 200 trials.
#[test]
fn acceptance_09_event_frequencies() {
    let t0 = Instant::now();
    let mut cfg = Config::new();
    cfg.set("seed", &derive_seed(SEED, 9).to_string());
    let result = suites::run("event-frequency", &cfg).unwrap();
    let detail = format!(
        "freq e_t={} e_f={} e_b={}",
        result.report.summary_value("freq_e_t").unwrap_or_default(),
        result.report.summary_value("freq_e_f").unwrap_or_default(),
        result.report.summary_value("freq_e_b").unwrap_or_default(),
    );
    report("09 event frequencies", result.passed, Duration::from_secs(600), t0.elapsed(), &detail);
}

/// 10 — Padding exactness: for every function on at most 4 variables and
/// every k with dist-to-k-junta strictly below 1/2, the parity pad
/// preserves the distance at k+1 and the dummy pad preserves it at k.
#[test]
fn acceptance_10_padding_exactness() {
    let t0 = Instant::now();
    let mut ok = true;
    let mut detail = String::from("both pads preserve k-junta distance on all tables, n ≤ 4");
    let half = ExactFraction::new(1, 2);
    for n in 1..=4usize {
        for bits in 0..1u32 << (1 << n) {
            let f = TruthTable::from_fn(n, |x| {
                let mut idx = 0usize;
                for j in 1..=n {
                    idx = (idx << 1) | x.get(j) as usize;
                }
                bits >> idx & 1 == 1
            })
            .unwrap();
            let parity = pad_parity(&f, 1).unwrap();
            let dummy = pad_dummy(&f, 1).unwrap();
            for k in 0..=n {
                let d = dist_to_kjunta_exact(&f, k).unwrap();
                if d >= half {
                    continue;
                }
                if dist_to_kjunta_exact(&parity, k + 1).unwrap() != d
                    || dist_to_kjunta_exact(&dummy, k).unwrap() != d
                {
                    ok = false;
                    detail = format!("pad broke distance at n={n} table={bits:#x} k={k}");
                }
            }
        }
    }
    report("10 padding exactness", ok, Duration::from_secs(300), t0.elapsed(), &detail);
}
