//! Odd-cycle distinguisher between the two hard graph families.
//!
//! Repeatedly querying the full vertex set yields uniform edges of the
//! hidden graph; if the observed subgraph contains an odd cycle the graph
//! cannot be bipartite, so it must come from the two-cliques family. The
//! verdict is one-sided: on any bipartite graph the distinguisher can never
//! output the two-cliques verdict.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Result;
use crate::graph::{build_graph, sample_partition, Graph, GraphFamily};
use crate::oracle::{OracleSession, Response, Transcript};
use crate::rng::derive_seed;
use crate::{ceil_log2, Error};

/// Which family the algorithm claims the hidden graph came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Two disjoint half-cliques.
    OutputG1,
    /// Complete bipartite.
    OutputG2,
}

/// Graph whose edges are exactly the edge responses in the transcript,
/// deduplicated, on the same vertex set `[n]`.
pub fn observed_graph(transcript: &Transcript, n: u32) -> Graph {
    let mut edges: Vec<(u32, u32)> = transcript
        .entries
        .iter()
        .filter_map(|e| match e.response {
            Response::Edge(u, v) => Some((u, v)),
            _ => None,
        })
        .collect();
    edges.sort_unstable();
    edges.dedup();
    Graph::new(n, edges).expect("observed edges are valid oracle outputs")
}

/// Find an odd cycle if one exists (BFS two-coloring).
///
/// Returns a vertex sequence `v_0, …, v_{2k}` of odd length in which
/// consecutive vertices are adjacent and the last is adjacent to the first;
/// `None` exactly when the graph is bipartite.
pub fn find_odd_cycle(g: &Graph) -> Option<Vec<u32>> {
    let n = g.n_vertices() as usize;
    // parent[v] = 0 for roots; depth measured from the component root.
    let mut parent = vec![u32::MAX; n + 1];
    let mut depth = vec![0u32; n + 1];
    let mut visited = vec![false; n + 1];
    for root in 1..=n as u32 {
        if visited[root as usize] || g.neighbors(root).is_empty() {
            continue;
        }
        visited[root as usize] = true;
        parent[root as usize] = 0;
        let mut queue = alloc::collections::VecDeque::new();
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            for &v in g.neighbors(u) {
                if !visited[v as usize] {
                    visited[v as usize] = true;
                    parent[v as usize] = u;
                    depth[v as usize] = depth[u as usize] + 1;
                    queue.push_back(v);
                } else if depth[u as usize] % 2 == depth[v as usize] % 2 && u != v {
                    // Same color on an edge: close an odd cycle through the
                    // lowest common ancestor of u and v in the BFS forest.
                    return Some(close_cycle(u, v, &parent, &depth));
                }
            }
        }
    }
    None
}

fn close_cycle(u: u32, v: u32, parent: &[u32], depth: &[u32]) -> Vec<u32> {
    let (mut a, mut b) = (u, v);
    let mut path_a = vec![a];
    let mut path_b = vec![b];
    while depth[a as usize] > depth[b as usize] {
        a = parent[a as usize];
        path_a.push(a);
    }
    while depth[b as usize] > depth[a as usize] {
        b = parent[b as usize];
        path_b.push(b);
    }
    while a != b {
        a = parent[a as usize];
        b = parent[b as usize];
        path_a.push(a);
        path_b.push(b);
    }
    // path_a ends at the LCA; path_b's copy of the LCA is dropped.
    path_b.pop();
    path_b.reverse();
    path_a.extend(path_b);
    path_a
}

/// Check that a returned witness really is an odd cycle of `g`.
pub fn validate_odd_cycle(g: &Graph, cycle: &[u32]) -> bool {
    if cycle.len() < 3 || cycle.len() % 2 == 0 {
        return false;
    }
    let mut sorted = cycle.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return false;
    }
    (0..cycle.len()).all(|i| {
        let u = cycle[i];
        let v = cycle[(i + 1) % cycle.len()];
        g.neighbors(u).contains(&v)
    })
}

/// Default repetition count: `8·n·⌈log₂ n⌉` full-set queries, which
/// empirically saturates odd-cycle detection at n ≥ 32.
pub fn default_repetitions(n: u32) -> u64 {
    8 * n as u64 * ceil_log2(n as u64) as u64
}

/// Run the distinguisher: `repetitions` queries of `L = [n]`, then output
/// the two-cliques verdict iff the observed graph contains an odd cycle.
///
/// Returns the verdict together with the witness cycle, if any.
pub fn run_odd_cycle_distinguisher(
    session: &mut OracleSession<'_>,
    repetitions: u64,
) -> Result<(Verdict, Option<Vec<u32>>)> {
    if repetitions == 0 {
        return Err(Error::OutOfRange { what: "repetitions", value: 0, min: 1, max: u64::MAX });
    }
    let n = session.graph().n_vertices();
    let full: Vec<u32> = (1..=n).collect();
    for _ in 0..repetitions {
        session.query(&full)?;
    }
    let observed = observed_graph(session.transcript(), n);
    match find_odd_cycle(&observed) {
        Some(cycle) => Ok((Verdict::OutputG1, Some(cycle))),
        None => Ok((Verdict::OutputG2, None)),
    }
}

/// One fully seeded distinguisher trial: samples the hidden partition,
/// builds the family member, runs the distinguisher.
pub fn advantage_trial(n: u32, family: GraphFamily, repetitions: u64, seed: u64) -> Result<Verdict> {
    let partition = sample_partition(n, derive_seed(seed, 0x01))?;
    let graph = build_graph(&partition, family);
    let mut session = OracleSession::new(&graph, derive_seed(seed, 0x02))?;
    run_odd_cycle_distinguisher(&mut session, repetitions).map(|(v, _)| v)
}

/// Empirical distinguishing advantage report.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdvantageReport {
    /// Empirical `Pr[OutputG1 | two cliques]`.
    pub p1: f64,
    /// Empirical `Pr[OutputG1 | complete bipartite]`.
    pub p2: f64,
    /// `p1 - p2`.
    pub advantage: f64,
    /// Two-sided 95% binomial (normal-approximation) half-width for `p1`.
    pub half_width1: f64,
    /// Same for `p2`.
    pub half_width2: f64,
    pub trials: u64,
}

/// Half-width of a two-sided 95% normal-approximation binomial interval.
pub fn binomial_half_width(p: f64, trials: u64) -> f64 {
    if trials == 0 {
        return f64::INFINITY;
    }
    1.96 * crate::sqrt_f64(p * (1.0 - p) / trials as f64)
}

/// Estimate the distinguishing advantage with `trials` seeded trials per
/// family (sequential; the harness parallelizes via [`advantage_trial`]).
pub fn estimate_advantage(n: u32, repetitions: u64, trials: u64, seed: u64) -> Result<AdvantageReport> {
    if trials < 30 {
        return Err(Error::OutOfRange { what: "trials", value: trials, min: 30, max: u64::MAX });
    }
    let mut outputs = [0u64; 2];
    for (slot, family) in [(0, GraphFamily::TwoCliques), (1, GraphFamily::CompleteBipartite)] {
        for t in 0..trials {
            let trial_seed = derive_seed(derive_seed(seed, slot as u64), t);
            if advantage_trial(n, family, repetitions, trial_seed)? == Verdict::OutputG1 {
                outputs[slot] += 1;
            }
        }
    }
    let p1 = outputs[0] as f64 / trials as f64;
    let p2 = outputs[1] as f64 / trials as f64;
    Ok(AdvantageReport {
        p1,
        p2,
        advantage: p1 - p2,
        half_width1: binomial_half_width(p1, trials),
        half_width2: binomial_half_width(p2, trials),
        trials,
    })
}
