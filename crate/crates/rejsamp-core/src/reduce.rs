//! Reductions from Boolean-function testing to rejection-sampling queries.
//!
//! Three reductions are provided, each turning a black-box tester of
//! functions on `2n` variables into a rejection-sampling algorithm against
//! an `n`-vertex hidden graph:
//!
//! * [`run_junta_reduction`] — non-adaptive: queries are grouped by their
//!   restriction to `M`; each group issues its disagreement set and the
//!   oracle response pins down the XOR pattern of the simulated answers.
//!   The simulation is exact; acceptance maps to [`Verdict::OutputG1`].
//! * [`run_unate_adaptive_reduction`] — adaptive: the full vertex set is
//!   queried once per tester query up front (cost exactly `q·n`), and the
//!   sampled edges lazily instantiate the 3-parity gadget regions on demand.
//!   The simulation is exact; acceptance maps to [`Verdict::OutputG2`].
//! * [`run_unate_nonadaptive_reduction`] — non-adaptive: queries are
//!   partitioned by the threshold / multiplexer clauses, indexed groups
//!   issue their disagreement sets, and lone-vertex / empty responses are
//!   answered with exact Bernoulli surrogates. The simulation is
//!   approximate by design; acceptance maps to [`Verdict::OutputG2`].
//!
//! [`lift_junta_tester`] adapts a junta tester at one parameter ratio to
//! another via the distance-preserving padding transforms.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::boolfn::{Bits, TruthTable};
use crate::distinguish::Verdict;
use crate::error::Result;
use crate::graph::GraphFamily;
use crate::junta::{pad_dummy, pad_parity};
use crate::oracle::{OracleSession, Response};
use crate::rng::CounterRng;
use crate::unate::UnateInstance;
use crate::{ceil_log2, isqrt, Error};

const TAG_JUNTA_SIM: u64 = 0x6a_01;
const TAG_UNATE_SIM: u64 = 0x6a_02;
const TAG_ADAPTIVE: u64 = 0x6a_03;

/// An ordered list of tester queries of equal arity.
#[derive(Debug, Clone)]
pub struct QueryBatch {
    n_vars: usize,
    queries: Vec<Bits>,
}

impl QueryBatch {
    pub fn new(queries: Vec<Bits>) -> Result<QueryBatch> {
        let n_vars = match queries.first() {
            Some(q) => q.len(),
            None => return Err(Error::Invalid(alloc::string::String::from("empty query batch"))),
        };
        if queries.iter().any(|q| q.len() != n_vars) {
            return Err(Error::Mismatch { what: "queries of unequal arity" });
        }
        Ok(QueryBatch { n_vars, queries })
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn len(&self) -> usize {
        self.queries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.queries.is_empty()
    }

    pub fn queries(&self) -> &[Bits] {
        &self.queries
    }
}

/// Simulated tester answers, aligned with the original query order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimulatedAnswers {
    pub bits: Vec<bool>,
}

/// One group of queries agreeing on `M`, with its disagreement set.
#[derive(Debug, Clone)]
pub struct JuntaGroup {
    /// Positions into the batch, ascending.
    pub members: Vec<usize>,
    /// Coordinates of `M̄` where two members disagree, sorted.
    pub l_set: Vec<u32>,
    /// Whether the shared multiplexer index falls in the parity half.
    pub parity_half: bool,
}

/// The grouping of a batch for the junta reduction.
#[derive(Debug, Clone)]
pub struct JuntaGroups {
    m_set: Vec<u32>,
    m_bar: Vec<u32>,
    groups: Vec<JuntaGroup>,
}

impl JuntaGroups {
    pub fn groups(&self) -> &[JuntaGroup] {
        &self.groups
    }

    pub fn m_set(&self) -> &[u32] {
        &self.m_set
    }

    pub fn m_bar(&self) -> &[u32] {
        &self.m_bar
    }

    /// Total oracle cost the simulation will incur: `Σ |L_i|` over
    /// non-parity groups.
    pub fn planned_cost(&self) -> u64 {
        self.groups
            .iter()
            .filter(|g| !g.parity_half)
            .map(|g| g.l_set.len() as u64)
            .sum()
    }
}

fn checked_half_set(n_vars: usize, m_set: &[u32]) -> Result<(Vec<u32>, Vec<u32>)> {
    let mut m = m_set.to_vec();
    m.sort_unstable();
    m.dedup();
    if m.len() * 2 != n_vars {
        return Err(Error::Mismatch { what: "|M| must be half the query arity" });
    }
    if let Some(&v) = m.iter().find(|&&v| v < 1 || v as usize > n_vars) {
        return Err(Error::InvalidVertex { vertex: v, n: n_vars as u32 });
    }
    let m_bar: Vec<u32> =
        (1..=n_vars as u32).filter(|v| m.binary_search(v).is_err()).collect();
    Ok((m, m_bar))
}

/// Coordinates of `m_bar` where two batch members of `members` disagree.
fn disagreement_set(batch: &QueryBatch, members: &[usize], m_bar: &[u32]) -> Vec<u32> {
    m_bar
        .iter()
        .copied()
        .filter(|&j| {
            let first = batch.queries[members[0]].get(j as usize);
            members[1..].iter().any(|&p| batch.queries[p].get(j as usize) != first)
        })
        .collect()
}

/// Group a batch by equality of the restriction to `M` and compute each
/// group's disagreement set over `M̄`.
pub fn group_queries_junta(batch: &QueryBatch, m_set: &[u32]) -> Result<JuntaGroups> {
    let (m, m_bar) = checked_half_set(batch.n_vars(), m_set)?;
    let min_m = m[0] as usize;
    let mut by_key: BTreeMap<Vec<u64>, Vec<usize>> = BTreeMap::new();
    for (pos, z) in batch.queries.iter().enumerate() {
        by_key.entry(z.project(&m)).or_default().push(pos);
    }
    let groups = by_key
        .into_values()
        .map(|members| {
            let l_set = disagreement_set(batch, &members, &m_bar);
            // The multiplexer reads the smallest element of M as the most
            // significant bit, so the parity half is exactly "that bit = 0".
            let parity_half = !batch.queries[members[0]].get(min_m);
            JuntaGroup { members, l_set, parity_half }
        })
        .collect();
    Ok(JuntaGroups { m_set: m, m_bar, groups })
}

/// Answer a grouped batch through the oracle.
///
/// Parity-half groups get the parity of their restriction to `M`. Every
/// other group issues its disagreement set; the response fixes the XOR
/// pattern of the answers around one fresh uniform bit: empty → all equal,
/// lone vertex `j` → split by `z_j`, edge `(j₁,j₂)` → split by
/// `z_{j₁} ⊕ z_{j₂}`.
pub fn simulate_junta_answers(
    batch: &QueryBatch,
    groups: &JuntaGroups,
    session: &mut OracleSession,
    seed: u64,
) -> Result<SimulatedAnswers> {
    if session.graph().n_vertices() as usize != groups.m_bar.len() {
        return Err(Error::Mismatch { what: "graph order must equal |complement of M|" });
    }
    let mut rng = CounterRng::from_chain(seed, &[TAG_JUNTA_SIM]);
    let mut bits = alloc::vec![false; batch.len()];
    let to_graph = |j: u32| groups.m_bar.binary_search(&j).unwrap() as u32 + 1;
    let to_fn = |v: u32| groups.m_bar[v as usize - 1];
    for group in &groups.groups {
        if group.parity_half {
            for &pos in &group.members {
                bits[pos] = batch.queries[pos].weight_on(&groups.m_set) % 2 == 1;
            }
            continue;
        }
        let l_graph: Vec<u32> = group.l_set.iter().map(|&j| to_graph(j)).collect();
        let response = session.query(&l_graph)?;
        let anchor = rng.next_bit();
        for &pos in &group.members {
            let z = &batch.queries[pos];
            bits[pos] = match response {
                Response::Empty => anchor,
                Response::Lone(v) => anchor ^ z.get(to_fn(v) as usize),
                Response::Edge(u, v) => {
                    anchor ^ z.get(to_fn(u) as usize) ^ z.get(to_fn(v) as usize)
                }
            };
        }
    }
    Ok(SimulatedAnswers { bits })
}

/// Outcome of one reduction run.
#[derive(Debug, Clone)]
pub struct ReductionOutcome {
    pub verdict: Verdict,
    pub answers: SimulatedAnswers,
    /// Oracle cost incurred by this run.
    pub cost: u64,
}

/// Run a non-adaptive junta-side tester against the oracle. The tester's
/// accept maps to [`Verdict::OutputG1`].
pub fn run_junta_reduction(
    tester: impl FnOnce(&[bool]) -> bool,
    batch: &QueryBatch,
    m_set: &[u32],
    session: &mut OracleSession,
    seed: u64,
) -> Result<ReductionOutcome> {
    let groups = group_queries_junta(batch, m_set)?;
    let before = session.transcript().total_cost();
    let answers = simulate_junta_answers(batch, &groups, session, seed)?;
    let cost = session.transcript().total_cost() - before;
    debug_assert_eq!(cost, groups.planned_cost());
    let verdict = if tester(&answers.bits) { Verdict::OutputG1 } else { Verdict::OutputG2 };
    Ok(ReductionOutcome { verdict, answers, cost })
}

/// The locally sampled structure shared by both unate reductions: the
/// half-set `M`, the special pair `m1, m2`, and the term streams — but no
/// hidden side `A` and no graph, which stay behind the oracle.
#[derive(Debug, Clone)]
pub struct UnateReductionContext {
    n_fn: u32,
    m_set: Vec<u32>,
    m_bar: Vec<u32>,
    m1: u32,
    m2: u32,
    term_size: u32,
    term_seed: u64,
}

/// Classification of one query by the threshold / multiplexer clauses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QueryClass {
    /// Weight on `M` below the band: answer 0.
    BelowBand,
    /// Weight on `M` above the band: answer 1.
    AboveBand,
    /// In the band, no term satisfied: answer 0.
    NoTerm,
    /// In the band, several terms satisfied: answer 1.
    ManyTerms,
    /// In the band with a unique satisfied term (1-based).
    Indexed(u64),
}

impl UnateReductionContext {
    /// Sample the structure with the default term size `⌈√n⌉`.
    pub fn sample(n_fn: u32, seed: u64) -> Result<UnateReductionContext> {
        // Reuse the instance sampler so the (M, m1, m2, T) marginal matches
        // the hard-function distributions exactly; the hidden side it also
        // draws is discarded.
        Ok(Self::from_instance(&UnateInstance::sample(
            n_fn,
            GraphFamily::TwoCliques,
            seed,
        )?))
    }

    /// Sample with an explicit term size override.
    pub fn sample_with_term_size(
        n_fn: u32,
        term_size: u32,
        seed: u64,
    ) -> Result<UnateReductionContext> {
        Ok(Self::from_instance(&UnateInstance::sample_with_term_size(
            n_fn,
            GraphFamily::TwoCliques,
            term_size,
            seed,
        )?))
    }

    /// Copy the visible structure of an instance (for conditioned
    /// comparisons that share `M`, `m1`, `m2` and the terms).
    pub fn from_instance(instance: &UnateInstance) -> UnateReductionContext {
        UnateReductionContext {
            n_fn: instance.n(),
            m_set: instance.m_set().to_vec(),
            m_bar: instance.m_bar().to_vec(),
            m1: instance.m1(),
            m2: instance.m2(),
            term_size: instance.term_size(),
            term_seed: instance.term_seed(),
        }
    }

    pub fn n_fn(&self) -> u32 {
        self.n_fn
    }

    /// Number of graph vertices, `|M̄|`.
    pub fn n_graph(&self) -> u32 {
        self.m_bar.len() as u32
    }

    pub fn m_set(&self) -> &[u32] {
        &self.m_set
    }

    pub fn m_bar(&self) -> &[u32] {
        &self.m_bar
    }

    pub fn m1(&self) -> u32 {
        self.m1
    }

    pub fn m2(&self) -> u32 {
        self.m2
    }

    pub fn term_count(&self) -> u64 {
        1u64 << self.term_size
    }

    fn term_core(&self) -> Vec<u32> {
        self.m_set.iter().copied().filter(|&v| v != self.m1 && v != self.m2).collect()
    }

    fn in_band(&self, z: &Bits) -> bool {
        let w = z.weight_on(&self.m_set) as i64;
        let mid = self.n_fn as i64 / 4;
        let half = isqrt(self.n_fn as u64) as i64;
        (mid - half..=mid + half).contains(&w)
    }

    /// Classify a whole batch in one streaming pass over the term list;
    /// matches the instance multiplexer bit for bit.
    pub fn classify(&self, batch: &QueryBatch) -> Result<Vec<QueryClass>> {
        if batch.n_vars() != self.n_fn as usize {
            return Err(Error::Mismatch { what: "query arity" });
        }
        let mut classes = alloc::vec![QueryClass::NoTerm; batch.len()];
        // Complement bit-masks of the in-band queries: a term is satisfied
        // by z iff its mask avoids the complement of z entirely.
        let words = (self.n_fn as usize).div_ceil(64);
        let mut candidates: Vec<usize> = Vec::new();
        let mut comp: Vec<Vec<u64>> = Vec::new();
        for (pos, z) in batch.queries.iter().enumerate() {
            if !self.in_band(z) {
                let w = z.weight_on(&self.m_set) as i64;
                classes[pos] = if w < self.n_fn as i64 / 4 {
                    QueryClass::BelowBand
                } else {
                    QueryClass::AboveBand
                };
                continue;
            }
            let mut mask = alloc::vec![0u64; words];
            for j in 1..=self.n_fn as usize {
                if !z.get(j) {
                    mask[(j - 1) / 64] |= 1 << ((j - 1) % 64);
                }
            }
            candidates.push(pos);
            comp.push(mask);
        }
        let core = self.term_core();
        let mut sat = alloc::vec![0u8; candidates.len()];
        let mut first = alloc::vec![0u64; candidates.len()];
        let mut term_mask = alloc::vec![0u64; words];
        for i in 0..self.term_count() {
            let term = CounterRng::from_chain(self.term_seed, &[crate::unate::TAG_TERM, i])
                .subset(&core, self.term_size as usize);
            term_mask.iter_mut().for_each(|w| *w = 0);
            for &j in &term {
                term_mask[(j as usize - 1) / 64] |= 1 << ((j as usize - 1) % 64);
            }
            for (c, mask) in comp.iter().enumerate() {
                if sat[c] >= 2 {
                    continue;
                }
                if term_mask.iter().zip(mask).all(|(t, m)| t & m == 0) {
                    sat[c] += 1;
                    if sat[c] == 1 {
                        first[c] = i + 1;
                    }
                }
            }
        }
        for (c, &pos) in candidates.iter().enumerate() {
            classes[pos] = match sat[c] {
                0 => QueryClass::NoTerm,
                1 => QueryClass::Indexed(first[c]),
                _ => QueryClass::ManyTerms,
            };
        }
        Ok(classes)
    }
}

/// One indexed group of the non-adaptive unate reduction.
#[derive(Debug, Clone)]
pub struct UnateGroup {
    /// The shared multiplexer index (1-based).
    pub index: u64,
    /// Positions into the batch, ascending.
    pub members: Vec<usize>,
    /// Coordinates of `M̄` where two members disagree, sorted.
    pub l_set: Vec<u32>,
    /// Agreed coordinates of `M̄ ∖ L` where the common value is 0 / is 1.
    pub l_bar0: Vec<u32>,
    pub l_bar1: Vec<u32>,
}

/// The five-way partition of a batch for the non-adaptive unate reduction.
#[derive(Debug, Clone)]
pub struct UnateGroups {
    /// Per-query classification, aligned with the batch.
    pub classes: Vec<QueryClass>,
    /// Indexed groups in ascending index order.
    pub groups: Vec<UnateGroup>,
}

/// Partition a batch by the threshold / multiplexer clauses and compute the
/// per-index disagreement and agreement sets.
pub fn group_queries_unate(
    batch: &QueryBatch,
    ctx: &UnateReductionContext,
) -> Result<UnateGroups> {
    let classes = ctx.classify(batch)?;
    let mut by_index: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    for (pos, class) in classes.iter().enumerate() {
        if let QueryClass::Indexed(i) = class {
            by_index.entry(*i).or_default().push(pos);
        }
    }
    let groups = by_index
        .into_iter()
        .map(|(index, members)| {
            let l_set = disagreement_set(batch, &members, &ctx.m_bar);
            let rep = &batch.queries[members[0]];
            let mut l_bar0 = Vec::new();
            let mut l_bar1 = Vec::new();
            for &j in &ctx.m_bar {
                if l_set.binary_search(&j).is_err() {
                    if rep.get(j as usize) {
                        l_bar1.push(j);
                    } else {
                        l_bar0.push(j);
                    }
                }
            }
            UnateGroup { index, members, l_set, l_bar0, l_bar1 }
        })
        .collect();
    Ok(UnateGroups { classes, groups })
}

/// Success probability of the shared bit in the lone-vertex case:
/// `|L̄^(w)| / |L̄|`.
pub fn lone_case_probability(l_bar_w: usize, l_bar_total: usize) -> Result<(u64, u64)> {
    if l_bar_total == 0 {
        return Err(Error::DegenerateGroup);
    }
    Ok((l_bar_w as u64, l_bar_total as u64))
}

/// Success probability of the shared bit in the empty-response case:
/// `2·|L̄^(0)|·|L̄^(1)| / |L̄|²`.
pub fn empty_case_probability(l_bar0: usize, l_bar1: usize) -> Result<(u64, u64)> {
    let total = (l_bar0 + l_bar1) as u64;
    if total == 0 {
        return Err(Error::DegenerateGroup);
    }
    Ok((2 * l_bar0 as u64 * l_bar1 as u64, total * total))
}

/// Answer a partitioned batch through the oracle.
///
/// The four special classes get their fixed bits. Indexed groups in the
/// dictator range answer from one fair coin over `{m1, m2}`. Groups in the
/// 3-parity range issue their disagreement set (or the full vertex set when
/// it exceeds `n/⌈log₂ n⌉`) and answer per response case: an edge gives the
/// exact 3-parity, a lone vertex or empty response anchors the group on an
/// exact-rational Bernoulli surrogate bit.
pub fn simulate_unate_answers(
    batch: &QueryBatch,
    groups: &UnateGroups,
    ctx: &UnateReductionContext,
    session: &mut OracleSession,
    seed: u64,
) -> Result<SimulatedAnswers> {
    let n_graph = ctx.n_graph();
    if session.graph().n_vertices() != n_graph {
        return Err(Error::Mismatch { what: "graph order must equal |complement of M|" });
    }
    let mut rng = CounterRng::from_chain(seed, &[TAG_UNATE_SIM]);
    let mut bits = alloc::vec![false; batch.len()];
    for (pos, class) in groups.classes.iter().enumerate() {
        bits[pos] = matches!(class, QueryClass::AboveBand | QueryClass::ManyTerms);
    }
    let to_graph = |j: u32| ctx.m_bar.binary_search(&j).unwrap() as u32 + 1;
    let to_fn = |v: u32| ctx.m_bar[v as usize - 1];
    let dictator_range = ctx.term_count() / 4 * 3;
    let size_gate = n_graph as u64 / ceil_log2(n_graph as u64).max(1) as u64;
    for group in &groups.groups {
        if group.index <= dictator_range {
            let j = if rng.next_bit() { ctx.m1 } else { ctx.m2 };
            for &pos in &group.members {
                bits[pos] = batch.queries[pos].get(j as usize) ^ (j == ctx.m2);
            }
            continue;
        }
        let issued: Vec<u32> = if group.l_set.len() as u64 <= size_gate {
            group.l_set.iter().map(|&j| to_graph(j)).collect()
        } else {
            (1..=n_graph).collect()
        };
        let response = session.query(&issued)?;
        let j3 = if rng.next_bit() { ctx.m1 } else { ctx.m2 };
        let flip = j3 == ctx.m2;
        match response {
            Response::Edge(u, v) => {
                let (j1, j2) = (to_fn(u) as usize, to_fn(v) as usize);
                for &pos in &group.members {
                    let z = &batch.queries[pos];
                    bits[pos] = z.get(j1) ^ z.get(j2) ^ z.get(j3 as usize) ^ flip;
                }
            }
            Response::Lone(v) => {
                let j2 = to_fn(v) as usize;
                let rep = group
                    .members
                    .iter()
                    .map(|&p| &batch.queries[p])
                    .min()
                    .expect("groups are non-empty");
                let w1 = !rep.get(j2);
                let l_bar_w = if w1 { group.l_bar1.len() } else { group.l_bar0.len() };
                let (num, den) =
                    lone_case_probability(l_bar_w, group.l_bar0.len() + group.l_bar1.len())?;
                let b = rng.bernoulli(num, den);
                for &pos in &group.members {
                    let z = &batch.queries[pos];
                    bits[pos] = b ^ rep.get(j2) ^ z.get(j2) ^ z.get(j3 as usize) ^ flip;
                }
            }
            Response::Empty => {
                let (num, den) = empty_case_probability(group.l_bar0.len(), group.l_bar1.len())?;
                let b = rng.bernoulli(num, den);
                for &pos in &group.members {
                    bits[pos] = b ^ batch.queries[pos].get(j3 as usize) ^ flip;
                }
            }
        }
    }
    Ok(SimulatedAnswers { bits })
}

/// Run a non-adaptive unate-side tester against the oracle. The tester's
/// accept maps to [`Verdict::OutputG2`].
pub fn run_unate_nonadaptive_reduction(
    tester: impl FnOnce(&[bool]) -> bool,
    batch: &QueryBatch,
    ctx: &UnateReductionContext,
    session: &mut OracleSession,
    seed: u64,
) -> Result<ReductionOutcome> {
    let groups = group_queries_unate(batch, ctx)?;
    let before = session.transcript().total_cost();
    let answers = simulate_unate_answers(batch, &groups, ctx, session, seed)?;
    let cost = session.transcript().total_cost() - before;
    let verdict = if tester(&answers.bits) { Verdict::OutputG2 } else { Verdict::OutputG1 };
    Ok(ReductionOutcome { verdict, answers, cost })
}

/// One step of an adaptive tester: the next query, or the final decision.
#[derive(Debug, Clone)]
pub enum AdaptiveStep {
    Query(Bits),
    Decide(bool),
}

/// Run an adaptive unate-side tester with a declared query budget `q`.
///
/// On the tester's first query, `q` full-vertex-set oracle queries are
/// issued at once (each returns an edge; total cost exactly `q·n`). The
/// sampled edges and per-slot coins instantiate gadget regions on demand:
/// each newly seen multiplexer index claims the next slot and keeps it for
/// the rest of the run. Accept maps to [`Verdict::OutputG2`]. A tester that
/// decides without querying costs nothing; exceeding `q` queries is a
/// budget error.
pub fn run_unate_adaptive_reduction(
    mut tester: impl FnMut(&[bool]) -> AdaptiveStep,
    q: usize,
    ctx: &UnateReductionContext,
    session: &mut OracleSession,
    seed: u64,
) -> Result<ReductionOutcome> {
    let n_graph = ctx.n_graph();
    if session.graph().n_vertices() != n_graph {
        return Err(Error::Mismatch { what: "graph order must equal |complement of M|" });
    }
    let mut rng = CounterRng::from_chain(seed, &[TAG_ADAPTIVE]);
    // Per-slot coins, fixed up front.
    let dict_coins: Vec<u32> =
        (0..q).map(|_| if rng.next_bit() { ctx.m1 } else { ctx.m2 }).collect();
    let j3_coins: Vec<u32> =
        (0..q).map(|_| if rng.next_bit() { ctx.m1 } else { ctx.m2 }).collect();
    let full: Vec<u32> = (1..=n_graph).collect();
    let mut edges: Vec<(u32, u32)> = Vec::new(); // filled lazily, q at once
    let to_fn = |v: u32| ctx.m_bar[v as usize - 1];
    let dictator_range = ctx.term_count() / 4 * 3;
    let before = session.transcript().total_cost();
    let mut answers: Vec<bool> = Vec::new();
    let mut slots1: BTreeMap<u64, usize> = BTreeMap::new();
    let mut slots2: BTreeMap<u64, usize> = BTreeMap::new();
    let accept = loop {
        match tester(&answers) {
            AdaptiveStep::Decide(a) => break a,
            AdaptiveStep::Query(z) => {
                if answers.len() == q {
                    return Err(Error::BudgetExhausted { budget: q as u64 });
                }
                if edges.is_empty() && q > 0 {
                    for _ in 0..q {
                        match session.query(&full)? {
                            Response::Edge(u, v) => {
                                edges.push((to_fn(u), to_fn(v)));
                            }
                            _ => unreachable!("full-set queries always return edges"),
                        }
                    }
                }
                let batch = QueryBatch::new(alloc::vec![z])?;
                let class = ctx.classify(&batch)?[0];
                let z = &batch.queries[0];
                let bit = match class {
                    QueryClass::BelowBand | QueryClass::NoTerm => false,
                    QueryClass::AboveBand | QueryClass::ManyTerms => true,
                    QueryClass::Indexed(i) if i <= dictator_range => {
                        let next = slots1.len();
                        let t = *slots1.entry(i).or_insert(next);
                        let j = dict_coins[t];
                        z.get(j as usize) ^ (j == ctx.m2)
                    }
                    QueryClass::Indexed(i) => {
                        let next = slots2.len();
                        let t = *slots2.entry(i).or_insert(next);
                        let (j1, j2) = edges[t];
                        let j3 = j3_coins[t];
                        z.get(j1 as usize)
                            ^ z.get(j2 as usize)
                            ^ z.get(j3 as usize)
                            ^ (j3 == ctx.m2)
                    }
                };
                answers.push(bit);
            }
        }
    };
    let cost = session.transcript().total_cost() - before;
    let verdict = if accept { Verdict::OutputG2 } else { Verdict::OutputG1 };
    Ok(ReductionOutcome { verdict, answers: SimulatedAnswers { bits: answers }, cost })
}

/// Adapt a junta tester expecting parameter `k = ⌈α·m⌉` on `m`-variable
/// functions to an `n`-variable input, `α = alpha_num / alpha_den < 1`.
///
/// The input is padded with `⌈(4α−3)·n / (4(1−α))⌉` parity variables
/// (clamped at zero) and then with dummy variables up to arity `m`; both
/// paddings preserve distances to the respective junta classes.
pub fn lift_junta_tester(
    tester: impl FnOnce(&TruthTable, usize) -> bool,
    tester_arity: usize,
    alpha_num: u64,
    alpha_den: u64,
    f: &TruthTable,
) -> Result<bool> {
    if alpha_den == 0 || alpha_num >= alpha_den {
        return Err(Error::OutOfRange {
            what: "alpha (num/den, must be < 1)",
            value: alpha_num,
            min: 0,
            max: alpha_den.saturating_sub(1),
        });
    }
    let n = f.n_vars() as u64;
    let extra_parity = if 4 * alpha_num > 3 * alpha_den {
        let num = (4 * alpha_num - 3 * alpha_den) * n;
        let den = 4 * (alpha_den - alpha_num);
        num.div_ceil(den) as usize
    } else {
        0
    };
    if f.n_vars() + extra_parity > tester_arity {
        return Err(Error::Mismatch { what: "tester arity too small for padded input" });
    }
    let padded = pad_parity(f, extra_parity)?;
    let padded = pad_dummy(&padded, tester_arity - padded.n_vars())?;
    let k = (alpha_num * tester_arity as u64).div_ceil(alpha_den) as usize;
    Ok(tester(&padded, k))
}
