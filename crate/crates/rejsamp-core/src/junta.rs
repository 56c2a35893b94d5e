//! Hard instances for junta testing: a multiplexer over `M` selecting
//! parity gadgets tied to a hidden graph on the complement coordinates.
//!
//! An instance on `n` variables (`4 | n`) fixes a half-set `M ⊂ [n]`, a
//! quarter-set `A ⊆ M̄`, a graph family member over `M̄` built on `A`, and a
//! seed. The multiplexer `Γ_M(x)` reads `x` restricted to `M` as a number
//! `i ∈ [N]`, `N = 2^{n/2}`; the first half of indices evaluate the parity
//! over `M`, the second half evaluate `x_{j₁} ⊕ x_{j₂} ⊕ r` for an edge
//! `(j₁, j₂)` of the hidden graph and a random bit `r`, drawn lazily and
//! consistently from a per-index stream.
//!
//! Also here: the explicit near-closest junta witness and the two
//! distance-preserving padding transforms (xor-parity pad and dummy pad).

use alloc::vec::Vec;

use crate::boolfn::{Bits, TruthTable, TABLE_CAP};
use crate::error::Result;
use crate::frac::ExactFraction;
use crate::graph::{build_graph, Graph, GraphFamily, Partition};
use crate::rng::CounterRng;
use crate::Error;

const TAG_SAMPLE_M: u64 = 0x4a_01;
const TAG_SAMPLE_A: u64 = 0x4a_02;
const TAG_SUBFN: u64 = 0x4a_03;

/// The gadget selected for one multiplexer index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubfunctionSpec {
    /// Parity of `x` over `M` (first half of indices).
    ParityOverM,
    /// `x_{j1} ⊕ x_{j2} ⊕ r` where `(j1, j2)` is an edge of the hidden
    /// graph, expressed in function coordinates (`j1 < j2`, both in `M̄`).
    EdgeParity { j1: u32, j2: u32, r: bool },
}

/// A lazily materialized hard function for junta testing.
#[derive(Debug, Clone)]
pub struct JuntaInstance {
    n: u32,
    m_set: Vec<u32>,
    m_bar: Vec<u32>,
    a_set: Vec<u32>,
    family: GraphFamily,
    seed: u64,
    /// The hidden graph over `M̄`, relabeled to `[|M̄|]` in sorted order.
    graph: Graph,
}

impl JuntaInstance {
    /// Build with explicit `M` and `A ⊆ M̄`.
    pub fn with_sets(
        n: u32,
        mut m_set: Vec<u32>,
        a_set: Vec<u32>,
        family: GraphFamily,
        seed: u64,
    ) -> Result<JuntaInstance> {
        if n == 0 || n % 4 != 0 {
            return Err(Error::Divisibility { what: "n", value: n as u64, divisor: 4 });
        }
        m_set.sort_unstable();
        m_set.dedup();
        if m_set.len() != n as usize / 2 {
            return Err(Error::Mismatch { what: "|M| must be n/2" });
        }
        if let Some(&v) = m_set.iter().find(|&&v| v < 1 || v > n) {
            return Err(Error::InvalidVertex { vertex: v, n });
        }
        let m_bar: Vec<u32> = (1..=n).filter(|v| m_set.binary_search(v).is_err()).collect();
        let mut a_sorted = a_set;
        a_sorted.sort_unstable();
        a_sorted.dedup();
        if a_sorted.len() != n as usize / 4 {
            return Err(Error::Mismatch { what: "|A| must be n/4" });
        }
        if a_sorted.iter().any(|v| m_bar.binary_search(v).is_err()) {
            return Err(Error::Mismatch { what: "A must be a subset of the complement of M" });
        }
        // Relabel M̄ to [n/2] (sorted order) and build the hidden graph there.
        let relabel = |v: u32| m_bar.binary_search(&v).unwrap() as u32 + 1;
        let partition =
            Partition::new(m_bar.len() as u32, a_sorted.iter().map(|&v| relabel(v)).collect())?;
        let graph = build_graph(&partition, family);
        if graph.n_edges() == 0 {
            return Err(Error::EdgelessGraph);
        }
        Ok(JuntaInstance { n, m_set, m_bar, a_set: a_sorted, family, seed, graph })
    }

    /// Sample `M` and `A` uniformly from the seed.
    pub fn sample(n: u32, family: GraphFamily, seed: u64) -> Result<JuntaInstance> {
        if n == 0 || n % 4 != 0 {
            return Err(Error::Divisibility { what: "n", value: n as u64, divisor: 4 });
        }
        let universe: Vec<u32> = (1..=n).collect();
        let m_set =
            CounterRng::from_chain(seed, &[TAG_SAMPLE_M]).subset(&universe, n as usize / 2);
        let m_bar: Vec<u32> = (1..=n).filter(|v| m_set.binary_search(v).is_err()).collect();
        let a_set = CounterRng::from_chain(seed, &[TAG_SAMPLE_A]).subset(&m_bar, n as usize / 4);
        JuntaInstance::with_sets(n, m_set, a_set, family, seed)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// The multiplexer half-set `M`, sorted.
    pub fn m_set(&self) -> &[u32] {
        &self.m_set
    }

    /// Complement of `M`, sorted.
    pub fn m_bar(&self) -> &[u32] {
        &self.m_bar
    }

    /// The hidden side `A ⊆ M̄` (function coordinates), sorted.
    pub fn a_set(&self) -> &[u32] {
        &self.a_set
    }

    pub fn family(&self) -> GraphFamily {
        self.family
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// The hidden graph, on vertices `1..=n/2` (relabeled `M̄`).
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Number of multiplexer indices, `N = 2^{n/2}`.
    pub fn index_count(&self) -> u128 {
        1u128 << (self.n / 2)
    }

    /// The gadget for index `i ∈ [N]`; pure in `(seed, i)`.
    pub fn subfunction(&self, i: u128) -> Result<SubfunctionSpec> {
        let n_idx = self.index_count();
        if i < 1 || i > n_idx {
            return Err(Error::OutOfRange {
                what: "subfunction index",
                value: i.min(u64::MAX as u128) as u64,
                min: 1,
                max: n_idx.min(u64::MAX as u128) as u64,
            });
        }
        if i <= n_idx / 2 {
            return Ok(SubfunctionSpec::ParityOverM);
        }
        let mut rng =
            CounterRng::from_chain(self.seed, &[TAG_SUBFN, (i - 1) as u64, ((i - 1) >> 64) as u64]);
        let edges = self.graph.edges();
        let (u, v) = edges[rng.below(edges.len() as u64) as usize];
        // Back to function coordinates.
        let j1 = self.m_bar[u as usize - 1];
        let j2 = self.m_bar[v as usize - 1];
        Ok(SubfunctionSpec::EdgeParity { j1: j1.min(j2), j2: j1.max(j2), r: rng.next_bit() })
    }

    /// The multiplexer value `Γ_M(x) ∈ [N]`.
    pub fn gamma(&self, x: &Bits) -> u128 {
        gamma_m(x, &self.m_set)
    }

    /// Evaluate the instance at a point; pure in `(seed, M, A, family, x)`.
    pub fn eval(&self, x: &Bits) -> bool {
        assert_eq!(x.len(), self.n as usize, "assignment arity mismatch");
        match self.subfunction(self.gamma(x)).expect("gamma is in range") {
            SubfunctionSpec::ParityOverM => x.weight_on(&self.m_set) % 2 == 1,
            SubfunctionSpec::EdgeParity { j1, j2, r } => {
                x.get(j1 as usize) ^ x.get(j2 as usize) ^ r
            }
        }
    }

    /// Materialize the full truth table (`n ≤ 24`).
    pub fn truth_table(&self) -> Result<TruthTable> {
        TruthTable::from_fn(self.n as usize, |x| self.eval(x))
    }

    /// The explicit junta witness that forgets `S`: indices whose edge
    /// touches `S` are zeroed out, all others keep their gadget.
    pub fn witness(&self, s: &[u32]) -> Result<JuntaWitness<'_>> {
        let mut s_sorted = s.to_vec();
        s_sorted.sort_unstable();
        s_sorted.dedup();
        if s_sorted.len() < self.n as usize / 4 {
            return Err(Error::Mismatch { what: "|S| must be at least n/4" });
        }
        if s_sorted.iter().any(|v| self.m_bar.binary_search(v).is_err()) {
            return Err(Error::Mismatch { what: "S must be a subset of the complement of M" });
        }
        Ok(JuntaWitness { instance: self, s: s_sorted })
    }
}

/// Multiplexer read-out: `1 +` the integer encoded by `x` restricted to the
/// sorted set `M`, with the **smallest** element of `M` as the most
/// significant bit. Range `[1, 2^{|M|}]`.
pub fn gamma_m(x: &Bits, m_set: &[u32]) -> u128 {
    1 + x.project_msb_first(m_set)
}

/// The near-closest junta produced by forgetting the coordinates in `S`.
#[derive(Debug, Clone)]
pub struct JuntaWitness<'a> {
    instance: &'a JuntaInstance,
    s: Vec<u32>,
}

impl JuntaWitness<'_> {
    /// The forgotten coordinate set, sorted.
    pub fn s_set(&self) -> &[u32] {
        &self.s
    }

    /// Whether index `i`'s gadget edge touches `S` (the indicator `X_i`).
    pub fn index_touches_s(&self, i: u128) -> Result<bool> {
        Ok(match self.instance.subfunction(i)? {
            SubfunctionSpec::ParityOverM => false,
            SubfunctionSpec::EdgeParity { j1, j2, .. } => {
                self.s.binary_search(&j1).is_ok() || self.s.binary_search(&j2).is_ok()
            }
        })
    }

    /// Evaluate the witness; never depends on any coordinate in `S`.
    pub fn eval(&self, x: &Bits) -> bool {
        let i = self.instance.gamma(x);
        if self.index_touches_s(i).expect("gamma in range") {
            false
        } else {
            self.instance.eval(x)
        }
    }

    /// Exact distance to the instance: half the fraction of second-half
    /// indices whose edge touches `S` — `#{i > N/2 : X_i} / (2 · 2^m)`.
    ///
    /// Enumerates the second half of indices; capped at `m ≤ 24`.
    pub fn expected_distance(&self) -> Result<ExactFraction> {
        let m = self.instance.n / 2;
        if m as usize > TABLE_CAP {
            return Err(Error::Capacity {
                what: "witness index enumeration (m)",
                requested: m as u64,
                cap: TABLE_CAP as u64,
            });
        }
        let n_idx = self.instance.index_count();
        let mut touched: u128 = 0;
        for i in (n_idx / 2 + 1)..=n_idx {
            if self.index_touches_s(i)? {
                touched += 1;
            }
        }
        Ok(ExactFraction::new(touched, 2 * n_idx))
    }
}

/// Pad with `extra` xor-parity variables: `g(x, y) = f(x) ⊕ y_1 ⊕ … ⊕ y_extra`.
///
/// The new variables are appended after `x` (least significant index bits).
/// Preserves junta distance with `k → k + extra` for `dist < 1/2`.
pub fn pad_parity(f: &TruthTable, extra: usize) -> Result<TruthTable> {
    let n = f.n_vars();
    TruthTable::from_fn(n + extra, |z| {
        let mut idx = 0usize;
        for j in 1..=n {
            idx = (idx << 1) | z.get(j) as usize;
        }
        let mut v = f.get(idx);
        for j in n + 1..=n + extra {
            v ^= z.get(j);
        }
        v
    })
}

/// Pad with `extra` dummy variables: `g(x, y) = f(x)`. Preserves junta
/// distance at the same `k`.
pub fn pad_dummy(f: &TruthTable, extra: usize) -> Result<TruthTable> {
    let n = f.n_vars();
    TruthTable::from_fn(n + extra, |z| {
        let mut idx = 0usize;
        for j in 1..=n {
            idx = (idx << 1) | z.get(j) as usize;
        }
        f.get(idx)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn inst8(seed: u64, family: GraphFamily) -> JuntaInstance {
        JuntaInstance::sample(8, family, seed).unwrap()
    }

    #[test]
    fn gamma_examples() {
        // M = {1,2}: x = 00.. -> 1; x = 10.. -> 3.
        let x = Bits::zeros(4);
        assert_eq!(gamma_m(&x, &[1, 2]), 1);
        let x = Bits::from_ones(4, &[1]);
        assert_eq!(gamma_m(&x, &[1, 2]), 3);
        // M = {2,4}, x = 0101 -> 1 + 0b11 = 4.
        let x = Bits::from_ones(4, &[2, 4]);
        assert_eq!(gamma_m(&x, &[2, 4]), 4);
    }

    #[test]
    fn constructor_validation() {
        assert!(JuntaInstance::sample(6, GraphFamily::TwoCliques, 0).is_err());
        assert!(JuntaInstance::with_sets(8, vec![1, 2, 3], vec![5], GraphFamily::TwoCliques, 0)
            .is_err());
        // A not inside the complement of M.
        assert!(JuntaInstance::with_sets(
            8,
            vec![1, 2, 3, 4],
            vec![1, 5],
            GraphFamily::TwoCliques,
            0
        )
        .is_err());
    }

    #[test]
    fn first_half_is_parity_and_specs_are_stable() {
        let inst = inst8(3, GraphFamily::TwoCliques);
        assert_eq!(inst.subfunction(1).unwrap(), SubfunctionSpec::ParityOverM);
        let n_idx = inst.index_count();
        for i in 1..=n_idx {
            assert_eq!(inst.subfunction(i).unwrap(), inst.subfunction(i).unwrap());
        }
        assert!(inst.subfunction(0).is_err());
        assert!(inst.subfunction(n_idx + 1).is_err());
    }

    #[test]
    fn edge_specs_lie_on_the_instance_graph() {
        // Exhaustive at n ≤ 12 per the module contract.
        for n in [8u32, 12] {
            for family in [GraphFamily::TwoCliques, GraphFamily::CompleteBipartite] {
                let inst = JuntaInstance::sample(n, family, 77 + n as u64).unwrap();
                let n_idx = inst.index_count();
                for i in n_idx / 2 + 1..=n_idx {
                    match inst.subfunction(i).unwrap() {
                        SubfunctionSpec::EdgeParity { j1, j2, .. } => {
                            let g1 = inst.m_bar().binary_search(&j1).unwrap() as u32 + 1;
                            let g2 = inst.m_bar().binary_search(&j2).unwrap() as u32 + 1;
                            assert!(
                                inst.graph().edges().contains(&(g1.min(g2), g1.max(g2))),
                                "index {i}: ({j1},{j2}) not an instance edge"
                            );
                        }
                        other => panic!("second half must be EdgeParity, got {other:?}"),
                    }
                }
            }
        }
    }

    #[test]
    fn edge_distribution_uniform_over_two_clique_edges() {
        // n=8, TwoCliques with |A|=2: the graph on M̄ is K_2 ∪ K_2 with
        // exactly 2 edges; over many seeds each has frequency 1/2 ± 0.02.
        let mut m_set = vec![1, 2, 3, 4];
        let a_set = vec![5, 6];
        let mut counts = [0u64; 2];
        let draws = 10_000u64;
        for seed in 0..draws {
            let inst = JuntaInstance::with_sets(
                8,
                core::mem::take(&mut m_set),
                a_set.clone(),
                GraphFamily::TwoCliques,
                seed,
            )
            .unwrap();
            m_set = inst.m_set.clone();
            let i = inst.index_count(); // last index
            match inst.subfunction(i).unwrap() {
                SubfunctionSpec::EdgeParity { j1: 5, j2: 6, .. } => counts[0] += 1,
                SubfunctionSpec::EdgeParity { j1: 7, j2: 8, .. } => counts[1] += 1,
                other => panic!("unexpected {other:?}"),
            }
        }
        for c in counts {
            let p = c as f64 / draws as f64;
            assert!((p - 0.5).abs() < 0.02, "edge frequency {p}");
        }
    }

    #[test]
    fn eval_first_half_is_parity_over_m() {
        let inst = inst8(9, GraphFamily::CompleteBipartite);
        let min_m = inst.m_set()[0] as usize;
        // Points with the min(M) bit clear land in the first half.
        for raw in 0..=255u32 {
            let mut x = Bits::zeros(8);
            for j in 1..=8 {
                x.set(j, raw >> (j - 1) & 1 == 1);
            }
            x.set(min_m, false);
            assert!(inst.gamma(&x) <= inst.index_count() / 2);
            assert_eq!(inst.eval(&x), x.weight_on(inst.m_set()) % 2 == 1);
        }
    }

    #[test]
    fn eval_flips_with_gadget_variable() {
        let inst = inst8(10, GraphFamily::TwoCliques);
        let n_idx = inst.index_count();
        for i in n_idx / 2 + 1..=n_idx {
            if let SubfunctionSpec::EdgeParity { j1, .. } = inst.subfunction(i).unwrap() {
                // Build a point with this gamma index.
                let mut x = Bits::zeros(8);
                let val = (i - 1) as u32;
                let m = inst.m_set();
                for (pos, &j) in m.iter().enumerate() {
                    x.set(j as usize, val >> (m.len() - 1 - pos) & 1 == 1);
                }
                assert_eq!(inst.gamma(&x), i);
                let before = inst.eval(&x);
                x.flip(j1 as usize);
                assert_eq!(inst.gamma(&x), i, "flipping an M̄ bit keeps the index");
                assert_ne!(before, inst.eval(&x));
            }
        }
    }

    #[test]
    fn truth_table_deterministic() {
        let inst = inst8(11, GraphFamily::TwoCliques);
        assert_eq!(inst.truth_table().unwrap(), inst.truth_table().unwrap());
        let again = JuntaInstance::with_sets(
            8,
            inst.m_set().to_vec(),
            inst.a_set().to_vec(),
            GraphFamily::TwoCliques,
            11,
        )
        .unwrap();
        assert_eq!(inst.truth_table().unwrap(), again.truth_table().unwrap());
    }

    #[test]
    fn witness_ignores_s_and_matches_predicted_distance() {
        for seed in 0..50u64 {
            for family in [GraphFamily::TwoCliques, GraphFamily::CompleteBipartite] {
                let inst = JuntaInstance::sample(8, family, seed).unwrap();
                let w = inst.witness(inst.a_set()).unwrap();
                // g never depends on variables in S (exhaustive at n=8).
                let g_table = TruthTable::from_fn(8, |x| w.eval(x)).unwrap();
                for &j in w.s_set() {
                    for idx in 0..256usize {
                        let mut x = g_table.bits_of(idx);
                        let v0 = w.eval(&x);
                        x.flip(j as usize);
                        assert_eq!(v0, w.eval(&x), "witness depends on forgotten var {j}");
                    }
                }
                // Exact distance identity.
                let f_table = inst.truth_table().unwrap();
                let measured = crate::boolfn::dist_between(&f_table, &g_table).unwrap();
                assert_eq!(measured, w.expected_distance().unwrap(), "seed {seed}");
            }
        }
    }

    #[test]
    fn witness_with_untouched_s_equals_f() {
        // Choose S inside M̄ avoiding every sampled edge: under
        // CompleteBipartite with S = a subset of A of size n/4... all edges
        // touch A, so instead pick TwoCliques n=8 where A-clique is one edge;
        // if no sampled edge lies inside the chosen S the witness equals f.
        for seed in 0..30u64 {
            let inst = JuntaInstance::sample(8, GraphFamily::TwoCliques, seed).unwrap();
            let w = inst.witness(inst.a_set()).unwrap();
            if w.expected_distance().unwrap() == ExactFraction::ZERO {
                let f_table = inst.truth_table().unwrap();
                let g_table = TruthTable::from_fn(8, |x| w.eval(x)).unwrap();
                assert_eq!(f_table, g_table);
            }
        }
    }

    #[test]
    fn pad_examples() {
        // f = const 0, one parity pad -> g(x,y) = y.
        let f = TruthTable::new_const(2, false).unwrap();
        let g = pad_parity(&f, 1).unwrap();
        for idx in 0..8 {
            assert_eq!(g.get(idx), idx % 2 == 1);
        }
        // extra = 0 is the identity for both pads.
        let h = TruthTable::from_fn(3, |x| x.get(1) & x.get(2) | x.get(3)).unwrap();
        assert_eq!(pad_parity(&h, 0).unwrap(), h);
        assert_eq!(pad_dummy(&h, 0).unwrap(), h);
        // Dummy pad of a dictator depends only on the dictator.
        let dict = TruthTable::from_fn(1, |x| x.get(1)).unwrap();
        let padded = pad_dummy(&dict, 2).unwrap();
        for idx in 0..8 {
            assert_eq!(padded.get(idx), idx >= 4);
        }
    }
}
