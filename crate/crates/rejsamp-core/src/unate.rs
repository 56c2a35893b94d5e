//! Hard instances for unateness testing: a Talagrand-style term multiplexer
//! over `M` selecting dictator / anti-dictator / 3-parity gadgets tied to a
//! hidden graph on the complement coordinates.
//!
//! An instance on `n` variables (`4 | n`) fixes a half-set `M`, two special
//! coordinates `m₁, m₂ ∈ M`, `N = 2^s` random `s`-subsets ("terms") of
//! `M∖{m₁,m₂}` with `s = ⌈√n⌉`, a half-subset `A ⊆ M̄`, a graph family
//! member over `M̄`, and a seed. Evaluation:
//!
//! 1. `|x∩M| > n/4 + ⌊√n⌋` → 1; `|x∩M| < n/4 − ⌊√n⌋` → 0;
//! 2. otherwise read the multiplexer `Γ_T(x)`: no term fully satisfied → 0,
//!    two or more satisfied → 1;
//! 3. a unique satisfied term `i ≤ 3N/4` → `x_{m₁}` or `¬x_{m₂}` by a fair
//!    per-index coin; `i > 3N/4` → `x_{j₁} ⊕ x_{j₂} ⊕ x_{j₃}`, complemented
//!    when `j₃ = m₂`, with `(j₁,j₂)` a uniform edge of the hidden graph and
//!    `j₃` a fair per-index coin in `{m₁, m₂}`.
//!
//! Terms and gadget specs are generated lazily and consistently from
//! per-index streams, so instances stay queryable far beyond the
//! materialization cap.

use alloc::vec::Vec;

use crate::boolfn::{Bits, TruthTable};
use crate::error::Result;
use crate::frac::ExactFraction;
use crate::graph::{build_graph, Graph, GraphFamily, Partition};
use crate::rng::CounterRng;
use crate::{ceil_sqrt, isqrt, sqrt_f64, Error};

const TAG_SAMPLE_M: u64 = 0x55_01;
const TAG_SAMPLE_M12: u64 = 0x55_02;
const TAG_SAMPLE_A: u64 = 0x55_03;
pub(crate) const TAG_TERM: u64 = 0x55_04;
const TAG_SUBFN: u64 = 0x55_05;
const TAG_GAMMA_EST: u64 = 0x55_06;

/// The multiplexer read-out: indexed when exactly one term is satisfied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GammaT {
    /// No term fully satisfied.
    ZeroStar,
    /// Two or more terms fully satisfied.
    OneStar,
    /// Exactly the `i`-th term satisfied (1-based).
    Index(u64),
}

/// The gadget selected for one multiplexer index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnateSubfnSpec {
    /// `x_{m1}` (first quarter split of indices).
    Dictator { m1: u32 },
    /// `¬x_{m2}`.
    AntiDictator { m2: u32 },
    /// `x_{j1} ⊕ x_{j2} ⊕ x_{j3} ⊕ negate`; `(j1, j2)` an edge of the
    /// hidden graph in function coordinates, `j3 ∈ {m1, m2}`, and
    /// `negate = (j3 == m2)`.
    TriParity { j1: u32, j2: u32, j3: u32, negate: bool },
}

/// Sample `count` independent uniform `term_size`-subsets of `m_core`.
pub fn sample_terms(
    m_core: &[u32],
    count: u64,
    term_size: u32,
    seed: u64,
) -> Result<Vec<Vec<u32>>> {
    if term_size as usize > m_core.len() {
        return Err(Error::OutOfRange {
            what: "term size",
            value: term_size as u64,
            min: 0,
            max: m_core.len() as u64,
        });
    }
    Ok((0..count)
        .map(|i| CounterRng::from_chain(seed, &[TAG_TERM, i]).subset(m_core, term_size as usize))
        .collect())
}

/// A lazily materialized hard function for unateness testing.
#[derive(Debug, Clone)]
pub struct UnateInstance {
    n: u32,
    m_set: Vec<u32>,
    m_bar: Vec<u32>,
    m1: u32,
    m2: u32,
    a_set: Vec<u32>,
    family: GraphFamily,
    term_size: u32,
    seed: u64,
    /// Seed of the term streams; equal to `seed` unless overridden so a
    /// family of instances can share terms while redrawing gadgets.
    term_seed: u64,
    graph: Graph,
}

impl UnateInstance {
    /// Build with explicit sets and an explicit term size (the default is
    /// `⌈√n⌉`; smaller sizes keep tiny `n` non-degenerate).
    #[allow(clippy::too_many_arguments)]
    pub fn with_sets(
        n: u32,
        mut m_set: Vec<u32>,
        m1: u32,
        m2: u32,
        a_set: Vec<u32>,
        family: GraphFamily,
        term_size: u32,
        seed: u64,
    ) -> Result<UnateInstance> {
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
        if m1 == m2
            || m_set.binary_search(&m1).is_err()
            || m_set.binary_search(&m2).is_err()
        {
            return Err(Error::Mismatch { what: "m1, m2 must be distinct elements of M" });
        }
        if term_size as usize > m_set.len() - 2 {
            return Err(Error::OutOfRange {
                what: "term size",
                value: term_size as u64,
                min: 0,
                max: (m_set.len() - 2) as u64,
            });
        }
        if term_size < 2 {
            // N = 2^s must split into a 3/4 : 1/4 index range.
            return Err(Error::OutOfRange { what: "term size", value: term_size as u64, min: 2, max: 63 });
        }
        let m_bar: Vec<u32> = (1..=n).filter(|v| m_set.binary_search(v).is_err()).collect();
        let mut a_sorted = a_set;
        a_sorted.sort_unstable();
        a_sorted.dedup();
        if a_sorted.len() != m_bar.len() / 2 {
            return Err(Error::Mismatch { what: "|A| must be half the complement of M" });
        }
        if a_sorted.iter().any(|v| m_bar.binary_search(v).is_err()) {
            return Err(Error::Mismatch { what: "A must be a subset of the complement of M" });
        }
        let relabel = |v: u32| m_bar.binary_search(&v).unwrap() as u32 + 1;
        let partition =
            Partition::new(m_bar.len() as u32, a_sorted.iter().map(|&v| relabel(v)).collect())?;
        let graph = build_graph(&partition, family);
        if graph.n_edges() == 0 {
            return Err(Error::EdgelessGraph);
        }
        Ok(UnateInstance {
            n,
            m_set,
            m_bar,
            m1,
            m2,
            a_set: a_sorted,
            family,
            term_size,
            seed,
            term_seed: seed,
            graph,
        })
    }

    /// Sample `M`, `m1`, `m2`, `A` uniformly with term size `⌈√n⌉`.
    pub fn sample(n: u32, family: GraphFamily, seed: u64) -> Result<UnateInstance> {
        UnateInstance::sample_with_term_size(n, family, ceil_sqrt(n as u64) as u32, seed)
    }

    /// Sample with an explicit term size override.
    pub fn sample_with_term_size(
        n: u32,
        family: GraphFamily,
        term_size: u32,
        seed: u64,
    ) -> Result<UnateInstance> {
        if n == 0 || n % 4 != 0 {
            return Err(Error::Divisibility { what: "n", value: n as u64, divisor: 4 });
        }
        let universe: Vec<u32> = (1..=n).collect();
        let m_set =
            CounterRng::from_chain(seed, &[TAG_SAMPLE_M]).subset(&universe, n as usize / 2);
        let pair = CounterRng::from_chain(seed, &[TAG_SAMPLE_M12]).subset(&m_set, 2);
        let m_bar: Vec<u32> = (1..=n).filter(|v| m_set.binary_search(v).is_err()).collect();
        let a_set = CounterRng::from_chain(seed, &[TAG_SAMPLE_A]).subset(&m_bar, m_bar.len() / 2);
        UnateInstance::with_sets(n, m_set, pair[0], pair[1], a_set, family, term_size, seed)
    }

    pub fn n(&self) -> u32 {
        self.n
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

    pub fn a_set(&self) -> &[u32] {
        &self.a_set
    }

    pub fn family(&self) -> GraphFamily {
        self.family
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn term_size(&self) -> u32 {
        self.term_size
    }

    /// Seed of the term streams (defaults to the instance seed).
    pub fn term_seed(&self) -> u64 {
        self.term_seed
    }

    /// Rekey the term streams without touching the gadget streams, so
    /// several instances can share one term list.
    pub fn with_term_seed(mut self, term_seed: u64) -> UnateInstance {
        self.term_seed = term_seed;
        self
    }

    /// The hidden graph, on vertices `1..=n/2` (relabeled `M̄`).
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Number of terms, `N = 2^s`.
    pub fn term_count(&self) -> u64 {
        1u64 << self.term_size
    }

    /// The core the terms are drawn from: `M ∖ {m1, m2}`, sorted.
    pub fn term_core(&self) -> Vec<u32> {
        self.m_set.iter().copied().filter(|&v| v != self.m1 && v != self.m2).collect()
    }

    /// Term `i` (1-based), regenerated deterministically on demand.
    pub fn term(&self, i: u64) -> Result<Vec<u32>> {
        let count = self.term_count();
        if i < 1 || i > count {
            return Err(Error::OutOfRange { what: "term index", value: i, min: 1, max: count });
        }
        Ok(CounterRng::from_chain(self.term_seed, &[TAG_TERM, i - 1])
            .subset(&self.term_core(), self.term_size as usize))
    }

    /// All terms, materialized (ascending index).
    pub fn terms(&self) -> Result<Vec<Vec<u32>>> {
        sample_terms(&self.term_core(), self.term_count(), self.term_size, self.term_seed)
    }

    /// The band half-width `⌊√n⌋` of the threshold clauses.
    pub fn band_half_width(&self) -> u32 {
        isqrt(self.n as u64) as u32
    }

    /// Whether `|x∩M|` lies in the multiplexer band
    /// `[n/4 − ⌊√n⌋, n/4 + ⌊√n⌋]`.
    pub fn in_band(&self, x: &Bits) -> bool {
        let w = x.weight_on(&self.m_set) as i64;
        let mid = self.n as i64 / 4;
        let half = self.band_half_width() as i64;
        (mid - half..=mid + half).contains(&w)
    }

    /// The multiplexer read-out for a point.
    pub fn gamma(&self, x: &Bits) -> GammaT {
        assert_eq!(x.len(), self.n as usize, "assignment arity mismatch");
        let core = self.term_core();
        let mut found: Option<u64> = None;
        let mut term = Vec::with_capacity(self.term_size as usize);
        for i in 0..self.term_count() {
            term.clear();
            term.extend(
                CounterRng::from_chain(self.term_seed, &[TAG_TERM, i])
                    .subset(&core, self.term_size as usize),
            );
            if term.iter().all(|&j| x.get(j as usize)) {
                if found.is_some() {
                    return GammaT::OneStar;
                }
                found = Some(i + 1);
            }
        }
        match found {
            Some(i) => GammaT::Index(i),
            None => GammaT::ZeroStar,
        }
    }

    /// The gadget for index `i ∈ [N]`; pure in `(seed, i)`.
    pub fn subfunction(&self, i: u64) -> Result<UnateSubfnSpec> {
        let count = self.term_count();
        if i < 1 || i > count {
            return Err(Error::OutOfRange {
                what: "subfunction index",
                value: i,
                min: 1,
                max: count,
            });
        }
        let mut rng = CounterRng::from_chain(self.seed, &[TAG_SUBFN, i - 1]);
        if i <= count / 4 * 3 {
            return Ok(if rng.next_bit() {
                UnateSubfnSpec::Dictator { m1: self.m1 }
            } else {
                UnateSubfnSpec::AntiDictator { m2: self.m2 }
            });
        }
        let edges = self.graph.edges();
        let (u, v) = edges[rng.below(edges.len() as u64) as usize];
        let j1 = self.m_bar[u as usize - 1];
        let j2 = self.m_bar[v as usize - 1];
        let j3 = if rng.next_bit() { self.m1 } else { self.m2 };
        Ok(UnateSubfnSpec::TriParity {
            j1: j1.min(j2),
            j2: j1.max(j2),
            j3,
            negate: j3 == self.m2,
        })
    }

    /// Evaluate the instance at a point.
    pub fn eval(&self, x: &Bits) -> bool {
        assert_eq!(x.len(), self.n as usize, "assignment arity mismatch");
        let w = x.weight_on(&self.m_set) as i64;
        let mid = self.n as i64 / 4;
        let half = self.band_half_width() as i64;
        if w > mid + half {
            return true;
        }
        if w < mid - half {
            return false;
        }
        match self.gamma(x) {
            GammaT::ZeroStar => false,
            GammaT::OneStar => true,
            GammaT::Index(i) => match self.subfunction(i).expect("index in range") {
                UnateSubfnSpec::Dictator { m1 } => x.get(m1 as usize),
                UnateSubfnSpec::AntiDictator { m2 } => !x.get(m2 as usize),
                UnateSubfnSpec::TriParity { j1, j2, j3, negate } => {
                    x.get(j1 as usize) ^ x.get(j2 as usize) ^ x.get(j3 as usize) ^ negate
                }
            },
        }
    }

    /// Materialize the full truth table (`n ≤ 24`).
    pub fn truth_table(&self) -> Result<TruthTable> {
        TruthTable::from_fn(self.n as usize, |x| self.eval(x))
    }

    /// Empirical estimate of `γ` — the probability that a uniform point is
    /// in the band AND indexes a unique term — with a binomial confidence
    /// half-width at the 95% level.
    pub fn estimate_gamma(&self, samples: u64) -> Result<GammaEstimate> {
        if samples < 1_000 {
            return Err(Error::OutOfRange {
                what: "gamma samples",
                value: samples,
                min: 1_000,
                max: u64::MAX,
            });
        }
        let mut rng = CounterRng::from_chain(self.seed, &[TAG_GAMMA_EST]);
        let mut hits = 0u64;
        let mut x = Bits::zeros(self.n as usize);
        for _ in 0..samples {
            for j in 1..=self.n as usize {
                x.set(j, rng.next_bit());
            }
            if self.in_band(&x) && matches!(self.gamma(&x), GammaT::Index(_)) {
                hits += 1;
            }
        }
        let p = hits as f64 / samples as f64;
        let half_width = 1.96 * sqrt_f64(p * (1.0 - p) / samples as f64);
        Ok(GammaEstimate { estimate: p, half_width, samples })
    }

    /// Exact `γ` by full enumeration (`n ≤ 20`).
    pub fn exact_gamma(&self) -> Result<ExactFraction> {
        if self.n > 20 {
            return Err(Error::Capacity {
                what: "gamma enumeration variables",
                requested: self.n as u64,
                cap: 20,
            });
        }
        let mut hits = 0u128;
        let mut x = Bits::zeros(self.n as usize);
        for idx in 0..1u64 << self.n {
            for j in 1..=self.n as usize {
                x.set(j, idx >> (self.n as usize - j) & 1 == 1);
            }
            if self.in_band(&x) && matches!(self.gamma(&x), GammaT::Index(_)) {
                hits += 1;
            }
        }
        Ok(ExactFraction::new(hits, 1u128 << self.n))
    }

    /// The unateness witness that repairs every 3-parity gadget to its
    /// closest monotone table under the orientation where `M ∪ {m1} ∪ S` is
    /// monotone and `{m2} ∪ (M̄ ∖ S)` is anti-monotone.
    pub fn witness(&self, s: &[u32]) -> Result<UnateWitness<'_>> {
        let mut s_sorted = s.to_vec();
        s_sorted.sort_unstable();
        s_sorted.dedup();
        if s_sorted.iter().any(|v| self.m_bar.binary_search(v).is_err()) {
            return Err(Error::Mismatch { what: "S must be a subset of the complement of M" });
        }
        Ok(UnateWitness {
            instance: self,
            s: s_sorted,
            repair_even: closest_monotone_3cube(PARITY3),
            repair_odd: closest_monotone_3cube(!PARITY3),
        })
    }
}

/// Empirical `γ` estimate with a 95% binomial confidence half-width.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaEstimate {
    pub estimate: f64,
    pub half_width: f64,
    pub samples: u64,
}

/// 3-variable parity as a packed 8-entry table; entry index is
/// `y1·4 + y2·2 + y3`, stored in bit `index`.
const PARITY3: u8 = 0b1001_0110;

/// Whether a packed 3-cube table is monotone.
fn is_monotone_3cube(t: u8) -> bool {
    for b in 0..8u8 {
        for bit in [4u8, 2, 1] {
            if b & bit == 0 {
                let lo = t >> b & 1;
                let hi = t >> (b | bit) & 1;
                if lo > hi {
                    return false;
                }
            }
        }
    }
    true
}

/// The closest monotone table to `t` on the 3-cube, breaking distance ties
/// by the smallest packed value (deterministic).
fn closest_monotone_3cube(t: u8) -> u8 {
    let mut best = 0u8; // the all-zeros table is monotone
    let mut best_dist = (t ^ best).count_ones();
    for cand in 1..=255u8 {
        if is_monotone_3cube(cand) {
            let d = (t ^ cand).count_ones();
            if d < best_dist {
                best = cand;
                best_dist = d;
            }
        }
    }
    best
}

/// The repaired, exactly unate companion of a [`UnateInstance`].
#[derive(Debug, Clone)]
pub struct UnateWitness<'a> {
    instance: &'a UnateInstance,
    s: Vec<u32>,
    /// Repair of plain 3-parity (uncut edges; 3/8 of the gadget cube moves).
    repair_even: u8,
    /// Repair of complemented 3-parity (cut edges; 1/4 moves — majority).
    repair_odd: u8,
}

impl UnateWitness<'_> {
    /// The repaired coordinate set, sorted.
    pub fn s_set(&self) -> &[u32] {
        &self.s
    }

    /// Orientation vector: bit `j` set iff coordinate `j` is anti-monotone
    /// for this witness (`{m2} ∪ (M̄ ∖ S)`).
    pub fn orientation(&self) -> Bits {
        let inst = self.instance;
        let mut r = Bits::zeros(inst.n as usize);
        r.set(inst.m2 as usize, true);
        for &j in inst.m_bar() {
            if self.s.binary_search(&j).is_err() {
                r.set(j as usize, true);
            }
        }
        r
    }

    /// Whether a function coordinate is anti-monotone under the orientation.
    fn anti(&self, j: u32) -> bool {
        if j == self.instance.m2 {
            return true;
        }
        self.instance.m_bar.binary_search(&j).is_ok() && self.s.binary_search(&j).is_err()
    }

    /// Per-gadget distance of the repair used for a 3-parity spec: 1/4 when
    /// the edge is cut by `S`, 3/8 otherwise.
    pub fn gadget_distance(&self, spec: &UnateSubfnSpec) -> Option<ExactFraction> {
        match *spec {
            UnateSubfnSpec::TriParity { j1, j2, .. } => {
                let cut = self.s.binary_search(&j1).is_ok() != self.s.binary_search(&j2).is_ok();
                Some(if cut {
                    ExactFraction::new(1, 4)
                } else {
                    ExactFraction::new(3, 8)
                })
            }
            _ => None,
        }
    }

    /// Evaluate the witness at a point.
    pub fn eval(&self, x: &Bits) -> bool {
        let inst = self.instance;
        assert_eq!(x.len(), inst.n as usize, "assignment arity mismatch");
        let w = x.weight_on(&inst.m_set) as i64;
        let mid = inst.n as i64 / 4;
        let half = inst.band_half_width() as i64;
        if w > mid + half {
            return true;
        }
        if w < mid - half {
            return false;
        }
        match inst.gamma(x) {
            GammaT::ZeroStar => false,
            GammaT::OneStar => true,
            GammaT::Index(i) => match inst.subfunction(i).expect("index in range") {
                UnateSubfnSpec::Dictator { m1 } => x.get(m1 as usize),
                UnateSubfnSpec::AntiDictator { m2 } => !x.get(m2 as usize),
                UnateSubfnSpec::TriParity { j1, j2, j3, .. } => {
                    // Reorient so the gadget becomes parity ⊕ c in y-space,
                    // then apply the precomputed monotone repair.
                    let r1 = self.anti(j1);
                    let r2 = self.anti(j2);
                    let r3 = self.anti(j3);
                    let y1 = x.get(j1 as usize) ^ r1;
                    let y2 = x.get(j2 as usize) ^ r2;
                    let y3 = x.get(j3 as usize) ^ r3;
                    // In y-space the gadget value is y1⊕y2⊕y3 ⊕ (r1⊕r2):
                    // the j3 reorientation cancels the built-in negation.
                    let table = if r1 ^ r2 { self.repair_odd } else { self.repair_even };
                    let idx = (y1 as u8) << 2 | (y2 as u8) << 1 | y3 as u8;
                    table >> idx & 1 == 1
                }
            },
        }
    }
}
