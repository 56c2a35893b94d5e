//! Exact brute-force distance oracles and an empirical total-variation
//! estimator.
//!
//! The exact oracles are deterministic and seed-free:
//!
//! * [`dist_to_kjunta_exact`] — minimum over variable subsets of the best
//!   junta on that subset, by coset counting;
//! * [`dist_to_monotone_exact`] — minimum Hamming fraction to any monotone
//!   function, solved as a minimum-cut / closure problem over the hypercube
//!   order (validated against exhaustive enumeration at tiny arity);
//! * [`dist_to_unate_exact`] — minimum over all orientations of the
//!   monotone distance of the reoriented function.
//!
//! [`tv_distance_empirical`] estimates the total-variation distance between
//! two seeded samplers over a finite outcome space, with a bootstrap
//! confidence interval.

use alloc::vec;
use alloc::vec::Vec;

use crate::boolfn::{Bits, TruthTable};
use crate::error::Result;
use crate::frac::ExactFraction;
use crate::rng::CounterRng;
use crate::{sqrt_f64, Error};

/// Arity cap for the public monotone-distance oracle.
pub const MONOTONE_CAP: usize = 14;
/// Arity cap for the oriented monotone-distance variant.
pub const MONOTONE_ORIENTED_CAP: usize = 16;
/// Arity cap for the unate-distance oracle (2^n orientations, one cut each).
pub const UNATE_CAP: usize = 12;
/// Arity cap for the k-junta-distance oracle.
pub const KJUNTA_CAP: usize = 16;
/// Largest tabulated outcome space for the TV estimator.
pub const TV_CELL_CAP: u64 = 1 << 20;

/// Exact distance of `f` to the closest `k`-junta.
///
/// For every `k`-subset `J` of the variables, the best junta on `J` is
/// determined coset-wise: each assignment to `J` contributes
/// `min(#zeros, #ones)` over its coset. The oracle returns the minimum over
/// all subsets, as a fraction of `2^n`.
pub fn dist_to_kjunta_exact(f: &TruthTable, k: usize) -> Result<ExactFraction> {
    let n = f.n_vars();
    if n > KJUNTA_CAP {
        return Err(Error::Capacity {
            what: "k-junta distance variables",
            requested: n as u64,
            cap: KJUNTA_CAP as u64,
        });
    }
    if k >= n {
        return Ok(ExactFraction::ZERO);
    }
    let entries = f.n_entries();
    let mut best = u64::MAX;
    // Iterate k-subsets as bitmasks over variable positions (bit 0 = x_1).
    let mut mask: u32 = if k == 0 { 0 } else { (1u32 << k) - 1 };
    loop {
        // Count ones per coset: the coset key packs the bits of the table
        // index at the variable positions in `mask`.
        let cosets = 1usize << k;
        let coset_size = (entries / cosets) as u64;
        let mut ones = vec![0u64; cosets];
        for idx in 0..entries {
            let mut key = 0usize;
            let mut out = 0;
            for pos in 0..n {
                if mask >> pos & 1 == 1 {
                    // Variable x_{pos+1} occupies index bit n-1-pos.
                    key |= ((idx >> (n - 1 - pos)) & 1) << out;
                    out += 1;
                }
            }
            ones[key] += f.get(idx) as u64;
        }
        let mismatches: u64 = ones.iter().map(|&c| c.min(coset_size - c)).sum();
        best = best.min(mismatches);
        if k == 0 || best == 0 {
            break;
        }
        // Next k-subset in colex order (Gosper's hack).
        let c = mask & mask.wrapping_neg();
        let r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
        if mask >= 1u32 << n {
            break;
        }
    }
    Ok(ExactFraction::new(best as u128, entries as u128))
}

/// Exact distance of `f` to the closest monotone function (`n ≤ 14`).
pub fn dist_to_monotone_exact(f: &TruthTable) -> Result<ExactFraction> {
    let n = f.n_vars();
    if n > MONOTONE_CAP {
        return Err(Error::Capacity {
            what: "monotone distance variables",
            requested: n as u64,
            cap: MONOTONE_CAP as u64,
        });
    }
    Ok(monotone_distance_mincut(f, 0))
}

/// Exact distance of `x ↦ f(x ⊕ r)` to the closest monotone function
/// (`n ≤ 16`); zero iff `f` is unate with orientation `r`.
pub fn dist_to_monotone_oriented(f: &TruthTable, r: &Bits) -> Result<ExactFraction> {
    let n = f.n_vars();
    if n > MONOTONE_ORIENTED_CAP {
        return Err(Error::Capacity {
            what: "oriented monotone distance variables",
            requested: n as u64,
            cap: MONOTONE_ORIENTED_CAP as u64,
        });
    }
    if r.len() != n {
        return Err(Error::Mismatch { what: "orientation arity" });
    }
    // Pack r in index convention: x_1 is the most significant index bit.
    let mut r_idx = 0usize;
    for j in 1..=n {
        r_idx = (r_idx << 1) | r.get(j) as usize;
    }
    Ok(monotone_distance_mincut(f, r_idx))
}

/// Exact distance of `f` to the closest unate function (`n ≤ 12`):
/// minimum over all `2^n` orientations of the reoriented monotone distance.
pub fn dist_to_unate_exact(f: &TruthTable) -> Result<ExactFraction> {
    let n = f.n_vars();
    if n > UNATE_CAP {
        return Err(Error::Capacity {
            what: "unate distance variables",
            requested: n as u64,
            cap: UNATE_CAP as u64,
        });
    }
    let entries = f.n_entries() as u128;
    let mut best = ExactFraction::ONE;
    for r_idx in 0..1usize << n {
        let limit = (best.numerator() * entries / best.denominator()) as u64;
        if let Some(d) = monotone_distance_mincut_bounded(f, r_idx, limit) {
            best = d;
            if best.is_zero() {
                break;
            }
        }
    }
    Ok(best)
}

/// Exhaustive monotone distance by enumerating every monotone function
/// (`n ≤ 4`); the independent ground truth for the min-cut path.
pub fn dist_to_monotone_enumerated(f: &TruthTable) -> Result<ExactFraction> {
    let n = f.n_vars();
    if n > 4 {
        return Err(Error::Capacity {
            what: "monotone enumeration variables",
            requested: n as u64,
            cap: 4,
        });
    }
    let entries = f.n_entries();
    let mut f_bits: u32 = 0;
    for idx in 0..entries {
        f_bits |= (f.get(idx) as u32) << idx;
    }
    let mut best = u32::MAX;
    'cand: for cand in 0u32..1u32 << entries {
        // Monotone iff every cover pair of the index order respects cand.
        // Index bit b of x_j is at position n-j, so supersets of the index's
        // variable-set are reached by setting index bits.
        for idx in 0..entries {
            for bit_pos in 0..n {
                let hi = idx | 1 << bit_pos;
                if hi != idx && (cand >> idx & 1) > (cand >> hi & 1) {
                    continue 'cand;
                }
            }
        }
        best = best.min((cand ^ f_bits).count_ones());
        if best == 0 {
            break;
        }
    }
    Ok(ExactFraction::new(best as u128, entries as u128))
}

/// Minimum mismatches to an up-set of the (reoriented) hypercube, via
/// maximum flow: source → 1-points (unit capacity), 0-points → sink (unit),
/// and infinite-capacity order edges along each coordinate.
fn monotone_distance_mincut(f: &TruthTable, r_idx: usize) -> ExactFraction {
    monotone_distance_mincut_bounded(f, r_idx, u64::MAX)
        .expect("unbounded cut cannot hit the limit")
}

/// As [`monotone_distance_mincut`], but abandons the computation (returning
/// `None`) as soon as the flow reaches `limit` mismatches — useful when
/// minimizing over many orientations with a running best.
fn monotone_distance_mincut_bounded(
    f: &TruthTable,
    r_idx: usize,
    limit: u64,
) -> Option<ExactFraction> {
    let n = f.n_vars();
    let entries = f.n_entries();
    let source = entries;
    let sink = entries + 1;
    let mut net = Dinic::new(entries + 2);
    for idx in 0..entries {
        if f.get(idx ^ r_idx) {
            net.add_edge(source, idx, 1);
        } else {
            net.add_edge(idx, sink, 1);
        }
        for bit_pos in 0..n {
            if idx & 1 << bit_pos == 0 {
                net.add_edge(idx, idx | 1 << bit_pos, u32::MAX);
            }
        }
    }
    let flow = net.max_flow(source, sink, limit);
    if flow >= limit {
        None
    } else {
        Some(ExactFraction::new(flow as u128, entries as u128))
    }
}

/// Bounded variant of [`dist_to_monotone_oriented`]: returns `None` as
/// soon as the distance is known to be at least `cap` mismatched points
/// (i.e. `cap / 2^n` in distance units), saving the remaining work.
pub fn dist_to_monotone_oriented_bounded(
    f: &TruthTable,
    r: &Bits,
    cap: u64,
) -> Result<Option<ExactFraction>> {
    let n = f.n_vars();
    if n > MONOTONE_ORIENTED_CAP {
        return Err(Error::Capacity {
            what: "oriented monotone distance variables",
            requested: n as u64,
            cap: MONOTONE_ORIENTED_CAP as u64,
        });
    }
    if r.len() != n {
        return Err(Error::Mismatch { what: "orientation arity" });
    }
    let mut r_idx = 0usize;
    for j in 1..=n {
        r_idx = (r_idx << 1) | r.get(j) as usize;
    }
    Ok(monotone_distance_mincut_bounded(f, r_idx, cap))
}

/// Dinic's maximum-flow algorithm on an explicit edge list.
struct Dinic {
    // Edges stored in pairs: edge 2e and its reverse 2e+1.
    to: Vec<u32>,
    cap: Vec<u32>,
    head: Vec<Vec<u32>>,
    level: Vec<i32>,
    iter: Vec<usize>,
}

impl Dinic {
    fn new(nodes: usize) -> Dinic {
        Dinic {
            to: Vec::new(),
            cap: Vec::new(),
            head: vec![Vec::new(); nodes],
            level: vec![0; nodes],
            iter: vec![0; nodes],
        }
    }

    fn add_edge(&mut self, from: usize, to: usize, cap: u32) {
        let e = self.to.len() as u32;
        self.head[from].push(e);
        self.to.push(to as u32);
        self.cap.push(cap);
        self.head[to].push(e + 1);
        self.to.push(from as u32);
        self.cap.push(0);
    }

    fn bfs(&mut self, source: usize, sink: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = -1);
        self.level[source] = 0;
        let mut queue = alloc::collections::VecDeque::new();
        queue.push_back(source);
        while let Some(v) = queue.pop_front() {
            for &e in &self.head[v] {
                let u = self.to[e as usize] as usize;
                if self.cap[e as usize] > 0 && self.level[u] < 0 {
                    self.level[u] = self.level[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        self.level[sink] >= 0
    }

    fn dfs(&mut self, v: usize, sink: usize, pushed: u32) -> u32 {
        if v == sink {
            return pushed;
        }
        while self.iter[v] < self.head[v].len() {
            let e = self.head[v][self.iter[v]] as usize;
            let u = self.to[e] as usize;
            if self.cap[e] > 0 && self.level[u] == self.level[v] + 1 {
                let d = self.dfs(u, sink, pushed.min(self.cap[e]));
                if d > 0 {
                    self.cap[e] -= d;
                    self.cap[e ^ 1] += d;
                    return d;
                }
            }
            self.iter[v] += 1;
        }
        0
    }

    /// Maximum flow, stopping early once `limit` is reached (the exact
    /// value past the limit is never needed by callers).
    fn max_flow(&mut self, source: usize, sink: usize, limit: u64) -> u64 {
        let mut flow = 0u64;
        while flow < limit && self.bfs(source, sink) {
            self.iter.iter_mut().for_each(|i| *i = 0);
            loop {
                let pushed = self.dfs(source, sink, u32::MAX);
                if pushed == 0 {
                    break;
                }
                flow += pushed as u64;
                if flow >= limit {
                    return flow;
                }
            }
        }
        flow
    }
}

/// Empirical total-variation estimate with a bootstrap confidence interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TvEstimate {
    /// `½ Σ |p̂₁ − p̂₂|` over the tabulated outcome space.
    pub estimate: f64,
    /// 95% half-width from bootstrap resampling of both samplers.
    pub half_width: f64,
    pub samples: u64,
}

/// Empirical total-variation distance between two samplers over outcomes
/// `0..cells`. Each sampler is called once per run index; the bootstrap
/// resamples both empirical distributions `bootstrap` times.
pub fn tv_distance_empirical(
    mut sample1: impl FnMut(u64) -> u64,
    mut sample2: impl FnMut(u64) -> u64,
    cells: u64,
    samples: u64,
    bootstrap: u32,
    seed: u64,
) -> Result<TvEstimate> {
    if cells == 0 || cells > TV_CELL_CAP {
        return Err(Error::Capacity { what: "TV outcome cells", requested: cells, cap: TV_CELL_CAP });
    }
    if samples < 10_000 {
        return Err(Error::OutOfRange {
            what: "TV samples",
            value: samples,
            min: 10_000,
            max: u64::MAX,
        });
    }
    let mut counts1 = vec![0u64; cells as usize];
    let mut counts2 = vec![0u64; cells as usize];
    for i in 0..samples {
        let o1 = sample1(i);
        let o2 = sample2(i);
        assert!(o1 < cells && o2 < cells, "sampler outcome out of range");
        counts1[o1 as usize] += 1;
        counts2[o2 as usize] += 1;
    }
    let estimate = tv_of_counts(&counts1, &counts2, samples);
    // Bootstrap: multinomial resampling of each empirical distribution via
    // inverse-CDF lookups into cumulative counts.
    let cum1 = cumulative(&counts1);
    let cum2 = cumulative(&counts2);
    let mut rng = CounterRng::from_chain(seed, &[0x74_76]);
    let mut devs = 0.0f64;
    let mut re1 = vec![0u64; cells as usize];
    let mut re2 = vec![0u64; cells as usize];
    for _ in 0..bootstrap {
        re1.iter_mut().for_each(|c| *c = 0);
        re2.iter_mut().for_each(|c| *c = 0);
        for _ in 0..samples {
            re1[bucket_of(&cum1, rng.below(samples))] += 1;
            re2[bucket_of(&cum2, rng.below(samples))] += 1;
        }
        let tv = tv_of_counts(&re1, &re2, samples);
        devs += (tv - estimate) * (tv - estimate);
    }
    let half_width = if bootstrap > 1 {
        1.96 * sqrt_f64(devs / (bootstrap as f64 - 1.0))
    } else {
        0.0
    };
    Ok(TvEstimate { estimate, half_width, samples })
}

fn tv_of_counts(c1: &[u64], c2: &[u64], samples: u64) -> f64 {
    let abs_sum: u64 = c1.iter().zip(c2).map(|(&a, &b)| a.abs_diff(b)).sum();
    abs_sum as f64 / (2.0 * samples as f64)
}

fn cumulative(counts: &[u64]) -> Vec<u64> {
    let mut cum = Vec::with_capacity(counts.len());
    let mut acc = 0u64;
    for &c in counts {
        acc += c;
        cum.push(acc);
    }
    cum
}

/// Index of the first cumulative entry exceeding `u` (0-based draw).
fn bucket_of(cum: &[u64], u: u64) -> usize {
    cum.partition_point(|&c| c <= u)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(n: usize, f: impl FnMut(&Bits) -> bool) -> TruthTable {
        TruthTable::from_fn(n, f).unwrap()
    }

    #[test]
    fn kjunta_examples() {
        let xor2 = table(2, |x| x.get(1) ^ x.get(2));
        assert_eq!(dist_to_kjunta_exact(&xor2, 2).unwrap(), ExactFraction::ZERO);
        assert_eq!(dist_to_kjunta_exact(&xor2, 1).unwrap(), ExactFraction::new(1, 2));
        let maj3 = table(3, |x| x.weight() >= 2);
        assert_eq!(dist_to_kjunta_exact(&maj3, 2).unwrap(), ExactFraction::new(1, 4));
        assert_eq!(dist_to_kjunta_exact(&maj3, 3).unwrap(), ExactFraction::ZERO);
        // k = 0: best constant.
        let or2 = table(2, |x| x.get(1) | x.get(2));
        assert_eq!(dist_to_kjunta_exact(&or2, 0).unwrap(), ExactFraction::new(1, 4));
    }

    #[test]
    fn kjunta_monotone_in_k() {
        for f_seed in 0..20u64 {
            let mut rng = CounterRng::new(f_seed);
            let f = table(5, |_| rng.next_bit());
            let mut prev = ExactFraction::ONE;
            for k in 0..=5 {
                let d = dist_to_kjunta_exact(&f, k).unwrap();
                assert!(d <= prev, "k-junta distance increased at k={k}");
                prev = d;
            }
            assert!(prev.is_zero());
        }
    }

    #[test]
    fn monotone_examples() {
        let or3 = table(3, |x| x.get(1) | x.get(2) | x.get(3));
        assert_eq!(dist_to_monotone_exact(&or3).unwrap(), ExactFraction::ZERO);
        let not1 = table(1, |x| !x.get(1));
        assert_eq!(dist_to_monotone_exact(&not1).unwrap(), ExactFraction::new(1, 2));
        let xor2 = table(2, |x| x.get(1) ^ x.get(2));
        assert_eq!(dist_to_monotone_exact(&xor2).unwrap(), ExactFraction::new(1, 4));
    }

    #[test]
    fn mincut_matches_enumeration_exhaustively_at_n3() {
        for bits in 0u32..256 {
            let f = table(3, |x| {
                let idx = ((x.get(1) as u32) << 2) | ((x.get(2) as u32) << 1) | x.get(3) as u32;
                bits >> idx & 1 == 1
            });
            assert_eq!(
                dist_to_monotone_exact(&f).unwrap(),
                dist_to_monotone_enumerated(&f).unwrap(),
                "table {bits:#010b}"
            );
        }
    }

    #[test]
    fn mincut_matches_enumeration_random_n4() {
        for f_seed in 0..100u64 {
            let mut rng = CounterRng::new(0xd15e ^ f_seed);
            let f = table(4, |_| rng.next_bit());
            assert_eq!(
                dist_to_monotone_exact(&f).unwrap(),
                dist_to_monotone_enumerated(&f).unwrap(),
                "seed {f_seed}"
            );
        }
    }

    #[test]
    fn unate_examples_and_bound() {
        let not1 = table(1, |x| !x.get(1));
        assert_eq!(dist_to_unate_exact(&not1).unwrap(), ExactFraction::ZERO);
        let xor2 = table(2, |x| x.get(1) ^ x.get(2));
        assert_eq!(dist_to_unate_exact(&xor2).unwrap(), ExactFraction::new(1, 4));
        let par3 = table(3, |x| x.weight() % 2 == 1);
        assert_eq!(dist_to_unate_exact(&par3).unwrap(), ExactFraction::new(1, 4));
        for f_seed in 0..20u64 {
            let mut rng = CounterRng::new(0xfade ^ f_seed);
            let f = table(4, |_| rng.next_bit());
            assert!(dist_to_unate_exact(&f).unwrap() <= dist_to_monotone_exact(&f).unwrap());
        }
    }

    #[test]
    fn oriented_variant_consistency() {
        let not1 = table(1, |x| !x.get(1));
        let r = Bits::from_ones(1, &[1]);
        assert_eq!(dist_to_monotone_oriented(&not1, &r).unwrap(), ExactFraction::ZERO);
        assert_eq!(
            dist_to_monotone_oriented(&not1, &Bits::zeros(1)).unwrap(),
            dist_to_monotone_exact(&not1).unwrap()
        );
    }

    #[test]
    fn capacity_caps() {
        let f = table(4, |x| x.get(1));
        assert!(dist_to_kjunta_exact(&f, 1).is_ok());
        let big = TruthTable::new_const(15, false).unwrap();
        assert!(dist_to_monotone_exact(&big).is_err());
        let big_u = TruthTable::new_const(13, false).unwrap();
        assert!(dist_to_unate_exact(&big_u).is_err());
    }

    #[test]
    fn tv_examples() {
        // Identical seeded samplers → exactly 0.
        let s = |i: u64| CounterRng::new(i).next_u64() % 4;
        let est = tv_distance_empirical(s, s, 4, 10_000, 50, 1).unwrap();
        assert_eq!(est.estimate, 0.0);
        // Ber(0) vs Ber(1) → 1.
        let est = tv_distance_empirical(|_| 0, |_| 1, 2, 10_000, 50, 2).unwrap();
        assert_eq!(est.estimate, 1.0);
        // Independent fair coins → small.
        let c1 = |i: u64| CounterRng::from_chain(5, &[i]).next_bit() as u64;
        let c2 = |i: u64| CounterRng::from_chain(6, &[i]).next_bit() as u64;
        let est = tv_distance_empirical(c1, c2, 2, 100_000, 50, 3).unwrap();
        assert!(est.estimate <= 0.01, "tv {}", est.estimate);
        assert!(est.half_width > 0.0);
    }
}
