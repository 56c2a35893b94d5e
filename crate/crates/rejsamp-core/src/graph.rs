//! Graphs on `[n]`, the two hard families, edge counting, and both `chi`
//! parameters (exact, via Gray-code brute force or closed forms).

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Result;
use crate::frac::ExactFraction;
use crate::rng::CounterRng;
use crate::Error;

/// The two hard graph families over a hidden half-partition `A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFamily {
    /// Union of two disjoint cliques, `K_A ∪ K_Ā`.
    TwoCliques,
    /// Complete bipartite graph `K_{A,Ā}`.
    CompleteBipartite,
}

impl GraphFamily {
    pub fn as_str(&self) -> &'static str {
        match self {
            GraphFamily::TwoCliques => "g1",
            GraphFamily::CompleteBipartite => "g2",
        }
    }
}

/// A designated half-partition of `[n]`: the hidden side `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    n: u32,
    a: Vec<u32>,
    in_a: Vec<u64>,
}

impl Partition {
    /// Build from an explicit side `A` (sorted, deduplicated internally).
    pub fn new(n: u32, mut a: Vec<u32>) -> Result<Partition> {
        if n == 0 || n % 2 != 0 {
            return Err(Error::Divisibility { what: "n_vertices", value: n as u64, divisor: 2 });
        }
        a.sort_unstable();
        a.dedup();
        for &v in &a {
            if v < 1 || v > n {
                return Err(Error::InvalidVertex { vertex: v, n });
            }
        }
        let mut in_a = vec![0u64; (n as usize).div_ceil(64)];
        for &v in &a {
            in_a[(v as usize - 1) / 64] |= 1 << ((v as usize - 1) % 64);
        }
        Ok(Partition { n, a, in_a })
    }

    pub fn n_vertices(&self) -> u32 {
        self.n
    }

    /// The side `A`, sorted ascending.
    pub fn side_a(&self) -> &[u32] {
        &self.a
    }

    /// The complement side, sorted ascending.
    pub fn side_a_bar(&self) -> Vec<u32> {
        (1..=self.n).filter(|&v| !self.contains(v)).collect()
    }

    #[inline]
    pub fn contains(&self, v: u32) -> bool {
        let i = v as usize - 1;
        self.in_a[i / 64] >> (i % 64) & 1 == 1
    }
}

/// Uniformly random `n/2`-subset of `[n]` under the seeded generator.
pub fn sample_partition(n: u32, seed: u64) -> Result<Partition> {
    if n == 0 || n % 2 != 0 {
        return Err(Error::Divisibility { what: "n_vertices", value: n as u64, divisor: 2 });
    }
    let universe: Vec<u32> = (1..=n).collect();
    let mut rng = CounterRng::from_chain(seed, &[u64::from_le_bytes(*b"partitio")]);
    let a = rng.subset(&universe, n as usize / 2);
    Partition::new(n, a)
}

/// Undirected simple graph on `[n]`: no self-loops, no duplicate edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: u32,
    edges: Vec<(u32, u32)>,
    adj: Vec<Vec<u32>>,
}

impl Graph {
    /// Build from an edge list; endpoints are normalized to `u < v`,
    /// duplicates and self-loops rejected.
    pub fn new(n: u32, raw_edges: Vec<(u32, u32)>) -> Result<Graph> {
        let mut edges = Vec::with_capacity(raw_edges.len());
        for (a, b) in raw_edges {
            for v in [a, b] {
                if v < 1 || v > n {
                    return Err(Error::InvalidVertex { vertex: v, n });
                }
            }
            if a == b {
                return Err(Error::Invalid(alloc::format!("self-loop at vertex {a}")));
            }
            edges.push((a.min(b), a.max(b)));
        }
        edges.sort_unstable();
        if edges.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Invalid(alloc::string::String::from("duplicate edge")));
        }
        let mut adj = vec![Vec::new(); n as usize + 1];
        for &(u, v) in &edges {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        Ok(Graph { n, edges, adj })
    }

    pub fn n_vertices(&self) -> u32 {
        self.n
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    /// Edges sorted ascending, each with `u < v`.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }
}

/// Materialize a family member over a partition.
///
/// `TwoCliques` has `2·C(n/2, 2)` edges, `CompleteBipartite` has `(n/2)²`
/// (for `|A| = n/2`).
pub fn build_graph(partition: &Partition, family: GraphFamily) -> Graph {
    let n = partition.n_vertices();
    let a = partition.side_a();
    let a_bar = partition.side_a_bar();
    let mut edges = Vec::new();
    match family {
        GraphFamily::TwoCliques => {
            for side in [a, &a_bar[..]] {
                for i in 0..side.len() {
                    for j in i + 1..side.len() {
                        edges.push((side[i], side[j]));
                    }
                }
            }
        }
        GraphFamily::CompleteBipartite => {
            for &u in a {
                for &v in &a_bar {
                    edges.push((u, v));
                }
            }
        }
    }
    Graph::new(n, edges).expect("family edges are valid by construction")
}

/// Number of edges with one endpoint in `s1` and the other in `s2`,
/// counting each unordered edge once when `s1 == s2`.
pub fn edges_between(g: &Graph, s1: &[u32], s2: &[u32]) -> Result<u64> {
    let n = g.n_vertices();
    let mut mask1 = vec![0u64; (n as usize).div_ceil(64)];
    let mut mask2 = vec![0u64; (n as usize).div_ceil(64)];
    for (set, mask) in [(s1, &mut mask1), (s2, &mut mask2)] {
        for &v in set {
            if v < 1 || v > n {
                return Err(Error::InvalidVertex { vertex: v, n });
            }
            mask[(v as usize - 1) / 64] |= 1 << ((v as usize - 1) % 64);
        }
    }
    let test = |mask: &[u64], v: u32| mask[(v as usize - 1) / 64] >> ((v as usize - 1) % 64) & 1 == 1;
    let mut count = 0u64;
    for &(u, v) in g.edges() {
        if (test(&mask1, u) && test(&mask2, v)) || (test(&mask1, v) && test(&mask2, u)) {
            count += 1;
        }
    }
    Ok(count)
}

/// Vertex cap for the Gray-code brute-force `chi` paths.
pub const CHI_BRUTE_CAP: u32 = 24;

/// Shared Gray-code subset sweep. For every `S ⊆ V` the callback receives
/// `(popcount(S), edges inside S, edges inside the complement)`.
fn sweep_subsets(g: &Graph, mut visit: impl FnMut(u32, u64, u64)) -> Result<()> {
    let n = g.n_vertices();
    if g.n_edges() == 0 {
        return Err(Error::EdgelessGraph);
    }
    if n > CHI_BRUTE_CAP {
        return Err(Error::Capacity {
            what: "brute-force chi vertex count",
            requested: n as u64,
            cap: CHI_BRUTE_CAP as u64,
        });
    }
    // Adjacency as 24-bit masks: incremental O(1) updates per Gray-code flip.
    let mut adj_mask = vec![0u32; n as usize];
    for &(u, v) in g.edges() {
        adj_mask[u as usize - 1] |= 1 << (v - 1);
        adj_mask[v as usize - 1] |= 1 << (u - 1);
    }
    let m = g.n_edges() as u64;
    let mut s_mask: u32 = 0;
    let mut inside: u64 = 0; // edges with both endpoints in S
    let mut outside: u64 = m; // edges with both endpoints outside S
    visit(0, inside, outside);
    let total: u64 = 1 << n;
    for i in 1..total {
        let bit = i.trailing_zeros();
        let v_mask = 1u32 << bit;
        let deg = adj_mask[bit as usize].count_ones() as u64;
        let nbrs_in_s;
        if s_mask & v_mask == 0 {
            // v enters S.
            nbrs_in_s = (adj_mask[bit as usize] & s_mask).count_ones() as u64;
            inside += nbrs_in_s;
            outside -= deg - nbrs_in_s;
            s_mask |= v_mask;
        } else {
            // v leaves S.
            s_mask &= !v_mask;
            nbrs_in_s = (adj_mask[bit as usize] & s_mask).count_ones() as u64;
            inside -= nbrs_in_s;
            outside += deg - nbrs_in_s;
        }
        visit(s_mask.count_ones(), inside, outside);
    }
    Ok(())
}

/// Junta-form `chi`: minimum over `S ⊆ V`, `|S| ≥ min_size`, of the fraction
/// of edges adjacent to `S` (i.e. `(E(S,S) + E(S,S̄)) / |E|`), exact.
///
/// Brute force, capped at [`CHI_BRUTE_CAP`] vertices; for the hard families
/// at any size use [`chi_junta_family`].
pub fn chi_junta(g: &Graph, min_size: u32) -> Result<ExactFraction> {
    let m = g.n_edges() as u64;
    let mut best = m;
    sweep_subsets(g, |size, _inside, outside| {
        if size >= min_size {
            // edges adjacent to S = all minus those entirely outside S
            best = best.min(m - outside);
        }
    })?;
    Ok(ExactFraction::new(best as u128, m as u128))
}

/// Unate-form `chi`: one minus the max-cut fraction, i.e. the minimum over
/// all `S ⊆ V` of `(E(S,S) + E(S̄,S̄)) / |E|`, exact.
pub fn chi_unate(g: &Graph) -> Result<ExactFraction> {
    let m = g.n_edges() as u64;
    let mut best = m;
    sweep_subsets(g, |_size, inside, outside| {
        best = best.min(inside + outside);
    })?;
    Ok(ExactFraction::new(best as u128, m as u128))
}

/// Closed-form junta `chi` for a family member on `n` vertices with
/// `min_size = n/2`: `1/2` for two half-cliques, and
/// `1 − ⌈n/4⌉·⌊n/4⌋ / (n/2)²` for the complete bipartite graph (which is
/// `3/4` whenever `4 | n`).
pub fn chi_junta_family(family: GraphFamily, n: u32) -> Result<ExactFraction> {
    if n == 0 || n % 2 != 0 {
        return Err(Error::Divisibility { what: "n_vertices", value: n as u64, divisor: 2 });
    }
    let half = (n / 2) as u128;
    match family {
        GraphFamily::TwoCliques => {
            if half < 2 {
                return Err(Error::EdgelessGraph);
            }
            // The optimal S is one whole clique: it misses exactly the other
            // clique's edges, and no half-sized S can miss more than C(n/2,2).
            Ok(ExactFraction::new(1, 2))
        }
        GraphFamily::CompleteBipartite => {
            // The complement of the optimal S splits evenly across the sides,
            // leaving ⌈n/4⌉·⌊n/4⌋ of the (n/2)² edges untouched.
            let missed = (n as u128 + 2) / 4 * (n as u128 / 4);
            Ok(ExactFraction::new(half * half - missed, half * half))
        }
    }
}

/// Closed-form unate `chi` for a family member on `n` vertices: `0` for the
/// complete bipartite graph; for two `m`-cliques (`m = n/2`) the max cut
/// bisects each clique, giving `1 − ⌈m/2⌉·⌊m/2⌋ / C(m,2)`.
pub fn chi_unate_family(family: GraphFamily, n: u32) -> Result<ExactFraction> {
    if n == 0 || n % 2 != 0 {
        return Err(Error::Divisibility { what: "n_vertices", value: n as u64, divisor: 2 });
    }
    match family {
        GraphFamily::TwoCliques => {
            let m = (n / 2) as u128;
            if m < 2 {
                return Err(Error::EdgelessGraph);
            }
            let clique_edges = m * (m - 1) / 2;
            let cut_per_clique = (m + 1) / 2 * (m / 2);
            Ok(ExactFraction::new(clique_edges - cut_per_clique, clique_edges))
        }
        GraphFamily::CompleteBipartite => Ok(ExactFraction::ZERO),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(n: u32, a: &[u32]) -> Partition {
        Partition::new(n, a.to_vec()).unwrap()
    }

    #[test]
    fn partition_sampling_is_exact_half() {
        for n in [2u32, 8, 100] {
            let p = sample_partition(n, 99).unwrap();
            assert_eq!(p.side_a().len() as u32, n / 2);
        }
        assert!(sample_partition(7, 0).is_err());
    }

    #[test]
    fn partition_membership_frequency() {
        // Each vertex lands in A with frequency 1/2 ± 0.01 over many draws.
        let n = 1000u32;
        let draws = 100_000u64;
        let mut freq = vec![0u64; n as usize + 1];
        for t in 0..draws {
            let p = sample_partition(n, crate::rng::derive_seed(5, t)).unwrap();
            for &v in p.side_a() {
                freq[v as usize] += 1;
            }
        }
        for v in 1..=n as usize {
            let p = freq[v] as f64 / draws as f64;
            assert!((p - 0.5).abs() < 0.01, "vertex {v}: {p}");
        }
    }

    #[test]
    fn build_graph_forced_small_cases() {
        let p = part(4, &[1, 2]);
        let g1 = build_graph(&p, GraphFamily::TwoCliques);
        assert_eq!(g1.edges(), &[(1, 2), (3, 4)]);
        let g2 = build_graph(&p, GraphFamily::CompleteBipartite);
        assert_eq!(g2.edges(), &[(1, 3), (1, 4), (2, 3), (2, 4)]);
    }

    #[test]
    fn edge_counts_match_formulas() {
        for n in [4u32, 8, 12, 20, 60] {
            let p = sample_partition(n, n as u64).unwrap();
            let h = (n / 2) as usize;
            assert_eq!(build_graph(&p, GraphFamily::TwoCliques).n_edges(), h * (h - 1));
            assert_eq!(build_graph(&p, GraphFamily::CompleteBipartite).n_edges(), h * h);
        }
    }

    #[test]
    fn edges_between_examples() {
        let k4 = Graph::new(4, vec![(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap();
        let all = [1, 2, 3, 4];
        assert_eq!(edges_between(&k4, &all, &all).unwrap(), 6);

        let p = part(4, &[1, 2]);
        let g2 = build_graph(&p, GraphFamily::CompleteBipartite);
        assert_eq!(edges_between(&g2, &[1], &[3, 4]).unwrap(), 2);

        let p8 = part(8, &[1, 2, 3, 4]);
        let g1 = build_graph(&p8, GraphFamily::TwoCliques);
        assert_eq!(edges_between(&g1, &[1, 2, 3, 4], &[5, 6, 7, 8]).unwrap(), 0);
        assert_eq!(
            edges_between(&g1, &[1, 2, 3, 4, 5, 6, 7, 8], &[1, 2, 3, 4, 5, 6, 7, 8]).unwrap(),
            g1.n_edges() as u64
        );
    }

    #[test]
    fn chi_junta_paper_values() {
        let p = part(8, &[1, 2, 3, 4]);
        let g1 = build_graph(&p, GraphFamily::TwoCliques);
        assert_eq!(chi_junta(&g1, 4).unwrap(), ExactFraction::new(1, 2));
        let g2 = build_graph(&p, GraphFamily::CompleteBipartite);
        assert_eq!(chi_junta(&g2, 4).unwrap(), ExactFraction::new(3, 4));
    }

    #[test]
    fn chi_junta_single_edge() {
        let g = Graph::new(2, vec![(1, 2)]).unwrap();
        assert_eq!(chi_junta(&g, 1).unwrap(), ExactFraction::ONE);
    }

    #[test]
    fn chi_unate_examples() {
        let p = part(8, &[1, 3, 5, 7]);
        let g2 = build_graph(&p, GraphFamily::CompleteBipartite);
        assert_eq!(chi_unate(&g2).unwrap(), ExactFraction::ZERO);
        // Two K_4 cliques: max cut 8 of 12 edges.
        let g1 = build_graph(&p, GraphFamily::TwoCliques);
        assert_eq!(chi_unate(&g1).unwrap(), ExactFraction::new(1, 3));
        let single = Graph::new(2, vec![(1, 2)]).unwrap();
        assert_eq!(chi_unate(&single).unwrap(), ExactFraction::ZERO);
    }

    #[test]
    fn brute_force_matches_closed_forms() {
        for n in (4u32..=16).step_by(2) {
            let p = sample_partition(n, 7 + n as u64).unwrap();
            for family in [GraphFamily::TwoCliques, GraphFamily::CompleteBipartite] {
                let g = build_graph(&p, family);
                assert_eq!(
                    chi_junta(&g, n / 2).unwrap(),
                    chi_junta_family(family, n).unwrap(),
                    "junta n={n} {family:?}"
                );
                assert_eq!(
                    chi_unate(&g).unwrap(),
                    chi_unate_family(family, n).unwrap(),
                    "unate n={n} {family:?}"
                );
            }
        }
    }

    #[test]
    fn chi_rejects_edgeless_and_oversized() {
        let edgeless = Graph::new(3, vec![]).unwrap();
        assert!(matches!(chi_junta(&edgeless, 1), Err(Error::EdgelessGraph)));
        let big = Graph::new(30, vec![(1, 2)]).unwrap();
        assert!(matches!(chi_junta(&big, 1), Err(Error::Capacity { .. })));
    }
}
