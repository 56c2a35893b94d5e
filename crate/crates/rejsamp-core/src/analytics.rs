//! Measurable statistics over transcripts and hidden partitions.
//!
//! The observed graph of a transcript (the edges actually returned) is
//! decomposed into connected components with BFS layers; from that and,
//! where needed, the hidden side `A`, a family of diagnostic events is
//! recomputed exactly: small-tree structure, non-empty response counts,
//! consistency of a candidate partition with the observations, the lone-
//! vertex balance statistic `B`, and the layer-weight statistic `W`.

use alloc::vec::Vec;

use crate::ceil_log2;
use crate::distinguish::observed_graph;
use crate::graph::{Graph, GraphFamily, Partition};
use crate::oracle::{Response, Transcript};

/// One connected component of the observed graph, rooted at its minimum
/// vertex, with BFS layers counted from the root (the root is layer 1,
/// so it belongs to the odd layer set).
#[derive(Debug, Clone)]
pub struct Component {
    /// All vertices, ascending.
    pub vertices: Vec<u32>,
    /// Edges of the observed graph inside this component, `u < v`, sorted.
    pub edges: Vec<(u32, u32)>,
    /// The minimum vertex.
    pub root: u32,
    /// Vertices at odd BFS depth from the root (root included), ascending.
    pub odd_layers: Vec<u32>,
    /// Vertices at even BFS depth from the root, ascending.
    pub even_layers: Vec<u32>,
    /// Whether the component is acyclic (`|E| = |V| − 1`).
    pub is_tree: bool,
}

impl Component {
    pub fn size(&self) -> usize {
        self.vertices.len()
    }
}

/// The component structure of a transcript's observed graph.
#[derive(Debug, Clone)]
pub struct ComponentDecomposition {
    /// Components in ascending order of their roots. Isolated vertices
    /// (never returned in any edge) are not represented.
    pub components: Vec<Component>,
}

impl ComponentDecomposition {
    /// Total number of vertices across components, `V = Σ |C_i|`.
    pub fn total_vertices(&self) -> u64 {
        self.components.iter().map(|c| c.size() as u64).sum()
    }
}

/// Decompose the observed graph of a transcript over `n` vertices into
/// rooted components with BFS layers. Cyclic components are allowed and
/// flagged; cross edges within a BFS layer leave the layer sets as BFS
/// found them.
pub fn decompose(transcript: &Transcript, n: u32) -> ComponentDecomposition {
    let graph = observed_graph(transcript, n);
    decompose_graph(&graph)
}

/// [`decompose`] for an already materialized graph.
pub fn decompose_graph(graph: &Graph) -> ComponentDecomposition {
    let n = graph.n_vertices();
    let mut seen = alloc::vec![false; n as usize + 1];
    let mut components = Vec::new();
    for root in 1..=n {
        if seen[root as usize] || graph.neighbors(root).is_empty() {
            continue;
        }
        // BFS from the minimum unseen vertex; since vertices are scanned in
        // ascending order, the start vertex is the component minimum.
        let mut queue: Vec<u32> = alloc::vec![root];
        seen[root as usize] = true;
        let mut depth_odd = alloc::vec![(root, true)];
        let mut head = 0;
        let mut odd_flag = true;
        while head < queue.len() {
            let layer_end = queue.len();
            while head < layer_end {
                let v = queue[head];
                head += 1;
                for &w in graph.neighbors(v) {
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        queue.push(w);
                        depth_odd.push((w, !odd_flag));
                    }
                }
            }
            odd_flag = !odd_flag;
        }
        let mut vertices = queue.clone();
        vertices.sort_unstable();
        let edges: Vec<(u32, u32)> = graph
            .edges()
            .iter()
            .copied()
            .filter(|&(u, _)| vertices.binary_search(&u).is_ok())
            .collect();
        let mut odd_layers: Vec<u32> =
            depth_odd.iter().filter(|&&(_, o)| o).map(|&(v, _)| v).collect();
        let mut even_layers: Vec<u32> =
            depth_odd.iter().filter(|&&(_, o)| !o).map(|&(v, _)| v).collect();
        odd_layers.sort_unstable();
        even_layers.sort_unstable();
        let is_tree = edges.len() == vertices.len() - 1;
        components.push(Component { vertices, edges, root, odd_layers, even_layers, is_tree });
    }
    ComponentDecomposition { components }
}

/// Small-tree event: every component is acyclic and has fewer than
/// `⌈log₂ n⌉` vertices.
pub fn event_et(decomposition: &ComponentDecomposition, n: u32) -> bool {
    let cap = ceil_log2(n as u64) as usize;
    decomposition.components.iter().all(|c| c.is_tree && c.size() < cap)
}

/// Sparse-response event: the number of non-empty responses is at most
/// `⌊n / ⌈log₂ n⌉⁴⌋`.
pub fn event_ef(transcript: &Transcript, n: u32) -> bool {
    let log = ceil_log2(n as u64).max(1) as u64;
    let bound = n as u64 / log.pow(4);
    let non_empty =
        transcript.entries.iter().filter(|e| !e.response.is_empty()).count() as u64;
    non_empty <= bound
}

/// Whether a candidate partition is consistent with the observed component
/// structure: for the two-cliques family each component must lie entirely
/// inside one side; for the bipartite family each component's odd and even
/// layers must lie on opposite sides (a component with an odd cycle can
/// never satisfy this, so it is checked edge by edge).
pub fn consistency(
    decomposition: &ComponentDecomposition,
    partition: &Partition,
    family: GraphFamily,
) -> bool {
    match family {
        GraphFamily::TwoCliques => decomposition.components.iter().all(|c| {
            let first = partition.contains(c.root);
            c.vertices.iter().all(|&v| partition.contains(v) == first)
        }),
        GraphFamily::CompleteBipartite => decomposition.components.iter().all(|c| {
            let layers_split = {
                let odd_side = partition.contains(c.root);
                c.odd_layers.iter().all(|&v| partition.contains(v) == odd_side)
                    && c.even_layers.iter().all(|&v| partition.contains(v) != odd_side)
            };
            // Edge-by-edge check subsumes the layer rule on trees and
            // rejects odd cycles outright.
            let edges_straddle = c
                .edges
                .iter()
                .all(|&(u, v)| partition.contains(u) != partition.contains(v));
            layers_split && edges_straddle
        }),
    }
}

/// The lone-vertex balance statistic and its event flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BalanceReport {
    /// `B = Σ over lone responses of (−1)^{[v ∈ A]}·(|L ∩ A| − |L ∩ Ā|)`.
    pub b: i64,
    /// True iff `|B| ≤ c·n/⌈log₂ n⌉`.
    pub e_b: bool,
}

/// Compute the balance statistic `B` over the lone responses of a
/// transcript, with event threshold `c·n/⌈log₂ n⌉` (`c` configurable,
/// conventionally 1).
pub fn balance_statistic(transcript: &Transcript, partition: &Partition, c: u64) -> BalanceReport {
    let mut b: i64 = 0;
    for entry in &transcript.entries {
        if let Response::Lone(v) = entry.response {
            let in_a = entry.query.iter().filter(|&&u| partition.contains(u)).count() as i64;
            let out_a = entry.query.len() as i64 - in_a;
            let sign = if partition.contains(v) { -1 } else { 1 };
            b += sign * (in_a - out_a);
        }
    }
    let n = partition.n_vertices() as u64;
    let threshold = (c * n / ceil_log2(n).max(1) as u64) as i64;
    BalanceReport { b, e_b: b.abs() <= threshold }
}

/// The layer-weight statistic and its event flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WReport {
    /// `W = Σ_i (Y_i·|C_i(odd)| + (1−Y_i)·|C_i(even)|)`, `Y_i = [u_i ∈ A]`.
    pub w: u64,
    /// `V = Σ_i |C_i|`.
    pub v: u64,
    /// True iff `V/2 − √V·⌈log₂ n⌉ ≤ W ≤ V/2 + √V·⌈log₂ n⌉`, checked as
    /// the exact integer inequality `(2W − V)² ≤ 4·V·⌈log₂ n⌉²`.
    pub e_w: bool,
}

/// Compute the layer-weight statistic `W` of a decomposition against a
/// hidden side `A`.
pub fn w_statistic(
    decomposition: &ComponentDecomposition,
    partition: &Partition,
) -> WReport {
    let mut w: u64 = 0;
    for c in &decomposition.components {
        if partition.contains(c.root) {
            w += c.odd_layers.len() as u64;
        } else {
            w += c.even_layers.len() as u64;
        }
    }
    let v = decomposition.total_vertices();
    let log = ceil_log2(partition.n_vertices() as u64) as u64;
    let dev = 2 * w as i128 - v as i128;
    let e_w = dev * dev <= 4 * v as i128 * (log * log) as i128;
    WReport { w, v, e_w }
}

/// Full event report over one transcript and the hidden partition.
#[derive(Debug, Clone, Copy)]
pub struct EventReport {
    pub e_t: bool,
    pub e_f: bool,
    pub balance: BalanceReport,
    pub consistent: bool,
    pub w: WReport,
}

/// Evaluate all events at once; `c` is the balance threshold constant.
pub fn event_report(
    transcript: &Transcript,
    partition: &Partition,
    family: GraphFamily,
    c: u64,
) -> EventReport {
    let n = partition.n_vertices();
    let decomposition = decompose(transcript, n);
    EventReport {
        e_t: event_et(&decomposition, n),
        e_f: event_ef(transcript, n),
        balance: balance_statistic(transcript, partition, c),
        consistent: consistency(&decomposition, partition, family),
        w: w_statistic(&decomposition, partition),
    }
}
