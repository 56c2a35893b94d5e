//! The rejection sampling oracle with cost metering and transcripts.
//!
//! A query is a vertex set `L ⊆ [n]`. The oracle draws an edge of the hidden
//! graph uniformly at random and returns the intersection of its endpoints
//! with `L`: nothing, a lone vertex, or the full edge. Each query adds `|L|`
//! to the running cost.

use alloc::vec::Vec;

use crate::error::Result;
use crate::graph::Graph;
use crate::rng::CounterRng;
use crate::Error;

/// Result of one rejection sampling query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Response {
    /// Neither endpoint of the sampled edge lies in `L`.
    Empty,
    /// Exactly one endpoint lies in `L`.
    Lone(u32),
    /// Both endpoints lie in `L` (always reported with `v1 < v2`).
    Edge(u32, u32),
}

impl Response {
    pub fn is_empty(&self) -> bool {
        matches!(self, Response::Empty)
    }
}

/// One (query, response) record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranscriptEntry {
    /// The queried vertex set, strictly increasing.
    pub query: Vec<u32>,
    pub response: Response,
}

/// Ordered query/response history with its cost ledger.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Transcript {
    pub entries: Vec<TranscriptEntry>,
    total_cost: u64,
}

impl Transcript {
    /// Total cost so far: the sum of all query sizes.
    pub fn total_cost(&self) -> u64 {
        self.total_cost
    }
}

/// Convenience alias for [`Transcript::total_cost`].
pub fn cost(transcript: &Transcript) -> u64 {
    transcript.total_cost()
}

/// An oracle bound to one hidden graph, one seed, and one transcript.
///
/// Same graph + seed + query sequence always reproduces the same transcript.
/// Sessions are single-threaded; run independent sessions for parallelism.
#[derive(Debug, Clone)]
pub struct OracleSession<'g> {
    graph: &'g Graph,
    rng: CounterRng,
    transcript: Transcript,
}

impl<'g> OracleSession<'g> {
    pub fn new(graph: &'g Graph, seed: u64) -> Result<OracleSession<'g>> {
        if graph.n_edges() == 0 {
            return Err(Error::EdgelessGraph);
        }
        Ok(OracleSession {
            graph,
            rng: CounterRng::from_chain(seed, &[u64::from_le_bytes(*b"oracle\0\0")]),
            transcript: Transcript::default(),
        })
    }

    pub fn graph(&self) -> &Graph {
        self.graph
    }

    pub fn transcript(&self) -> &Transcript {
        &self.transcript
    }

    /// Consume the session, keeping its transcript.
    pub fn into_transcript(self) -> Transcript {
        self.transcript
    }

    /// One rejection sampling query. `l` must be strictly increasing with
    /// vertices in `[1, n]`; cost increases by `|l|`.
    pub fn query(&mut self, l: &[u32]) -> Result<Response> {
        let n = self.graph.n_vertices();
        if !l.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::UnsortedVertexSet);
        }
        if let Some(&v) = l.iter().find(|&&v| v < 1 || v > n) {
            return Err(Error::InvalidVertex { vertex: v, n });
        }
        let edges = self.graph.edges();
        let (j1, j2) = edges[self.rng.below(edges.len() as u64) as usize];
        let hit1 = l.binary_search(&j1).is_ok();
        let hit2 = l.binary_search(&j2).is_ok();
        let response = match (hit1, hit2) {
            (true, true) => Response::Edge(j1, j2),
            (true, false) => Response::Lone(j1),
            (false, true) => Response::Lone(j2),
            (false, false) => Response::Empty,
        };
        self.transcript.total_cost += l.len() as u64;
        self.transcript.entries.push(TranscriptEntry { query: l.to_vec(), response });
        Ok(response)
    }

    /// Apply [`OracleSession::query`] to each set in order, with independent
    /// edge draws; results align with the input order.
    pub fn batch_query(&mut self, queries: &[Vec<u32>]) -> Result<Vec<Response>> {
        queries.iter().map(|l| self.query(l)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, GraphFamily, Partition};
    use alloc::vec;

    fn bipartite4() -> Graph {
        let p = Partition::new(4, vec![1, 2]).unwrap();
        build_graph(&p, GraphFamily::CompleteBipartite)
    }

    #[test]
    fn empty_query_always_empty_and_free() {
        let g = bipartite4();
        let mut s = OracleSession::new(&g, 1).unwrap();
        for _ in 0..50 {
            assert_eq!(s.query(&[]).unwrap(), Response::Empty);
        }
        assert_eq!(s.transcript().total_cost(), 0);
    }

    #[test]
    fn full_query_always_edge_and_uniform() {
        let g = bipartite4();
        let mut s = OracleSession::new(&g, 2).unwrap();
        let mut counts = [[0u64; 5]; 5];
        let draws = 40_000;
        for _ in 0..draws {
            match s.query(&[1, 2, 3, 4]).unwrap() {
                Response::Edge(u, v) => counts[u as usize][v as usize] += 1,
                other => panic!("full query must return an edge, got {other:?}"),
            }
        }
        for &(u, v) in g.edges() {
            let p = counts[u as usize][v as usize] as f64 / draws as f64;
            assert!((p - 0.25).abs() < 0.01, "edge ({u},{v}): {p}");
        }
        assert_eq!(s.transcript().total_cost(), 4 * draws);
    }

    #[test]
    fn lone_and_empty_probabilities() {
        // CompleteBipartite n=4, A = {1,2}, L = {1}: the 4 edges are
        // (1,3),(1,4),(2,3),(2,4); two touch vertex 1.
        let g = bipartite4();
        let mut s = OracleSession::new(&g, 3).unwrap();
        let draws = 100_000;
        let mut lone = 0u64;
        let mut empty = 0u64;
        for _ in 0..draws {
            match s.query(&[1]).unwrap() {
                Response::Lone(1) => lone += 1,
                Response::Empty => empty += 1,
                other => panic!("unexpected {other:?}"),
            }
        }
        assert!((lone as f64 / draws as f64 - 0.5).abs() < 0.01);
        assert!((empty as f64 / draws as f64 - 0.5).abs() < 0.01);
    }

    #[test]
    fn batch_cost_arithmetic() {
        let k3 = Graph::new(3, vec![(1, 2), (1, 3), (2, 3)]).unwrap();
        let mut s = OracleSession::new(&k3, 4).unwrap();
        let rs = s.batch_query(&[vec![1, 2, 3], vec![1, 2, 3], vec![1, 2, 3]]).unwrap();
        assert_eq!(rs.len(), 3);
        assert!(rs.iter().all(|r| matches!(r, Response::Edge(_, _))));
        assert_eq!(cost(s.transcript()), 9);
        assert_eq!(s.batch_query(&[]).unwrap().len(), 0);
        assert_eq!(cost(s.transcript()), 9);
    }

    #[test]
    fn sessions_are_deterministic() {
        let g = bipartite4();
        let queries = [vec![1], vec![2, 3], vec![], vec![1, 2, 3, 4]];
        let mut s1 = OracleSession::new(&g, 7).unwrap();
        let mut s2 = OracleSession::new(&g, 7).unwrap();
        for q in &queries {
            assert_eq!(s1.query(q).unwrap(), s2.query(q).unwrap());
        }
        assert_eq!(s1.transcript(), s2.transcript());
    }

    #[test]
    fn rejects_bad_inputs() {
        let g = bipartite4();
        assert!(OracleSession::new(&Graph::new(2, vec![]).unwrap(), 0).is_err());
        let mut s = OracleSession::new(&g, 0).unwrap();
        assert!(matches!(s.query(&[2, 1]), Err(Error::UnsortedVertexSet)));
        assert!(matches!(s.query(&[5]), Err(Error::InvalidVertex { .. })));
    }

    #[test]
    fn response_distribution_matches_enumeration() {
        // Chi-square style check against exact probabilities on a fixed
        // small graph and query.
        let g = Graph::new(5, vec![(1, 2), (2, 3), (3, 4), (4, 5), (1, 5), (2, 4)]).unwrap();
        let l = vec![2, 3];
        // Exact: edge (2,3) -> Edge; (1,2),(2,4) -> Lone(2); (3,4) -> Lone(3);
        // (4,5),(1,5) -> Empty. Probabilities 1/6, 2/6, 1/6, 2/6.
        let mut s = OracleSession::new(&g, 11).unwrap();
        let draws = 120_000;
        let (mut e, mut l2, mut l3, mut emp) = (0u64, 0u64, 0u64, 0u64);
        for _ in 0..draws {
            match s.query(&l).unwrap() {
                Response::Edge(2, 3) => e += 1,
                Response::Lone(2) => l2 += 1,
                Response::Lone(3) => l3 += 1,
                Response::Empty => emp += 1,
                other => panic!("unexpected {other:?}"),
            }
        }
        let f = |c: u64| c as f64 / draws as f64;
        assert!((f(e) - 1.0 / 6.0).abs() < 0.01);
        assert!((f(l2) - 2.0 / 6.0).abs() < 0.01);
        assert!((f(l3) - 1.0 / 6.0).abs() < 0.01);
        assert!((f(emp) - 2.0 / 6.0).abs() < 0.01);
    }
}
