//! Simple undirected graphs on `0..n`, seeded G(n,p) generation, and the
//! decomposition primitives (components, blocks, spanning forests) used by
//! every other module.
//!
//! Adjacency is kept twice when memory allows: sorted neighbour lists for
//! iteration, and a bit-matrix (one [`FixedBitSet`] row per vertex) for
//! constant-time edge queries and word-parallel neighbourhood intersection.
//! Above [`GraphLimits::bit_matrix_max_n`] vertices only the lists are kept
//! and edge queries fall back to binary search.

mod decompose;
mod generate;
mod io;

use std::borrow::Cow;
use std::fmt;

use fixedbitset::FixedBitSet;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use decompose::{
    blocks, component_count, connected_components, cut_vertices, degeneracy_order, is_biconnected, is_connected,
    spanning_forest, UnionFind,
};
pub use generate::{gen_gnp, gen_gnp_with};
pub use io::{parse_edge_list, read_edge_list, write_edge_list, EdgeListError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("edge probability {0} is outside [0, 1]")]
    InvalidProbability(f64),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("edge {{{0}, {1}}} is not present in the parent graph")]
    MissingEdge(usize, usize),
    #[error("estimated memory {required} bytes exceeds the cap of {cap} bytes")]
    MemoryCap { required: u64, cap: u64 },
    #[error("{0} vertices exceed the 32-bit vertex index range")]
    TooManyVertices(usize),
}

/// Memory guards for graph construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GraphLimits {
    /// Upper bound on the estimated footprint of a generated graph.
    pub memory_cap: u64,
    /// Largest vertex count for which the bit-matrix is materialised.
    pub bit_matrix_max_n: usize,
}

impl Default for GraphLimits {
    fn default() -> Self {
        Self {
            memory_cap: 2 << 30,
            bit_matrix_max_n: 16_384,
        }
    }
}

impl GraphLimits {
    pub(crate) fn estimate_bytes(&self, n: usize, expected_edges: f64) -> u64 {
        let lists = 2.0 * expected_edges * 4.0 + n as f64 * 24.0;
        let matrix = if n <= self.bit_matrix_max_n {
            n as f64 * (n.div_ceil(64) * 8 + 32) as f64
        } else {
            0.0
        };
        (lists + matrix).ceil() as u64
    }
}

/// Seed for one reproducible random stream: ChaCha8 keyed by `master`, on
/// stream `stream`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RngSeed {
    pub master: u64,
    pub stream: u64,
}

impl RngSeed {
    pub const fn new(master: u64, stream: u64) -> Self {
        Self { master, stream }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master);
        rng.set_stream(self.stream);
        rng
    }
}

/// Undirected simple graph on `0..n`.
#[derive(Clone)]
pub struct Graph {
    n: usize,
    m: usize,
    adj: Vec<Vec<u32>>,
    rows: Option<Vec<FixedBitSet>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Self::from_sorted_lists(vec![Vec::new(); n], &GraphLimits::default())
    }

    pub fn complete(n: usize) -> Self {
        let adj = (0..n)
            .map(|v| (0..n as u32).filter(|&w| w as usize != v).collect())
            .collect();
        Self::from_sorted_lists(adj, &GraphLimits::default())
    }

    /// Builds a graph from an edge list, rejecting self-loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n > u32::MAX as usize {
            return Err(GraphError::TooManyVertices(n));
        }
        let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: u.max(v), n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v as u32);
            adj[v].push(u as u32);
        }
        for (v, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                let u = w[0] as usize;
                return Err(GraphError::DuplicateEdge(v.min(u), v.max(u)));
            }
        }
        Ok(Self::from_sorted_lists(adj, &GraphLimits::default()))
    }

    /// `adj` must be symmetric, loop-free, duplicate-free and sorted.
    pub(crate) fn from_sorted_lists(adj: Vec<Vec<u32>>, limits: &GraphLimits) -> Self {
        let n = adj.len();
        let m = adj.iter().map(Vec::len).sum::<usize>() / 2;
        let rows = (n <= limits.bit_matrix_max_n).then(|| {
            adj.iter()
                .map(|list| {
                    let mut row = FixedBitSet::with_capacity(n);
                    for &w in list {
                        row.insert(w as usize);
                    }
                    row
                })
                .collect()
        });
        Self { n, m, adj, rows }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Sorted neighbour list of `v`.
    #[inline]
    pub fn adjacency(&self, v: usize) -> &[u32] {
        &self.adj[v]
    }

    pub fn neighbors(&self, v: usize) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.adj[v].iter().map(|&w| w as usize)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if let Some(rows) = &self.rows {
            return rows[u].contains(v);
        }
        let (a, b) = if self.adj[u].len() <= self.adj[v].len() {
            (u, v)
        } else {
            (v, u)
        };
        self.adj[a].binary_search(&(b as u32)).is_ok()
    }

    pub fn has_bit_matrix(&self) -> bool {
        self.rows.is_some()
    }

    /// Neighbourhood of `v` as a bitset over `0..n`; borrowed from the
    /// bit-matrix when present.
    pub fn neighbor_bits(&self, v: usize) -> Cow<'_, FixedBitSet> {
        match &self.rows {
            Some(rows) => Cow::Borrowed(&rows[v]),
            None => {
                let mut row = FixedBitSet::with_capacity(self.n);
                for &w in &self.adj[v] {
                    row.insert(w as usize);
                }
                Cow::Owned(row)
            }
        }
    }

    /// All edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            let start = list.partition_point(|&w| (w as usize) <= u);
            list[start..].iter().map(move |&w| (u, w as usize))
        })
    }

    /// Induced subgraph on `vertices`, relabelled so that `vertices[i]` becomes `i`.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![u32::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i as u32;
        }
        let adj = vertices
            .iter()
            .map(|&v| {
                let mut list: Vec<u32> = self.adj[v]
                    .iter()
                    .map(|&w| index[w as usize])
                    .filter(|&i| i != u32::MAX)
                    .collect();
                list.sort_unstable();
                list
            })
            .collect();
        Graph::from_sorted_lists(adj, &GraphLimits::default())
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m <= 64 {
            f.debug_struct("Graph")
                .field("n", &self.n)
                .field("edges", &self.edges().collect::<Vec<_>>())
                .finish()
        } else {
            f.debug_struct("Graph")
                .field("n", &self.n)
                .field("m", &self.m)
                .finish_non_exhaustive()
        }
    }
}

/// A set of edges of some parent graph on `n` vertices, normalised to
/// `u < v` and sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeSubgraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl EdgeSubgraph {
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: u.max(v), n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(Self { n, edges: list })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Non-isolated vertices, ascending.
    pub fn vertex_span(&self) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        for &(u, v) in &self.edges {
            seen[u] = true;
            seen[v] = true;
        }
        (0..self.n).filter(|&v| seen[v]).collect()
    }

    pub fn check_within(&self, parent: &Graph) -> Result<(), GraphError> {
        if parent.n() != self.n {
            return Err(GraphError::VertexOutOfRange {
                vertex: self.n.max(parent.n()).saturating_sub(1),
                n: parent.n().min(self.n),
            });
        }
        match self.edges.iter().find(|&&(u, v)| !parent.has_edge(u, v)) {
            Some(&(u, v)) => Err(GraphError::MissingEdge(u, v)),
            None => Ok(()),
        }
    }

    /// The subgraph as a graph on all `n` vertices of the parent.
    pub fn to_graph(&self) -> Graph {
        let mut adj: Vec<Vec<u32>> = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v as u32);
            adj[v].push(u as u32);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph::from_sorted_lists(adj, &GraphLimits::default())
    }

    /// The subgraph on its vertex span only, with the span as the relabelling map.
    pub fn compact(&self) -> (Graph, Vec<usize>) {
        let span = self.vertex_span();
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in span.iter().enumerate() {
            index[v] = i;
        }
        let g = Graph::from_edges(span.len(), self.edges.iter().map(|&(u, v)| (index[u], index[v])))
            .expect("normalised edge set is simple");
        (g, span)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_edges_rejects_bad_input() {
        assert_eq!(Graph::from_edges(3, [(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert_eq!(
            Graph::from_edges(3, [(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert!(matches!(
            Graph::from_edges(3, [(0, 3)]),
            Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 })
        ));
    }

    #[test]
    fn bit_matrix_and_lists_agree() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (3, 4), (0, 4)]).unwrap();
        let limits = GraphLimits {
            bit_matrix_max_n: 0,
            ..GraphLimits::default()
        };
        let sparse = Graph::from_sorted_lists(g.adj.clone(), &limits);
        assert!(g.has_bit_matrix());
        assert!(!sparse.has_bit_matrix());
        for u in 0..5 {
            for v in 0..5 {
                assert_eq!(g.has_edge(u, v), sparse.has_edge(u, v));
            }
            assert_eq!(*g.neighbor_bits(u), *sparse.neighbor_bits(u));
        }
        assert_eq!(g, sparse);
    }

    #[test]
    fn edges_are_lexicographic() {
        let g = Graph::complete(4);
        let e: Vec<_> = g.edges().collect();
        assert_eq!(e, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(g.m(), 6);
    }

    #[test]
    fn induced_relabels() {
        let g = Graph::from_edges(5, [(0, 2), (2, 4), (1, 3)]).unwrap();
        let h = g.induced(&[4, 2, 0]);
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn edge_subgraph_checks_parent() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2)]).unwrap();
        let s = EdgeSubgraph::new(4, [(2, 1)]).unwrap();
        assert!(s.check_within(&g).is_ok());
        assert_eq!(s.vertex_span(), vec![1, 2]);
        let bad = EdgeSubgraph::new(4, [(0, 3)]).unwrap();
        assert_eq!(bad.check_within(&g), Err(GraphError::MissingEdge(0, 3)));
        let (c, map) = s.compact();
        assert_eq!(c.n(), 2);
        assert_eq!(map, vec![1, 2]);
    }
}
