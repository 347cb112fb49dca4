//! Shared result type for every construction, with certification, spanning
//! forest completion, and the clique-number upper-bound check.

use serde::Serialize;
use thiserror::Error;

use crate::chordality::{certify_peo, is_chordal, ChordalWitness, Chordality};
use crate::graph::{degeneracy_order, EdgeSubgraph, Graph, GraphError, UnionFind};
use crate::oracle::max_clique_exact;
use crate::sparse::SparseError;

/// Largest `n` for which the upper-bound check computes ω exactly.
pub const EXACT_OMEGA_MAX_N: usize = 40;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConstructError {
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Sparse(#[from] SparseError),
    #[error("output is not chordal; induced cycle {0:?}")]
    NotChordal(Vec<usize>),
    #[error("{edges} edges exceed the clique bound n(ω̂ − 1) = {bound}")]
    UpperBound { edges: usize, bound: usize },
}

/// Per-phase counters; fields that a method does not use stay `None`.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PhaseStats {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub clique_target: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cliques_found: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub final_clique_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub leftover: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub search_nodes: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub attached: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub attachment_edges: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s_lower: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s_lower_degenerate: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chains: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matching_rounds: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub perfect_matchings: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub frozen_chains: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub all_matchings_perfect: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gadget: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tiles_placed: Option<usize>,
    /// Tiles per gadget, in the order the gadgets were tried.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tiles_by_gadget: Option<Vec<(String, usize)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tile_edges: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub forest_edges_added: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ConstructionResult {
    pub method: String,
    pub achieved_edges: usize,
    pub certified: bool,
    pub phase_stats: PhaseStats,
    #[serde(skip)]
    pub subgraph: EdgeSubgraph,
    #[serde(skip)]
    pub witness: ChordalWitness,
}

/// Certifies `edges` as a chordal subgraph of `g`. `order` is tried first; if
/// it is absent or fails, maximum cardinality search supplies the witness.
/// Also enforces `|edges| ≤ n(ω̂ − 1)`.
pub fn certify(
    g: &Graph,
    method: &str,
    edges: Vec<(usize, usize)>,
    order: Option<&[usize]>,
    phase_stats: PhaseStats,
) -> Result<ConstructionResult, ConstructError> {
    let subgraph = EdgeSubgraph::new(g.n(), edges)?;
    subgraph.check_within(g)?;
    let h = subgraph.to_graph();
    let witness = match order.map(|o| certify_peo(&h, o)) {
        Some(Ok(w)) => w,
        _ => match is_chordal(&h) {
            Chordality::Chordal(w) => w,
            Chordality::NotChordal(c) => return Err(ConstructError::NotChordal(c)),
        },
    };
    let bound = clique_edge_bound(g);
    if subgraph.len() > bound {
        return Err(ConstructError::UpperBound {
            edges: subgraph.len(),
            bound,
        });
    }
    Ok(ConstructionResult {
        method: method.to_string(),
        achieved_edges: subgraph.len(),
        certified: true,
        phase_stats,
        subgraph,
        witness,
    })
}

/// Upper estimate of ω: exact up to [`EXACT_OMEGA_MAX_N`] vertices, otherwise
/// degeneracy + 1.
pub fn omega_upper(g: &Graph) -> usize {
    if g.n() == 0 {
        return 0;
    }
    if g.n() <= EXACT_OMEGA_MAX_N {
        if let Some(c) = max_clique_exact(g, u64::MAX).proved_clique() {
            return c.len();
        }
    }
    degeneracy_order(g).1 + 1
}

/// `n(ω̂ − 1)`: every vertex has at most `ω − 1` earlier neighbours in a PEO
/// of a subgraph.
pub fn clique_edge_bound(g: &Graph) -> usize {
    g.n() * omega_upper(g).saturating_sub(1)
}

/// Adds edges of `g` joining different components of `edges` (Kruskal order:
/// lexicographic), returning the enlarged list and the number added. Every
/// added edge is a bridge, so chordality is preserved.
pub fn forest_completion(g: &Graph, mut edges: Vec<(usize, usize)>) -> (Vec<(usize, usize)>, usize) {
    let mut uf = UnionFind::new(g.n());
    for &(u, v) in &edges {
        uf.union(u, v);
    }
    let before = edges.len();
    for (u, v) in g.edges() {
        if uf.sets() == 1 {
            break;
        }
        if uf.union(u, v) {
            edges.push((u, v));
        }
    }
    let added = edges.len() - before;
    (edges, added)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{component_count, spanning_forest};

    #[test]
    fn certify_accepts_and_rejects() {
        let g = Graph::complete(5);
        let r = certify(&g, "t", vec![(0, 1), (1, 2), (0, 2)], None, PhaseStats::default()).unwrap();
        assert_eq!(r.achieved_edges, 3);
        assert!(r.certified);
        let c4 = vec![(0, 1), (1, 2), (2, 3), (0, 3)];
        assert!(matches!(
            certify(&g, "t", c4, None, PhaseStats::default()),
            Err(ConstructError::NotChordal(_))
        ));
        let missing = Graph::from_edges(3, [(0, 1)]).unwrap();
        assert!(certify(&missing, "t", vec![(1, 2)], None, PhaseStats::default()).is_err());
    }

    #[test]
    fn bad_hint_falls_back_to_search() {
        let g = Graph::complete(4);
        let path = vec![(0, 1), (1, 2), (2, 3)];
        // order 0,2,1,3 is not a PEO of the path, but the path is chordal
        let r = certify(&g, "t", path, Some(&[0, 2, 1, 3]), PhaseStats::default()).unwrap();
        assert!(crate::chordality::is_peo(&r.subgraph.to_graph(), &r.witness.order));
    }

    #[test]
    fn completion_reaches_forest_floor() {
        let g = Graph::from_edges(7, [(0, 1), (1, 2), (0, 2), (2, 3), (4, 5)]).unwrap();
        let (edges, added) = forest_completion(&g, vec![(0, 1), (1, 2), (0, 2)]);
        assert_eq!(added, 2);
        assert_eq!(edges.len(), 5);
        let forest = spanning_forest(&g).len();
        assert_eq!(forest, g.n() - component_count(&g));
        assert!(edges.len() >= forest);
        let r = certify(&g, "t", edges, None, PhaseStats::default()).unwrap();
        assert_eq!(r.achieved_edges, 5);
    }

    #[test]
    fn omega_estimates() {
        assert_eq!(omega_upper(&Graph::complete(6)), 6);
        let c5 = Graph::from_edges(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        assert_eq!(omega_upper(&c5), 2);
        assert_eq!(clique_edge_bound(&c5), 5);
    }
}
