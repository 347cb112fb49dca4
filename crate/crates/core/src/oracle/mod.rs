//! Exponential-time references for tiny graphs: maximum chordal subgraph,
//! maximum clique, and a census of all small graphs.

mod census;
mod chordal_bb;
mod clique;

use thiserror::Error;

use crate::graph::Graph;

pub use census::{
    all_graphs_chordality_census, has_induced_cycle_brute, masks, CensusRow, CENSUS_MAX_N, UNLABELLED_MAX_N,
};
pub use chordal_bb::{max_chordal_exact, OracleOptions, OracleResult, DEFAULT_MAX_EDGES};
pub use clique::{max_clique_exact, CliqueResult};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{edges} edges exceed the cap of {cap}")]
    TooLarge { edges: usize, cap: usize },
    #[error("{0} vertices is too many for this oracle")]
    TooManyVertices(usize),
}

/// Largest chordal edge subset by trying all `2^m` subsets, with chordality
/// decided by [`has_induced_cycle_brute`]. For cross-checking only.
pub fn max_chordal_enumerate(g: &Graph) -> Result<usize, OracleError> {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    if edges.len() > 24 {
        return Err(OracleError::TooLarge {
            edges: edges.len(),
            cap: 24,
        });
    }
    if g.n() > 16 {
        return Err(OracleError::TooManyVertices(g.n()));
    }
    let mut best = 0;
    for code in 0u32..1 << edges.len() {
        let size = code.count_ones() as usize;
        if size <= best {
            continue;
        }
        let mut adj = vec![0u64; g.n()];
        for (i, &(u, v)) in edges.iter().enumerate() {
            if code >> i & 1 == 1 {
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
            }
        }
        if !has_induced_cycle_brute(&adj) {
            best = size;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_matches_branch_and_bound() {
        let k23 = Graph::from_edges(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap();
        assert_eq!(max_chordal_enumerate(&k23).unwrap(), 4);
        let c4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(max_chordal_enumerate(&c4).unwrap(), 3);
    }
}
