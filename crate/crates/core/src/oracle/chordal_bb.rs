use serde::Serialize;

use super::OracleError;
use crate::graph::{degeneracy_order, Graph};

/// Default edge-count cap for [`max_chordal_exact`].
pub const DEFAULT_MAX_EDGES: usize = 28;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleOptions {
    pub max_edges: usize,
    pub node_budget: u64,
}

impl Default for OracleOptions {
    fn default() -> Self {
        Self {
            max_edges: DEFAULT_MAX_EDGES,
            node_budget: 200_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct OracleResult {
    pub optimum: usize,
    #[serde(rename = "witness")]
    pub witness_edges: Vec<(usize, usize)>,
    pub nodes_explored: u64,
    pub proved: bool,
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Chordality of a graph on at most 64 vertices given as neighbour masks,
/// restricted to `alive`, by repeated removal of simplicial vertices.
pub(crate) fn mask_chordal(adj: &[u64], mut alive: u64) -> bool {
    'outer: while alive != 0 {
        let mut rest = alive;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let nb = adj[v] & alive;
            let mut m = nb;
            let mut simplicial = true;
            while m != 0 {
                let u = m.trailing_zeros() as usize;
                m &= m - 1;
                if nb & !(1 << u) & !adj[u] != 0 {
                    simplicial = false;
                    break;
                }
            }
            if simplicial {
                alive &= !(1 << v);
                continue 'outer;
            }
        }
        return false;
    }
    true
}

struct Search {
    n: usize,
    /// Edges sorted by the later endpoint's position; `(u, v, pos)`.
    edges: Vec<(usize, usize, usize)>,
    /// `closes[i]`: after deciding edge `i`, vertices up to this position are final.
    closes: Vec<Option<usize>>,
    /// Prefix masks by position.
    prefix: Vec<u64>,
    adj: Vec<u64>,
    chosen: Vec<usize>,
    best: Vec<usize>,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

impl Search {
    fn run(&mut self, i: usize) {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return;
        }
        if self.chosen.len() + (self.edges.len() - i) <= self.best.len() {
            return;
        }
        if i == self.edges.len() {
            debug_assert!(mask_chordal(&self.adj, full_mask(self.n)));
            self.best = self.chosen.clone();
            return;
        }
        let (u, v, _) = self.edges[i];
        for include in [true, false] {
            if include {
                self.adj[u] |= 1 << v;
                self.adj[v] |= 1 << u;
                self.chosen.push(i);
            }
            let feasible = match self.closes[i] {
                Some(pos) => mask_chordal(&self.adj, self.prefix[pos]),
                None => true,
            };
            if feasible {
                self.run(i + 1);
            }
            if include {
                self.adj[u] &= !(1 << v);
                self.adj[v] &= !(1 << u);
                self.chosen.pop();
            }
            if self.exhausted {
                return;
            }
        }
    }
}

/// Greedy maximal chordal subgraph: scan edges, keep each one that leaves the
/// kept set chordal. Contains a spanning forest.
fn greedy_incumbent(n: usize, edges: &[(usize, usize, usize)]) -> Vec<usize> {
    let mut adj = vec![0u64; n];
    let all = full_mask(n);
    let mut kept = Vec::new();
    for (i, &(u, v, _)) in edges.iter().enumerate() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
        if mask_chordal(&adj, all) {
            kept.push(i);
        } else {
            adj[u] &= !(1 << v);
            adj[v] &= !(1 << u);
        }
    }
    kept
}

/// Maximum chordal subgraph by include/exclude branch and bound over edges.
///
/// Vertices are placed in degeneracy order and each edge is filed under its
/// later endpoint. Once every edge of a vertex is decided, the included graph
/// induced on the placed prefix is final, so a non-chordal prefix prunes the
/// branch. The size bound prunes whenever the undecided edges cannot beat the
/// incumbent.
pub fn max_chordal_exact(g: &Graph, opts: &OracleOptions) -> Result<OracleResult, OracleError> {
    let n = g.n();
    if g.m() > opts.max_edges {
        return Err(OracleError::TooLarge {
            edges: g.m(),
            cap: opts.max_edges,
        });
    }
    if n > 64 {
        return Err(OracleError::TooManyVertices(n));
    }
    let (mut order, _) = degeneracy_order(g);
    // smallest-last: the last removed vertex goes first
    order.reverse();
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut edges: Vec<(usize, usize, usize)> = g.edges().map(|(u, v)| (u, v, pos[u].max(pos[v]))).collect();
    edges.sort_by_key(|&(u, v, p)| (p, pos[u].min(pos[v]), u, v));
    let closes: Vec<Option<usize>> = (0..edges.len())
        .map(|i| (i + 1 == edges.len() || edges[i + 1].2 != edges[i].2).then_some(edges[i].2))
        .collect();
    let mut prefix = vec![0u64; n];
    let mut acc = 0u64;
    for (i, &v) in order.iter().enumerate() {
        acc |= 1 << v;
        prefix[i] = acc;
    }
    let incumbent = greedy_incumbent(n, &edges);
    let mut s = Search {
        n,
        closes,
        prefix,
        adj: vec![0; n],
        chosen: Vec::new(),
        best: incumbent,
        nodes: 0,
        budget: opts.node_budget,
        exhausted: false,
        edges,
    };
    s.run(0);
    let mut witness_edges: Vec<(usize, usize)> = s.best.iter().map(|&i| (s.edges[i].0, s.edges[i].1)).collect();
    witness_edges.sort_unstable();
    Ok(OracleResult {
        optimum: witness_edges.len(),
        witness_edges,
        nodes_explored: s.nodes,
        proved: !s.exhausted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn mask_chordality() {
        let c4 = [0b1010u64, 0b0101, 0b1010, 0b0101];
        assert!(!mask_chordal(&c4, 0b1111));
        assert!(mask_chordal(&c4, 0b0111));
        let k4 = [0b1110u64, 0b1101, 0b1011, 0b0111];
        assert!(mask_chordal(&k4, 0b1111));
    }

    #[test]
    fn known_optima() {
        let o = OracleOptions::default();
        assert_eq!(max_chordal_exact(&cycle(4), &o).unwrap().optimum, 3);
        assert_eq!(max_chordal_exact(&cycle(5), &o).unwrap().optimum, 4);
        let k23 = Graph::from_edges(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap();
        assert_eq!(max_chordal_exact(&k23, &o).unwrap().optimum, 4);
        let r = max_chordal_exact(&Graph::complete(5), &o).unwrap();
        assert_eq!((r.optimum, r.proved), (10, true));
    }

    #[test]
    fn cap_is_enforced() {
        let o = OracleOptions::default();
        assert!(matches!(
            max_chordal_exact(&Graph::complete(9), &o),
            Err(OracleError::TooLarge { edges: 36, cap: 28 })
        ));
    }
}
