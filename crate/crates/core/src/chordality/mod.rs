//! Chordality: maximum cardinality search, perfect elimination ordering
//! certificates, induced-cycle certificates, perfect elimination trees with
//! their lossless code, and membership in the H-family of 2-connected chordal
//! graphs.
//!
//! Orders are listed earliest first, and an ordering is a perfect elimination
//! ordering (PEO) when the *earlier* neighbours of every vertex form a clique.

mod code;
mod hfamily;
mod sample;

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

pub use code::{decode_chordal, encode_chordal, CodeError, PeoCode};
pub use hfamily::{
    h_family_member, h_family_search, h_family_structural, h_family_witness, h_family_witness_ok, SEARCH_MAX_N,
};
pub use sample::{random_connected_chordal, sample_chordal, sample_code};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PeoError {
    #[error("ordering is not a permutation of 0..{n}")]
    NotPermutation { n: usize },
    #[error("vertex {vertex} has non-adjacent earlier neighbours {} and {}", pair.0, pair.1)]
    Violation { vertex: usize, pair: (usize, usize) },
}

/// A certified perfect elimination ordering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChordalWitness {
    /// Vertices, earliest first.
    pub order: Vec<usize>,
    /// Number of earlier neighbours, indexed by vertex.
    pub outdeg: Vec<usize>,
    /// Latest earlier neighbour, indexed by vertex.
    pub nu: Vec<Option<usize>>,
}

impl ChordalWitness {
    pub fn rank(&self) -> Vec<usize> {
        let mut rank = vec![0; self.order.len()];
        for (i, &v) in self.order.iter().enumerate() {
            rank[v] = i;
        }
        rank
    }

    /// Outdegrees listed in elimination order.
    pub fn outdeg_profile(&self) -> Vec<usize> {
        self.order.iter().map(|&v| self.outdeg[v]).collect()
    }

    /// Largest clique `K_v`; every chordal graph attains its clique number here.
    pub fn max_clique_size(&self) -> usize {
        self.outdeg.iter().map(|d| d + 1).max().unwrap_or(0)
    }
}

/// Outcome of [`is_chordal`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Chordality {
    Chordal(ChordalWitness),
    /// An induced cycle of length at least 4, in cyclic order.
    NotChordal(Vec<usize>),
}

impl Chordality {
    pub fn is_chordal(&self) -> bool {
        matches!(self, Chordality::Chordal(_))
    }

    pub fn witness(self) -> Option<ChordalWitness> {
        match self {
            Chordality::Chordal(w) => Some(w),
            Chordality::NotChordal(_) => None,
        }
    }
}

/// Maximum cardinality search. The visit order is a PEO exactly when `g` is
/// chordal. Ties go to the most recently promoted vertex, and a new component
/// starts at its smallest vertex.
pub fn mcs_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut weight = vec![0usize; n];
    let mut visited = vec![false; n];
    let mut buckets: Vec<Vec<usize>> = vec![(0..n).rev().collect()];
    let mut top = 0;
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let v = loop {
            match buckets[top].pop() {
                Some(v) if !visited[v] && weight[v] == top => break v,
                Some(_) => {}
                None => top -= 1,
            }
        };
        visited[v] = true;
        order.push(v);
        for w in g.neighbors(v) {
            if !visited[w] {
                weight[w] += 1;
                if weight[w] == buckets.len() {
                    buckets.push(Vec::new());
                }
                buckets[weight[w]].push(w);
                top = top.max(weight[w]);
            }
        }
    }
    order
}

fn ranks(n: usize, order: &[usize]) -> Result<Vec<usize>, PeoError> {
    if order.len() != n {
        return Err(PeoError::NotPermutation { n });
    }
    let mut rank = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        if v >= n || rank[v] != usize::MAX {
            return Err(PeoError::NotPermutation { n });
        }
        rank[v] = i;
    }
    Ok(rank)
}

/// Checks `order` in time linear in `n + m` (times the edge-query cost): for
/// each vertex, every earlier neighbour other than the latest one must be
/// adjacent to the latest one.
pub fn certify_peo(g: &Graph, order: &[usize]) -> Result<ChordalWitness, PeoError> {
    let n = g.n();
    let rank = ranks(n, order)?;
    let mut outdeg = vec![0; n];
    let mut nu = vec![None; n];
    for v in 0..n {
        let mut latest: Option<usize> = None;
        let mut count = 0;
        for w in g.neighbors(v) {
            if rank[w] < rank[v] {
                count += 1;
                if latest.is_none_or(|l| rank[w] > rank[l]) {
                    latest = Some(w);
                }
            }
        }
        outdeg[v] = count;
        nu[v] = latest;
        if let Some(l) = latest {
            for u in g.neighbors(v) {
                if u != l && rank[u] < rank[v] && !g.has_edge(u, l) {
                    return Err(PeoError::Violation {
                        vertex: v,
                        pair: (u.min(l), u.max(l)),
                    });
                }
            }
        }
    }
    Ok(ChordalWitness {
        order: order.to_vec(),
        outdeg,
        nu,
    })
}

pub fn is_peo(g: &Graph, order: &[usize]) -> bool {
    certify_peo(g, order).is_ok()
}

/// Decides chordality; a negative answer carries an induced cycle of length
/// at least 4.
pub fn is_chordal(g: &Graph) -> Chordality {
    let order = mcs_order(g);
    match certify_peo(g, &order) {
        Ok(w) => Chordality::Chordal(w),
        Err(PeoError::Violation { vertex, pair }) => {
            let cycle = cycle_through(g, vertex, pair.0, pair.1)
                .or_else(|| any_induced_cycle(g))
                .expect("a graph without a PEO has an induced cycle");
            Chordality::NotChordal(cycle)
        }
        Err(e @ PeoError::NotPermutation { .. }) => unreachable!("MCS returned {e}"),
    }
}

/// Shortest `a`–`b` path avoiding `v` and the rest of `N(v)`, closed through
/// `v`. With `a`, `b` non-adjacent neighbours of `v` the result is an induced
/// cycle of length at least 4.
fn cycle_through(g: &Graph, v: usize, a: usize, b: usize) -> Option<Vec<usize>> {
    let n = g.n();
    let mut blocked = vec![false; n];
    blocked[v] = true;
    for w in g.neighbors(v) {
        blocked[w] = w != a && w != b;
    }
    let mut prev = vec![usize::MAX; n];
    prev[a] = a;
    let mut queue = VecDeque::from([a]);
    while let Some(x) = queue.pop_front() {
        if x == b {
            break;
        }
        for y in g.neighbors(x) {
            if !blocked[y] && prev[y] == usize::MAX {
                prev[y] = x;
                queue.push_back(y);
            }
        }
    }
    if prev[b] == usize::MAX {
        return None;
    }
    let mut cycle = vec![v];
    let mut x = b;
    while x != a {
        cycle.push(x);
        x = prev[x];
    }
    cycle.push(a);
    Some(cycle)
}

fn any_induced_cycle(g: &Graph) -> Option<Vec<usize>> {
    for v in 0..g.n() {
        let nb: Vec<usize> = g.neighbors(v).collect();
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                if !g.has_edge(a, b) {
                    if let Some(c) = cycle_through(g, v, a, b) {
                        return Some(c);
                    }
                }
            }
        }
    }
    None
}

/// True when `cycle` is an induced cycle of `g` of length at least 4.
pub fn is_induced_cycle(g: &Graph, cycle: &[usize]) -> bool {
    let k = cycle.len();
    if k < 4 {
        return false;
    }
    let mut seen = std::collections::HashSet::new();
    if !cycle.iter().all(|&v| v < g.n() && seen.insert(v)) {
        return false;
    }
    (0..k).all(|i| {
        (i + 1..k).all(|j| {
            let consecutive = j == i + 1 || (i == 0 && j == k - 1);
            g.has_edge(cycle[i], cycle[j]) == consecutive
        })
    })
}

/// Parent array of the perfect elimination tree: each vertex points to its
/// latest earlier neighbour.
pub fn peo_tree(g: &Graph, order: &[usize]) -> Result<Vec<Option<usize>>, PeoError> {
    certify_peo(g, order).map(|w| w.nu)
}

/// Vertices ordered by (depth, id) in the forest given by `parent`; `None` if
/// `parent` contains a cycle or an out-of-range entry.
pub fn layer_order(parent: &[Option<usize>]) -> Option<Vec<usize>> {
    let n = parent.len();
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut roots = Vec::new();
    for (v, p) in parent.iter().enumerate() {
        match *p {
            None => roots.push(v),
            Some(u) if u < n && u != v => children[u].push(v),
            Some(_) => return None,
        }
    }
    let mut depth = vec![usize::MAX; n];
    let mut queue: VecDeque<usize> = roots.iter().copied().collect();
    for &r in &roots {
        depth[r] = 0;
    }
    while let Some(v) = queue.pop_front() {
        for &c in &children[v] {
            depth[c] = depth[v] + 1;
            queue.push_back(c);
        }
    }
    if depth.contains(&usize::MAX) {
        return None;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (depth[v], v));
    Some(order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn complete_graphs_accept_any_order() {
        let k4 = Graph::complete(4);
        assert!(is_peo(&k4, &mcs_order(&k4)));
        assert!(is_peo(&k4, &[3, 1, 0, 2]));
        assert!(is_peo(&Graph::complete(3), &[2, 0, 1]));
    }

    #[test]
    fn c4_violation() {
        let c4 = cycle(4);
        assert!(!is_peo(&c4, &mcs_order(&c4)));
        assert_eq!(
            certify_peo(&c4, &[0, 1, 2, 3]),
            Err(PeoError::Violation {
                vertex: 3,
                pair: (0, 2)
            })
        );
    }

    #[test]
    fn non_permutations_are_rejected() {
        let g = Graph::complete(3);
        assert!(matches!(certify_peo(&g, &[0, 1]), Err(PeoError::NotPermutation { .. })));
        assert!(matches!(
            certify_peo(&g, &[0, 1, 1]),
            Err(PeoError::NotPermutation { .. })
        ));
        assert!(matches!(
            certify_peo(&g, &[0, 1, 3]),
            Err(PeoError::NotPermutation { .. })
        ));
    }

    #[test]
    fn sample_identity_order() {
        let h = sample_chordal();
        let w = certify_peo(&h, &(0..8).collect::<Vec<_>>()).unwrap();
        assert_eq!(w.outdeg_profile(), vec![0, 1, 2, 2, 2, 3, 2, 1]);
        assert_eq!(w.outdeg.iter().sum::<usize>(), h.m());
        assert!(is_chordal(&h).is_chordal());
    }

    #[test]
    fn sample_tree() {
        let parents = peo_tree(&sample_chordal(), &(0..8).collect::<Vec<_>>()).unwrap();
        assert_eq!(
            parents,
            vec![None, Some(0), Some(1), Some(2), Some(3), Some(3), Some(5), Some(5)]
        );
    }

    #[test]
    fn small_trees() {
        let path = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(peo_tree(&path, &[0, 1, 2]).unwrap(), vec![None, Some(0), Some(1)]);
        let k4 = Graph::complete(4);
        assert_eq!(
            peo_tree(&k4, &[0, 1, 2, 3]).unwrap(),
            vec![None, Some(0), Some(1), Some(2)]
        );
    }

    #[test]
    fn cycles_give_certificates() {
        for n in 4..9 {
            let c = cycle(n);
            match is_chordal(&c) {
                Chordality::NotChordal(cyc) => {
                    assert_eq!(cyc.len(), n);
                    assert!(is_induced_cycle(&c, &cyc));
                }
                Chordality::Chordal(_) => panic!("C_{n} reported chordal"),
            }
        }
    }

    #[test]
    fn forests_are_chordal() {
        let f = Graph::from_edges(7, [(0, 1), (1, 2), (1, 3), (4, 5)]).unwrap();
        let w = is_chordal(&f).witness().unwrap();
        assert!(w.outdeg.iter().all(|&d| d <= 1));
    }

    #[test]
    fn layer_order_detects_cycles() {
        assert_eq!(layer_order(&[None, Some(0), Some(0), Some(1)]), Some(vec![0, 1, 2, 3]));
        assert_eq!(layer_order(&[Some(1), Some(0)]), None);
        assert_eq!(layer_order(&[None, Some(5)]), None);
    }
}
