use fixedbitset::FixedBitSet;

use super::{is_chordal, mcs_order};
use crate::graph::{is_biconnected, Graph};

/// Largest graph accepted by [`h_family_search`].
pub const SEARCH_MAX_N: usize = 24;

fn is_k2(g: &Graph) -> bool {
    g.n() == 2 && g.m() == 1
}

/// Checks `order` against the definition: the first two vertices are
/// adjacent and every later vertex has at least two earlier neighbours, all
/// pairwise adjacent.
pub fn h_family_witness_ok(g: &Graph, order: &[usize]) -> bool {
    let n = g.n();
    if n < 2 || order.len() != n || !g.has_edge(order[0], order[1]) {
        return false;
    }
    let mut rank = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        if v >= n || rank[v] != usize::MAX {
            return false;
        }
        rank[v] = i;
    }
    order[2..].iter().all(|&v| {
        let earlier: Vec<usize> = g.neighbors(v).filter(|&w| rank[w] < rank[v]).collect();
        earlier.len() >= 2
            && earlier
                .iter()
                .enumerate()
                .all(|(i, &a)| earlier[i + 1..].iter().all(|&b| g.has_edge(a, b)))
    })
}

/// A definition-conforming ordering built by maximum cardinality search, or
/// `None`. On a 2-connected chordal graph every MCS order qualifies: a vertex
/// with a single earlier neighbour would make that neighbour a cut vertex.
pub fn h_family_witness(g: &Graph) -> Option<Vec<usize>> {
    let order = mcs_order(g);
    h_family_witness_ok(g, &order).then_some(order)
}

/// Membership decided by checking an explicit ordering against the definition.
pub fn h_family_member(g: &Graph) -> bool {
    h_family_witness(g).is_some()
}

/// Membership via the characterisation: `K_2`, or 2-connected and chordal.
pub fn h_family_structural(g: &Graph) -> bool {
    is_k2(g) || (is_biconnected(g) && is_chordal(g).is_chordal())
}

/// Exhaustive search over vertex subsets reachable by the defining growth
/// rule. Returns `None` when `n` exceeds [`SEARCH_MAX_N`].
pub fn h_family_search(g: &Graph) -> Option<bool> {
    let n = g.n();
    if n > SEARCH_MAX_N {
        return None;
    }
    if n < 2 {
        return Some(false);
    }
    let nbr: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).fold(0u32, |acc, w| acc | 1 << w))
        .collect();
    let full: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };
    let is_clique = |mut set: u32| {
        while set != 0 {
            let v = set.trailing_zeros() as usize;
            set &= set - 1;
            if set & !nbr[v] != 0 {
                return false;
            }
        }
        true
    };
    let mut seen = FixedBitSet::with_capacity(1 << n);
    let mut stack: Vec<u32> = g.edges().map(|(a, b)| (1 << a) | (1 << b)).collect();
    for &s in &stack {
        seen.insert(s as usize);
    }
    while let Some(s) = stack.pop() {
        if s == full {
            return Some(true);
        }
        let mut rest = full & !s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let inside = nbr[v] & s;
            let next = s | 1 << v;
            if inside.count_ones() >= 2 && !seen.contains(next as usize) && is_clique(inside) {
                seen.insert(next as usize);
                stack.push(next);
            }
        }
    }
    Some(false)
}
