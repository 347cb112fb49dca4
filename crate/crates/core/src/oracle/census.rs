use serde::Serialize;

use super::chordal_bb::full_mask;
use super::OracleError;
use crate::chordality::is_chordal;
use crate::graph::Graph;

/// Largest `n` for the labelled census, and for the isomorphism-class census.
pub const CENSUS_MAX_N: usize = 7;
pub const UNLABELLED_MAX_N: usize = 6;

/// Neighbour masks of `g`; `g` must have at most 64 vertices.
pub fn masks(g: &Graph) -> Vec<u64> {
    (0..g.n())
        .map(|v| g.neighbors(v).fold(0u64, |acc, w| acc | 1 << w))
        .collect()
}

/// Direct search for an induced cycle of length ≥ 4: some vertex subset of
/// size ≥ 4 whose induced subgraph is connected and 2-regular.
/// Exponential in `n`; meant for `n ≤ 16`.
pub fn has_induced_cycle_brute(adj: &[u64]) -> bool {
    let n = adj.len();
    let all = full_mask(n);
    let mut s: u64 = 0;
    loop {
        s = s.wrapping_sub(all) & all;
        if s == 0 {
            return false;
        }
        if s.count_ones() >= 4 && is_cycle(adj, s) {
            return true;
        }
    }
}

fn is_cycle(adj: &[u64], s: u64) -> bool {
    let mut rest = s;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if (adj[v] & s).count_ones() != 2 {
            return false;
        }
    }
    let start = s.trailing_zeros() as usize;
    let mut seen = 1u64 << start;
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0;
        let mut f = frontier;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= adj[v] & s;
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen == s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CensusRow {
    pub n: usize,
    pub labelled_total: u64,
    pub labelled_chordal: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unlabelled_total: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unlabelled_chordal: Option<u64>,
    /// Graphs where recognition and the direct cycle search disagree.
    pub disagreements: u64,
}

fn graph_from_code(n: usize, pairs: &[(usize, usize)], code: u64) -> Graph {
    let edges = pairs
        .iter()
        .enumerate()
        .filter(|&(i, _)| code >> i & 1 == 1)
        .map(|(_, &e)| e);
    Graph::from_edges(n, edges).expect("pairs are distinct")
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn rec(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(k + 1, p, out);
            p.swap(k, i);
        }
    }
    rec(0, &mut p, &mut out);
    out
}

/// Tabulates chordal graphs on `1..=n_max` vertices, checking recognition
/// against [`has_induced_cycle_brute`] on every labelled graph. Isomorphism
/// classes are counted by minimum edge code over all relabellings.
pub fn all_graphs_chordality_census(n_max: usize) -> Result<Vec<CensusRow>, OracleError> {
    if n_max > CENSUS_MAX_N {
        return Err(OracleError::TooManyVertices(n_max));
    }
    let mut rows = Vec::new();
    for n in 1..=n_max {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let mut index = vec![vec![0usize; n]; n];
        for (i, &(u, v)) in pairs.iter().enumerate() {
            index[u][v] = i;
            index[v][u] = i;
        }
        let perms = if n <= UNLABELLED_MAX_N {
            all_permutations(n)
        } else {
            Vec::new()
        };
        let total = 1u64 << pairs.len();
        let mut chordal = 0;
        let mut disagreements = 0;
        let mut classes = 0;
        let mut chordal_classes = 0;
        for code in 0..total {
            let g = graph_from_code(n, &pairs, code);
            let fast = is_chordal(&g).is_chordal();
            let slow = !has_induced_cycle_brute(&masks(&g));
            if fast != slow {
                disagreements += 1;
            }
            chordal += u64::from(fast);
            if !perms.is_empty() {
                let canonical = perms.iter().all(|p| {
                    let relabelled = pairs
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| code >> i & 1 == 1)
                        .fold(0u64, |acc, (_, &(u, v))| acc | 1 << index[p[u]][p[v]]);
                    relabelled >= code
                });
                if canonical {
                    classes += 1;
                    chordal_classes += u64::from(fast);
                }
            }
        }
        let iso = !perms.is_empty();
        rows.push(CensusRow {
            n,
            labelled_total: total,
            labelled_chordal: chordal,
            unlabelled_total: iso.then_some(classes),
            unlabelled_chordal: iso.then_some(chordal_classes),
            disagreements,
        });
    }
    Ok(rows)
}
