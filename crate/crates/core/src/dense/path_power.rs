use super::matching::hopcroft_karp;
use crate::construct::{certify, forest_completion, ConstructError, ConstructionResult, PhaseStats};
use crate::graph::Graph;
use crate::theory::log_base;

/// Default `(m, k) = (⌊ln²n⌋, ⌊log_{1/p} n − 4 log_{1/p} ln n⌋)`, each
/// clamped below (`m ≥ 2`, `k ≥ 1`) because the formulas go non-positive at
/// small `n`.
pub fn path_power_defaults(n: usize, p: f64) -> (usize, usize) {
    let nf = n.max(3) as f64;
    let m = (nf.ln().powi(2).floor() as usize).max(2);
    let k = (log_base(nf, p) - 4.0 * log_base(nf.ln(), p)).floor();
    (m.min(n.max(2)), if k < 1.0 { 1 } else { k as usize })
}

/// Chain `j` starts at the `j`-th vertex of `V_1`. In round `i` the live
/// chains are matched into `V_i` through the bipartite graph "vertex adjacent
/// to all of the chain's last `min(k, i−1)` vertices"; matched chains grow,
/// unmatched chains are frozen for the remaining rounds.
pub fn path_power_chains(g: &Graph, m: usize, k: usize) -> Result<(Vec<Vec<usize>>, PhaseStats), ConstructError> {
    let n = g.n();
    if m < 2 || k < 1 {
        return Err(ConstructError::Parameter(format!(
            "need m ≥ 2 and k ≥ 1, got m = {m}, k = {k}"
        )));
    }
    let q = n / m;
    if q == 0 {
        return Err(ConstructError::Parameter(format!("m = {m} exceeds n = {n}")));
    }
    let mut chains: Vec<Vec<usize>> = (0..q).map(|j| vec![j]).collect();
    let mut live = vec![true; q];
    let mut perfect = 0;
    for i in 1..m {
        let part: Vec<usize> = (i * q..(i + 1) * q).collect();
        let active: Vec<usize> = (0..q).filter(|&j| live[j]).collect();
        let adj: Vec<Vec<usize>> = active
            .iter()
            .map(|&j| {
                let c = &chains[j];
                let tail = &c[c.len().saturating_sub(k)..];
                (0..q)
                    .filter(|&r| tail.iter().all(|&t| g.has_edge(t, part[r])))
                    .collect()
            })
            .collect();
        let matching = hopcroft_karp(q, &adj);
        let mut matched = 0;
        for (slot, &j) in active.iter().enumerate() {
            match matching[slot] {
                Some(r) => {
                    chains[j].push(part[r]);
                    matched += 1;
                }
                None => live[j] = false,
            }
        }
        if matched == q {
            perfect += 1;
        }
    }
    let frozen = live.iter().filter(|&&l| !l).count();
    let stats = PhaseStats {
        chains: Some(q),
        matching_rounds: Some(m - 1),
        perfect_matchings: Some(perfect),
        frozen_chains: Some(frozen),
        all_matchings_perfect: Some(frozen == 0),
        ..PhaseStats::default()
    };
    Ok((chains, stats))
}

/// Edges of the `k`-th power of each chain, each vertex joined to its `k`
/// predecessors.
pub fn path_power_edges(chains: &[Vec<usize>], k: usize) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for c in chains {
        for (t, &v) in c.iter().enumerate() {
            for &w in &c[t.saturating_sub(k)..t] {
                edges.push((w, v));
            }
        }
    }
    edges
}

/// `q · (km − k(k+1)/2)`: the edge count when every chain reaches length `m ≥ k`.
pub fn full_path_power_edges(q: usize, m: usize, k: usize) -> usize {
    let k = k.min(m.saturating_sub(1));
    q * (k * m - k * (k + 1) / 2)
}

pub fn path_power_construct(
    g: &Graph,
    m: usize,
    k: usize,
    complete_forest: bool,
) -> Result<ConstructionResult, ConstructError> {
    let (chains, mut stats) = path_power_chains(g, m, k)?;
    let edges = path_power_edges(&chains, k);
    let mut order: Vec<usize> = chains.iter().flatten().copied().collect();
    let mut used = vec![false; g.n()];
    for &v in &order {
        used[v] = true;
    }
    order.extend((0..g.n()).filter(|&v| !used[v]));
    if complete_forest {
        let (all, added) = forest_completion(g, edges);
        stats.forest_edges_added = Some(added);
        certify(g, "path-power", all, None, stats)
    } else {
        certify(g, "path-power", edges, Some(&order), stats)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k6_paths() {
        let r = path_power_construct(&Graph::complete(6), 3, 1, false).unwrap();
        assert_eq!(r.achieved_edges, 4);
        assert_eq!(r.phase_stats.all_matchings_perfect, Some(true));
    }

    #[test]
    fn k9_triangles() {
        let r = path_power_construct(&Graph::complete(9), 3, 2, false).unwrap();
        assert_eq!(r.achieved_edges, 9);
        assert_eq!(full_path_power_edges(3, 3, 2), 9);
    }

    #[test]
    fn full_count_formula_surplus() {
        for (q, m, k) in [(5, 10, 3), (51, 40, 4), (2, 7, 1)] {
            let chains: Vec<Vec<usize>> = (0..q).map(|j| (j * m..(j + 1) * m).collect()).collect();
            assert_eq!(path_power_edges(&chains, k).len(), full_path_power_edges(q, m, k));
            // the surplus over q(m − k)k is q·k(k−1)/2, so equality at k = 1
            assert_eq!(full_path_power_edges(q, m, k) - q * (m - k) * k, q * k * (k - 1) / 2);
        }
    }

    #[test]
    fn frozen_chain_on_sparse_graph() {
        // vertex 0 has no neighbour in V_2 = {2, 3}
        let g = Graph::from_edges(4, [(1, 2), (1, 3)]).unwrap();
        let (chains, stats) = path_power_chains(&g, 2, 1).unwrap();
        assert_eq!(stats.frozen_chains, Some(1));
        assert_eq!(chains.iter().map(Vec::len).sum::<usize>(), 3);
    }

    #[test]
    fn defaults_clamp() {
        let (m, k) = path_power_defaults(2048, 0.5);
        assert_eq!(m, 58);
        assert_eq!(k, 1);
        assert!(path_power_chains(&Graph::complete(3), 1, 1).is_err());
        assert!(path_power_chains(&Graph::complete(3), 4, 1).is_err());
    }
}
