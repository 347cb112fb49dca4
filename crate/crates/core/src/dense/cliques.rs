use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::graph::Graph;

/// Default search-node budget for one clique extraction.
pub const DEFAULT_CLIQUE_BUDGET: u64 = 20_000;

/// Disjoint cliques of `G` drawn from a ground set, plus the uncovered rest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CliquePartition {
    pub cliques: Vec<Vec<usize>>,
    pub leftover: Vec<usize>,
    pub target_size: usize,
    /// Clique size in force when the partition finished.
    pub final_size: usize,
    pub nodes: u64,
}

impl CliquePartition {
    pub fn edge_count(&self) -> usize {
        self.cliques.iter().map(|c| c.len() * (c.len() - 1) / 2).sum()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for c in &self.cliques {
            for (i, &a) in c.iter().enumerate() {
                for &b in &c[i + 1..] {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

struct Finder<'a> {
    g: &'a Graph,
    k: usize,
    nodes: u64,
    budget: u64,
}

impl Finder<'_> {
    /// Depth-first extension of `clique` inside `cand`, trying candidates by
    /// decreasing degree within `cand`.
    fn extend(&mut self, clique: &mut Vec<usize>, mut cand: FixedBitSet) -> bool {
        if clique.len() == self.k {
            return true;
        }
        if clique.len() + cand.count_ones(..) < self.k || self.nodes >= self.budget {
            return false;
        }
        self.nodes += 1;
        let mut ranked: Vec<(usize, usize)> = cand
            .ones()
            .map(|v| (self.g.neighbor_bits(v).intersection_count(&cand), v))
            .collect();
        ranked.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        for (deg, v) in ranked {
            if clique.len() + 1 + deg < self.k || self.nodes >= self.budget {
                return false;
            }
            let mut next = cand.clone();
            next.intersect_with(&self.g.neighbor_bits(v));
            clique.push(v);
            if self.extend(clique, next) {
                return true;
            }
            clique.pop();
            cand.set(v, false);
        }
        false
    }
}

/// Greedily removes `k`-cliques from `vertices`. Each extraction is a
/// depth-first search limited to `budget` nodes; when it fails, `k` drops by
/// one for the rest of the ground set. Vertices never covered by a clique of
/// size ≥ 2 are returned as leftover.
pub fn clique_partition(g: &Graph, vertices: &[usize], k: usize, budget: u64) -> CliquePartition {
    let n = g.n();
    let mut region = FixedBitSet::with_capacity(n);
    for &v in vertices {
        region.insert(v);
    }
    let mut cliques = Vec::new();
    let mut size = k.max(1);
    let mut nodes = 0;
    while size >= 2 && region.count_ones(..) >= size {
        let mut f = Finder {
            g,
            k: size,
            nodes: 0,
            budget,
        };
        let mut clique = Vec::with_capacity(size);
        let found = f.extend(&mut clique, region.clone());
        nodes += f.nodes;
        if found {
            clique.sort_unstable();
            for &v in &clique {
                region.set(v, false);
            }
            cliques.push(clique);
        } else {
            size -= 1;
        }
    }
    CliquePartition {
        cliques,
        leftover: region.ones().collect(),
        target_size: k,
        final_size: size,
        nodes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_gnp, RngSeed};

    fn check(g: &Graph, p: &CliquePartition, ground: &[usize]) {
        let mut seen = vec![false; g.n()];
        for c in &p.cliques {
            assert!(c.len() >= 2);
            for (i, &a) in c.iter().enumerate() {
                assert!(!seen[a]);
                seen[a] = true;
                for &b in &c[i + 1..] {
                    assert!(g.has_edge(a, b));
                }
            }
        }
        for &v in &p.leftover {
            assert!(!seen[v]);
            seen[v] = true;
        }
        let covered: Vec<usize> = (0..g.n()).filter(|&v| seen[v]).collect();
        let mut ground = ground.to_vec();
        ground.sort_unstable();
        assert_eq!(covered, ground);
    }

    #[test]
    fn k9_into_triangles() {
        let g = Graph::complete(9);
        let all: Vec<usize> = (0..9).collect();
        let p = clique_partition(&g, &all, 3, DEFAULT_CLIQUE_BUDGET);
        assert_eq!(p.cliques.len(), 3);
        assert!(p.leftover.is_empty());
        check(&g, &p, &all);
    }

    #[test]
    fn c5_degrades_to_edges() {
        let g = Graph::from_edges(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        let all: Vec<usize> = (0..5).collect();
        let p = clique_partition(&g, &all, 3, DEFAULT_CLIQUE_BUDGET);
        assert_eq!(p.final_size, 2);
        assert!(p.cliques.iter().all(|c| c.len() == 2));
        assert!(p.leftover.len() <= 1);
        check(&g, &p, &all);
    }

    #[test]
    fn random_instance_coverage() {
        let g = gen_gnp(512, 0.5, RngSeed::new(11, 0)).unwrap();
        let all: Vec<usize> = (0..512).collect();
        let p = clique_partition(&g, &all, 8, DEFAULT_CLIQUE_BUDGET);
        check(&g, &p, &all);
        let covered = 512 - p.leftover.len();
        assert!(covered as f64 >= 0.9 * 512.0, "covered {covered}");
    }
}
