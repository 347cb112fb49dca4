use serde::Serialize;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CliqueResult {
    /// Largest clique found, ascending.
    pub clique: Vec<usize>,
    /// False when the node budget ran out before the search finished.
    pub proved: bool,
    pub nodes: u64,
}

impl CliqueResult {
    pub fn size(&self) -> usize {
        self.clique.len()
    }

    pub fn proved_clique(&self) -> Option<&[usize]> {
        self.proved.then_some(&self.clique[..])
    }
}

type Words = Vec<u64>;

fn bit(w: &[u64], v: usize) -> bool {
    w[v >> 6] >> (v & 63) & 1 == 1
}

fn set(w: &mut [u64], v: usize) {
    w[v >> 6] |= 1 << (v & 63);
}

fn clear(w: &mut [u64], v: usize) {
    w[v >> 6] &= !(1 << (v & 63));
}

fn members(w: &[u64]) -> impl Iterator<Item = usize> + '_ {
    w.iter().enumerate().flat_map(|(i, &word)| {
        let mut x = word;
        std::iter::from_fn(move || {
            (x != 0).then(|| {
                let b = x.trailing_zeros() as usize;
                x &= x - 1;
                i * 64 + b
            })
        })
    })
}

struct Search<'a> {
    rows: &'a [Words],
    best: Vec<usize>,
    current: Vec<usize>,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

impl Search<'_> {
    /// Greedy sequential colouring of `p`; returns vertices and colour numbers
    /// in non-decreasing colour order.
    fn colour(&self, p: &Words) -> (Vec<usize>, Vec<usize>) {
        let mut uncoloured = p.clone();
        let mut order = Vec::new();
        let mut colours = Vec::new();
        let mut colour = 0;
        while uncoloured.iter().any(|&w| w != 0) {
            colour += 1;
            let mut q = uncoloured.clone();
            loop {
                let Some(v) = members(&q).next() else { break };
                clear(&mut uncoloured, v);
                for (qi, ri) in q.iter_mut().zip(&self.rows[v]) {
                    *qi &= !ri;
                }
                clear(&mut q, v);
                order.push(v);
                colours.push(colour);
            }
        }
        (order, colours)
    }

    fn expand(&mut self, mut p: Words) {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return;
        }
        let (order, colours) = self.colour(&p);
        for idx in (0..order.len()).rev() {
            if self.current.len() + colours[idx] <= self.best.len() {
                return;
            }
            let v = order[idx];
            self.current.push(v);
            let next: Words = p.iter().zip(&self.rows[v]).map(|(a, b)| a & b).collect();
            if next.iter().all(|&w| w == 0) {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            if self.exhausted {
                return;
            }
            clear(&mut p, v);
        }
    }
}

/// Maximum clique by branch and bound with greedy-colouring bounds.
pub fn max_clique_exact(g: &Graph, budget: u64) -> CliqueResult {
    let n = g.n();
    let words = n.div_ceil(64).max(1);
    let rows: Vec<Words> = (0..n)
        .map(|v| {
            let mut r = vec![0u64; words];
            for w in g.neighbors(v) {
                set(&mut r, w);
            }
            r
        })
        .collect();
    let mut all = vec![0u64; words];
    for v in 0..n {
        set(&mut all, v);
    }
    let mut s = Search {
        rows: &rows,
        best: Vec::new(),
        current: Vec::new(),
        nodes: 0,
        budget,
        exhausted: false,
    };
    if n > 0 {
        s.expand(all);
    }
    let mut clique = s.best;
    clique.sort_unstable();
    debug_assert!(clique
        .iter()
        .enumerate()
        .all(|(i, &a)| clique[i + 1..].iter().all(|&b| bit(&rows[a], b))));
    CliqueResult {
        clique,
        proved: !s.exhausted,
        nodes: s.nodes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_omega(g: &Graph) -> usize {
        let n = g.n();
        (0u32..1 << n)
            .filter(|&s| (0..n).all(|a| s >> a & 1 == 0 || (a + 1..n).all(|b| s >> b & 1 == 0 || g.has_edge(a, b))))
            .map(|s| s.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn small_graphs() {
        let c5 = Graph::from_edges(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        assert_eq!(max_clique_exact(&c5, u64::MAX).size(), 2);
        assert_eq!(max_clique_exact(&Graph::complete(7), u64::MAX).size(), 7);
        assert_eq!(max_clique_exact(&Graph::empty(3), u64::MAX).size(), 1);
        assert_eq!(max_clique_exact(&Graph::empty(0), u64::MAX).size(), 0);
    }

    #[test]
    fn k7_minus_matching_plus_one() {
        // remove the matching {01, 23, 45} and one more edge {06}
        let removed = [(0, 1), (2, 3), (4, 5), (0, 6)];
        let edges = Graph::complete(7)
            .edges()
            .filter(|e| !removed.contains(e))
            .collect::<Vec<_>>();
        let g = Graph::from_edges(7, edges).unwrap();
        let r = max_clique_exact(&g, u64::MAX);
        assert_eq!(r.size(), brute_omega(&g));
        assert_eq!(r.size(), 4);
    }

    #[test]
    fn budget_exhaustion_is_flagged() {
        let g = crate::graph::gen_gnp(120, 0.5, crate::graph::RngSeed::new(3, 0)).unwrap();
        let r = max_clique_exact(&g, 5);
        assert!(!r.proved);
        assert!(r.proved_clique().is_none());
    }
}
