use std::collections::VecDeque;

use super::{EdgeSubgraph, Graph};

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
    sets: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
            sets: n,
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let up = self.parent[self.parent[x] as usize];
            self.parent[x] = up;
            x = up as usize;
        }
        x
    }

    /// Returns `false` when `a` and `b` were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra as u32;
        self.size[ra] += self.size[rb];
        self.sets -= 1;
        true
    }

    pub fn sets(&self) -> usize {
        self.sets
    }
}

/// Connected components, each sorted, ordered by smallest vertex.
pub fn connected_components(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        queue.push_back(s);
        let mut comp = Vec::new();
        while let Some(v) = queue.pop_front() {
            comp.push(v);
            for w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

pub fn component_count(g: &Graph) -> usize {
    let mut uf = UnionFind::new(g.n());
    for (u, v) in g.edges() {
        uf.union(u, v);
    }
    uf.sets()
}

pub fn is_connected(g: &Graph) -> bool {
    g.n() <= 1 || component_count(g) == 1
}

/// BFS spanning forest; has `n - components` edges.
pub fn spanning_forest(g: &Graph) -> EdgeSubgraph {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    let mut queue = VecDeque::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            for w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    edges.push((v, w));
                    queue.push_back(w);
                }
            }
        }
    }
    EdgeSubgraph::new(n, edges).expect("tree edges are simple")
}

struct Biconnectivity {
    blocks: Vec<Vec<(usize, usize)>>,
    cut: Vec<bool>,
}

/// Iterative Hopcroft–Tarjan over every component.
fn biconnectivity(g: &Graph) -> Biconnectivity {
    const UNSEEN: u32 = u32::MAX;
    let n = g.n();
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0u32; n];
    let mut cut = vec![false; n];
    let mut blocks = Vec::new();
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    // (vertex, parent, next neighbour index)
    let mut stack: Vec<(usize, usize, usize)> = Vec::new();
    let mut time = 0u32;

    for root in 0..n {
        if disc[root] != UNSEEN {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        let mut root_children = 0;
        stack.push((root, usize::MAX, 0));
        while let Some(frame) = stack.last_mut() {
            let (v, parent) = (frame.0, frame.1);
            let adj = g.adjacency(v);
            if frame.2 < adj.len() {
                let w = adj[frame.2] as usize;
                frame.2 += 1;
                if disc[w] == UNSEEN {
                    edge_stack.push((v, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
                continue;
            }
            stack.pop();
            if let Some(&(u, _, _)) = stack.last() {
                low[u] = low[u].min(low[v]);
                if low[v] >= disc[u] {
                    if u != root {
                        cut[u] = true;
                    }
                    let mut block = Vec::new();
                    while let Some(e) = edge_stack.pop() {
                        block.push(e);
                        if e == (u, v) {
                            break;
                        }
                    }
                    blocks.push(block);
                }
            }
        }
        if root_children >= 2 {
            cut[root] = true;
        }
    }
    Biconnectivity { blocks, cut }
}

/// Block decomposition: maximal 2-connected subgraphs and bridges. Every
/// edge lies in exactly one block; isolated vertices produce no block.
pub fn blocks(g: &Graph) -> Vec<EdgeSubgraph> {
    biconnectivity(g)
        .blocks
        .into_iter()
        .map(|edges| EdgeSubgraph::new(g.n(), edges).expect("block edges are simple"))
        .collect()
}

pub fn cut_vertices(g: &Graph) -> Vec<usize> {
    let bc = biconnectivity(g);
    (0..g.n()).filter(|&v| bc.cut[v]).collect()
}

/// At least three vertices, connected, and no cut vertex.
pub fn is_biconnected(g: &Graph) -> bool {
    g.n() >= 3 && is_connected(g) && cut_vertices(g).is_empty()
}

/// Smallest-last (degeneracy) order and the degeneracy.
pub fn degeneracy_order(g: &Graph) -> (Vec<usize>, usize) {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let max_deg = deg.iter().copied().max().unwrap_or(0);
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); max_deg + 1];
    for v in 0..n {
        buckets[deg[v]].push(v);
    }
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut degeneracy = 0;
    let mut low = 0;
    while order.len() < n {
        low = low.min(max_deg);
        let v = loop {
            match buckets[low].pop() {
                Some(v) if !removed[v] && deg[v] == low => break v,
                Some(_) => {}
                None => low += 1,
            }
        };
        degeneracy = degeneracy.max(low);
        removed[v] = true;
        order.push(v);
        for w in g.neighbors(v) {
            if !removed[w] {
                deg[w] -= 1;
                buckets[deg[w]].push(w);
                low = low.min(deg[w]);
            }
        }
    }
    (order, degeneracy)
}
