use super::gadgets::Gadget;
use super::SparseError;
use crate::construct::{certify, ConstructError, ConstructionResult, PhaseStats};
use crate::graph::Graph;

/// Largest gadget the tiler accepts.
pub const TILE_MAX_N: usize = 16;

/// Default search-node budget for one tile attempt from one start vertex.
pub const DEFAULT_TILE_BUDGET: u64 = 256;

/// Images of the gadget vertices, one vector per placed tile.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Tiles {
    pub maps: Vec<Vec<usize>>,
    pub nodes: u64,
}

impl Tiles {
    /// Edges of `G` carrying the gadget edges under each map.
    pub fn edges(&self, gadget: &Graph) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.maps.len() * gadget.m());
        for map in &self.maps {
            out.extend(gadget.edges().map(|(a, b)| (map[a], map[b])));
        }
        out
    }
}

struct Embedder<'a> {
    g: &'a Graph,
    /// Earlier neighbours of each gadget vertex in its natural order.
    earlier: &'a [Vec<usize>],
    covered: &'a [bool],
    image: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl Embedder<'_> {
    fn extend(&mut self) -> bool {
        let i = self.image.len();
        if i == self.earlier.len() {
            return true;
        }
        if self.nodes >= self.budget {
            return false;
        }
        self.nodes += 1;
        let mut anchors: Vec<usize> = self.earlier[i].iter().map(|&a| self.image[a]).collect();
        anchors.sort_unstable_by_key(|&a| self.g.degree(a));
        let mut cand: Vec<u32> = self.g.adjacency(anchors[0]).to_vec();
        for &a in &anchors[1..] {
            intersect(&mut cand, self.g.adjacency(a));
            if cand.is_empty() {
                return false;
            }
        }
        for c in cand {
            let c = c as usize;
            if self.covered[c] || self.image.contains(&c) {
                continue;
            }
            self.image.push(c);
            if self.extend() {
                return true;
            }
            self.image.pop();
            if self.nodes >= self.budget {
                return false;
            }
        }
        false
    }
}

/// Keeps the elements of sorted `a` that occur in sorted `b`: binary search
/// when `a` is much shorter, a merge otherwise.
fn intersect(a: &mut Vec<u32>, b: &[u32]) {
    if a.len() * 16 < b.len() {
        a.retain(|x| b.binary_search(x).is_ok());
        return;
    }
    let mut j = 0;
    a.retain(|&x| {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        j < b.len() && b[j] == x
    });
}

/// Places vertex-disjoint copies of `gadget` avoiding `covered`, trying each
/// uncovered vertex in index order as the image of gadget vertex 0. The
/// gadget is embedded along its natural order, so every new vertex must be a
/// common neighbour of the images of its earlier neighbours. Placed tiles are
/// marked in `covered`.
pub fn find_tiles(g: &Graph, gadget: &Graph, covered: &mut [bool], budget: u64) -> Tiles {
    let k = gadget.n();
    let earlier: Vec<Vec<usize>> = (0..k)
        .map(|i| gadget.neighbors(i).filter(|&a| a < i).collect())
        .collect();
    debug_assert!(earlier.iter().skip(1).all(|e| !e.is_empty()));
    let mut tiles = Tiles::default();
    if k == 0 {
        return tiles;
    }
    for v in 0..g.n() {
        if covered[v] || g.degree(v) < gadget.degree(0) {
            continue;
        }
        let mut e = Embedder {
            g,
            earlier: &earlier,
            covered: &*covered,
            image: vec![v],
            nodes: 0,
            budget,
        };
        let found = e.extend();
        tiles.nodes += e.nodes;
        if found {
            let map = e.image;
            for &w in &map {
                covered[w] = true;
            }
            tiles.maps.push(map);
        }
    }
    tiles
}

/// Checks that `map` is injective and carries every gadget edge onto an edge of `g`.
pub fn is_embedding(g: &Graph, gadget: &Graph, map: &[usize]) -> bool {
    let mut sorted = map.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    map.len() == gadget.n()
        && sorted.len() == map.len()
        && map.iter().all(|&v| v < g.n())
        && gadget.edges().all(|(a, b)| g.has_edge(map[a], map[b]))
}

pub(crate) fn check_tile_size(gadget: &Gadget) -> Result<(), SparseError> {
    if gadget.vertices > TILE_MAX_N {
        return Err(SparseError::TooLarge {
            n: gadget.vertices,
            cap: TILE_MAX_N,
        });
    }
    Ok(())
}

/// Disjoint copies of one gadget, certified with the concatenated tile
/// orders as witness.
pub fn greedy_tiling(g: &Graph, gadget: &Gadget, budget: u64) -> Result<ConstructionResult, ConstructError> {
    check_tile_size(gadget)?;
    let mut covered = vec![false; g.n()];
    let tiles = find_tiles(g, &gadget.graph, &mut covered, budget);
    let edges = tiles.edges(&gadget.graph);
    let mut order: Vec<usize> = tiles.maps.iter().flatten().copied().collect();
    order.extend((0..g.n()).filter(|&v| !covered[v]));
    let stats = PhaseStats {
        gadget: Some(gadget.name.clone()),
        tiles_placed: Some(tiles.maps.len()),
        tile_edges: Some(edges.len()),
        search_nodes: Some(tiles.nodes),
        ..PhaseStats::default()
    };
    certify(g, "tiling", edges, Some(&order), stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sparse::square_path_gadget;

    #[test]
    fn two_triangles() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let t = square_path_gadget(1, 1).unwrap();
        let r = greedy_tiling(&g, &t, DEFAULT_TILE_BUDGET).unwrap();
        assert_eq!(r.phase_stats.tiles_placed, Some(2));
        assert_eq!(r.achieved_edges, 6);
    }

    #[test]
    fn triangle_free() {
        let c6 = Graph::from_edges(6, (0..6).map(|i| (i, (i + 1) % 6))).unwrap();
        let t = square_path_gadget(1, 1).unwrap();
        let r = greedy_tiling(&c6, &t, DEFAULT_TILE_BUDGET).unwrap();
        assert_eq!(r.phase_stats.tiles_placed, Some(0));
        assert_eq!(r.achieved_edges, 0);
    }

    #[test]
    fn chain_needs_shared_vertex() {
        // two triangles sharing vertex 2 form F(2) for k = 1
        let g = Graph::from_edges(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]).unwrap();
        let f2 = square_path_gadget(1, 2).unwrap();
        let mut covered = vec![false; 5];
        let tiles = find_tiles(&g, &f2.graph, &mut covered, DEFAULT_TILE_BUDGET);
        assert_eq!(tiles.maps.len(), 1);
        assert!(is_embedding(&g, &f2.graph, &tiles.maps[0]));
        assert!(covered.iter().all(|&c| c));
    }

    #[test]
    fn oversized_gadget_rejected() {
        let big = square_path_gadget(1, 8).unwrap();
        assert!(greedy_tiling(&Graph::complete(20), &big, 10).is_err());
    }
}
