use rand::Rng;

use super::code::PeoCode;
use crate::graph::{Graph, RngSeed};

/// An 8-vertex connected chordal graph with 13 edges whose identity order
/// is a PEO; vertex 5 is its only cut vertex.
pub fn sample_chordal() -> Graph {
    Graph::from_edges(
        8,
        [
            (0, 1),
            (1, 2),
            (0, 2),
            (2, 3),
            (1, 3),
            (3, 4),
            (1, 4),
            (3, 5),
            (1, 5),
            (2, 5),
            (5, 6),
            (3, 6),
            (5, 7),
        ],
    )
    .expect("fixed edge list is simple")
}

/// The tree code of [`sample_chordal`] under the identity order.
pub fn sample_code() -> PeoCode {
    let bits = |s: &str| s.chars().map(|c| c == '1').collect::<Vec<bool>>();
    PeoCode {
        root: 0,
        parent: vec![None, Some(0), Some(1), Some(2), Some(3), Some(3), Some(5), Some(5)],
        vectors: vec![
            vec![],
            vec![],
            bits("1"),
            bits("01"),
            bits("10"),
            bits("11"),
            bits("001"),
            bits("000"),
        ],
    }
}

/// Random connected chordal graph: vertex `i ≥ 1` picks a uniform earlier
/// vertex `w` and joins `w` plus each earlier neighbour of `w` independently
/// with probability `q`. Those neighbours lie in a clique with `w`, so the
/// identity order is a PEO.
pub fn random_connected_chordal(n: usize, q: f64, seed: RngSeed) -> Graph {
    let mut rng = seed.rng();
    let mut earlier: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut edges = Vec::new();
    for i in 1..n {
        let w = rng.random_range(0..i);
        let mut mine = vec![w];
        mine.extend(earlier[w].iter().copied().filter(|_| rng.random_bool(q)));
        for &u in &mine {
            edges.push((u, i));
        }
        earlier[i] = mine;
    }
    Graph::from_edges(n, edges).expect("each vertex joins distinct earlier vertices")
}
