use chordal_core::chordality::is_chordal;
use chordal_core::graph::{gen_gnp, Graph, RngSeed};
use chordal_core::harness::{run_method, Method, Overrides, Param};
use chordal_core::oracle::{has_induced_cycle_brute, max_chordal_exact, max_clique_exact, OracleOptions};
use proptest::prelude::*;

/// Largest chordal spanning subgraph by enumerating every edge subset.
fn enumerate_optimum(g: &Graph) -> usize {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut best = 0;
    for mask in 0u32..1 << edges.len() {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let mut adj = vec![0u64; g.n()];
        for (i, &(a, b)) in edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                adj[a] |= 1 << b;
                adj[b] |= 1 << a;
            }
        }
        if !has_induced_cycle_brute(&adj) {
            best = size;
        }
    }
    best
}

fn cycle(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

#[test]
fn small_named_graphs() {
    let k23 = Graph::from_edges(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap();
    for (g, want) in [(cycle(4), 3), (cycle(5), 4), (k23, 4), (Graph::complete(5), 10)] {
        let r = max_chordal_exact(&g, &OracleOptions::default()).unwrap();
        assert!(r.proved);
        assert_eq!(r.optimum, want);
        assert_eq!(enumerate_optimum(&g), want);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn oracle_matches_enumeration(n in 2usize..=7, p in 0.2..0.8f64, s in any::<u64>()) {
        let g = gen_gnp(n, p, RngSeed::new(s, 0)).unwrap();
        prop_assume!(g.m() <= 15);
        let r = max_chordal_exact(&g, &OracleOptions::default()).unwrap();
        prop_assert!(r.proved);
        prop_assert_eq!(r.optimum, enumerate_optimum(&g));
        let w = Graph::from_edges(n, r.witness_edges.iter().copied()).unwrap();
        prop_assert_eq!(w.m(), r.optimum);
        prop_assert!(is_chordal(&w).is_chordal());
        prop_assert!(r.witness_edges.iter().all(|&(a, b)| g.has_edge(a, b)));
    }

    #[test]
    fn oracle_dominates_constructions(s in any::<u64>()) {
        let g = gen_gnp(8, 0.5, RngSeed::new(s, 0)).unwrap();
        let r = max_chordal_exact(&g, &OracleOptions::default()).unwrap();
        let omega = max_clique_exact(&g, u64::MAX).size();
        prop_assert!(r.optimum <= 8 * omega.saturating_sub(1));
        for m in [Method::DenseLb, Method::CliqueUnion, Method::PathPower, Method::Forest] {
            let c = run_method(&g, m, &Param::P(0.5), &Overrides::default()).unwrap();
            prop_assert!(c.achieved_edges <= r.optimum, "{m}");
        }
    }
}

#[test]
fn clique_number_of_known_graphs() {
    assert_eq!(max_clique_exact(&Graph::complete(7), u64::MAX).size(), 7);
    assert_eq!(max_clique_exact(&cycle(5), u64::MAX).size(), 2);
}
