use chordal_core::chordality::is_peo;
use chordal_core::construct::clique_edge_bound;
use chordal_core::dense::{
    clique_partition, clique_union_baseline, dense_lower_construct, full_path_power_edges, hopcroft_karp,
    path_power_chains, path_power_construct, DenseLowerOptions, DEFAULT_CLIQUE_BUDGET,
};
use chordal_core::graph::{component_count, gen_gnp, Graph, RngSeed};
use proptest::prelude::*;

fn gnp(n: usize, p: f64, s: u64) -> Graph {
    gen_gnp(n, p, RngSeed::new(s, 0)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn partition_cliques_are_genuine(n in 2usize..120, p in 0.05..0.95f64, k in 2usize..8, s in any::<u64>()) {
        let g = gnp(n, p, s);
        let all: Vec<usize> = (0..n).collect();
        let part = clique_partition(&g, &all, k, DEFAULT_CLIQUE_BUDGET);
        let mut seen = vec![false; n];
        for c in &part.cliques {
            prop_assert!(c.len() >= 2 && c.len() <= k);
            for (i, &a) in c.iter().enumerate() {
                prop_assert!(!seen[a]);
                seen[a] = true;
                for &b in &c[i + 1..] {
                    prop_assert!(g.has_edge(a, b));
                }
            }
        }
        for &v in &part.leftover {
            prop_assert!(!seen[v]);
            seen[v] = true;
        }
        prop_assert!(seen.iter().all(|&x| x));
    }

    #[test]
    fn dense_output_within_bounds(n in 8usize..150, p in 0.1..0.9f64, s in any::<u64>()) {
        let g = gnp(n, p, s);
        let opts = DenseLowerOptions { p: Some(p), ..DenseLowerOptions::default() };
        let r = dense_lower_construct(&g, &opts).unwrap();
        prop_assert!(r.certified);
        r.subgraph.check_within(&g).unwrap();
        prop_assert!(is_peo(&r.subgraph.to_graph(), &r.witness.order));
        prop_assert!(r.achieved_edges >= n - component_count(&g));
        prop_assert!(r.achieved_edges <= clique_edge_bound(&g));
    }

    #[test]
    fn path_powers_are_exact_when_perfect(q in 1usize..6, m in 2usize..8, k in 1usize..4) {
        let g = Graph::complete(q * m);
        let r = path_power_construct(&g, m, k, false).unwrap();
        prop_assert_eq!(r.phase_stats.all_matchings_perfect, Some(true));
        prop_assert_eq!(r.achieved_edges, full_path_power_edges(q, m, k));
    }

    #[test]
    fn matching_is_valid(left in 1usize..30, right in 1usize..30, p in 0.0..1.0f64, s in any::<u64>()) {
        let mut rng = RngSeed::new(s, 0).rng();
        let adj: Vec<Vec<usize>> = (0..left)
            .map(|_| (0..right).filter(|_| rand::Rng::random_bool(&mut rng, p)).collect())
            .collect();
        let mate = hopcroft_karp(right, &adj);
        let mut used = vec![false; right];
        for (u, m) in mate.iter().enumerate() {
            if let Some(v) = *m {
                prop_assert!(adj[u].contains(&v));
                prop_assert!(!used[v]);
                used[v] = true;
            }
        }
    }
}

#[test]
fn complete_graph_attachment() {
    let g = Graph::complete(8);
    let opts = DenseLowerOptions {
        p: Some(0.5),
        k: Some(4),
        v_size: Some(4),
        complete_forest: false,
        ..DenseLowerOptions::default()
    };
    let r = dense_lower_construct(&g, &opts).unwrap();
    assert_eq!(r.achieved_edges, 22);
    assert!(r.certified);
}

#[test]
fn dominates_baseline_on_dense_instances() {
    for s in 0..3 {
        let g = gnp(512, 0.5, s);
        let opts = DenseLowerOptions {
            p: Some(0.5),
            ..DenseLowerOptions::default()
        };
        let r = dense_lower_construct(&g, &opts).unwrap();
        let k = r.phase_stats.clique_target.unwrap();
        let b = clique_union_baseline(&g, k, DEFAULT_CLIQUE_BUDGET, true).unwrap();
        assert!(
            r.achieved_edges > b.achieved_edges,
            "seed {s}: {} vs {}",
            r.achieved_edges,
            b.achieved_edges
        );
    }
}

#[test]
fn chains_are_disjoint_paths_power() {
    let g = gnp(400, 0.5, 11);
    let (chains, _) = path_power_chains(&g, 10, 3).unwrap();
    let mut seen = vec![false; 400];
    for c in &chains {
        for (i, &v) in c.iter().enumerate() {
            assert!(!seen[v]);
            seen[v] = true;
            for &w in &c[i.saturating_sub(3)..i] {
                assert!(g.has_edge(v, w));
            }
        }
    }
}
