use super::cliques::{clique_partition, DEFAULT_CLIQUE_BUDGET};
use crate::construct::{certify, forest_completion, ConstructError, ConstructionResult, PhaseStats};
use crate::graph::Graph;
use crate::theory::{dense_params, k_minus, log_base};

#[derive(Debug, Clone, PartialEq)]
pub struct DenseLowerOptions {
    /// Edge probability; estimated from the edge density when absent.
    pub p: Option<f64>,
    /// Requested clique size; the size used is `max(2, k_−(n′, p), k)`.
    /// Defaults to `round(log_{1/p} n′) + 2`.
    pub k: Option<usize>,
    /// `|V| = ⌊v_fraction · n⌋` instead of `⌊n / ln n⌋`.
    pub v_fraction: Option<f64>,
    /// Exact `|V|`; takes precedence over `v_fraction`.
    pub v_size: Option<usize>,
    pub clique_budget: u64,
    pub complete_forest: bool,
}

impl Default for DenseLowerOptions {
    fn default() -> Self {
        Self {
            p: None,
            k: None,
            v_fraction: None,
            v_size: None,
            clique_budget: DEFAULT_CLIQUE_BUDGET,
            complete_forest: true,
        }
    }
}

/// `m / C(n, 2)`.
pub fn edge_density(g: &Graph) -> f64 {
    let n = g.n() as f64;
    if g.n() < 2 {
        0.0
    } else {
        g.m() as f64 / (n * (n - 1.0) / 2.0)
    }
}

fn resolve_p(g: &Graph, p: Option<f64>) -> Result<f64, ConstructError> {
    let p = p.unwrap_or_else(|| edge_density(g));
    if p > 0.0 && p < 1.0 {
        Ok(p)
    } else {
        Err(ConstructError::Parameter(format!(
            "edge probability {p} must lie in (0, 1)"
        )))
    }
}

/// Clique size for a ground set of `n_prime` vertices:
/// `max(2, k_−(n′, p), requested)`, with `requested` defaulting to
/// `round(log_{1/p} n′) + 2`. The floor of the logarithm leaves the size
/// flat across a doubling of `n` and the yield per `n log n` then drops; the
/// search budget still finds cliques two above the logarithm.
pub fn dense_clique_size(n_prime: usize, p: f64, requested: Option<usize>) -> usize {
    let nf = n_prime.max(2) as f64;
    let km = k_minus(nf, p).max(2) as usize;
    let req = requested.unwrap_or_else(|| log_base(nf, p).round().max(0.0) as usize + 2);
    km.max(req).max(2)
}

/// Splits `0..n` into `V` (the first `n′` vertices) and `U`, partitions `V`
/// into cliques, and attaches every `u ∈ U` to all its neighbours in the
/// clique where it has the most (lowest index on ties). Any order listing `V`
/// before `U` is a PEO of the result.
pub fn dense_lower_construct(g: &Graph, opts: &DenseLowerOptions) -> Result<ConstructionResult, ConstructError> {
    let n = g.n();
    if n < 8 {
        return Err(ConstructError::Parameter(format!("n = {n} must be at least 8")));
    }
    let p = resolve_p(g, opts.p)?;
    let n_prime = match (opts.v_size, opts.v_fraction) {
        (Some(s), _) => s,
        (None, Some(f)) => {
            if !(f > 0.0 && f <= 1.0) {
                return Err(ConstructError::Parameter(format!("v-fraction {f} must lie in (0, 1]")));
            }
            (f * n as f64).floor() as usize
        }
        (None, None) => (n as f64 / (n as f64).ln()).floor() as usize,
    }
    .clamp(1, n);
    let k = dense_clique_size(n_prime, p, opts.k);
    let v: Vec<usize> = (0..n_prime).collect();
    let part = clique_partition(g, &v, k, opts.clique_budget);

    let mut clique_of = vec![usize::MAX; n_prime];
    for (j, c) in part.cliques.iter().enumerate() {
        for &x in c {
            clique_of[x] = j;
        }
    }
    let mut edges = part.edges();
    let mut counts = vec![0usize; part.cliques.len()];
    let mut touched = Vec::new();
    let (mut attached, mut attachment_edges) = (0, 0);
    for u in n_prime..n {
        let adj = g.adjacency(u);
        let inside = &adj[..adj.partition_point(|&w| (w as usize) < n_prime)];
        for &w in inside {
            let j = clique_of[w as usize];
            if j != usize::MAX {
                if counts[j] == 0 {
                    touched.push(j);
                }
                counts[j] += 1;
            }
        }
        let best = touched
            .iter()
            .copied()
            .max_by(|&a, &b| counts[a].cmp(&counts[b]).then(b.cmp(&a)));
        if let Some(j) = best {
            attached += 1;
            attachment_edges += counts[j];
            edges.extend(part.cliques[j].iter().filter(|&&w| g.has_edge(u, w)).map(|&w| (w, u)));
        }
        for j in touched.drain(..) {
            counts[j] = 0;
        }
    }

    let params = dense_params(n as u64, p).ok();
    let mut stats = PhaseStats {
        clique_target: Some(k),
        cliques_found: Some(part.cliques.len()),
        final_clique_size: Some(part.final_size),
        leftover: Some(part.leftover.len()),
        search_nodes: Some(part.nodes),
        v_size: Some(n_prime),
        attached: Some(attached),
        attachment_edges: Some(attachment_edges),
        s_lower: params.as_ref().and_then(|d| d.s_lower),
        s_lower_degenerate: params.as_ref().map(|d| d.s_lower_degenerate),
        ..PhaseStats::default()
    };
    let order: Vec<usize> = (0..n).collect();
    if opts.complete_forest {
        let (all, added) = forest_completion(g, edges);
        stats.forest_edges_added = Some(added);
        certify(g, "dense-lb", all, None, stats)
    } else {
        certify(g, "dense-lb", edges, Some(&order), stats)
    }
}

/// Disjoint cliques over all of `V(G)`.
pub fn clique_union_baseline(
    g: &Graph,
    k: usize,
    budget: u64,
    complete_forest: bool,
) -> Result<ConstructionResult, ConstructError> {
    if k < 2 {
        return Err(ConstructError::Parameter(format!("k = {k} must be at least 2")));
    }
    let all: Vec<usize> = (0..g.n()).collect();
    let part = clique_partition(g, &all, k, budget);
    let mut stats = PhaseStats {
        clique_target: Some(k),
        cliques_found: Some(part.cliques.len()),
        final_clique_size: Some(part.final_size),
        leftover: Some(part.leftover.len()),
        search_nodes: Some(part.nodes),
        ..PhaseStats::default()
    };
    let edges = part.edges();
    if complete_forest {
        let (edges, added) = forest_completion(g, edges);
        stats.forest_edges_added = Some(added);
        certify(g, "clique-union", edges, None, stats)
    } else {
        certify(g, "clique-union", edges, Some(&all), stats)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k8_hand_count() {
        let g = Graph::complete(8);
        let opts = DenseLowerOptions {
            v_size: Some(4),
            k: Some(4),
            p: Some(0.5),
            complete_forest: false,
            ..DenseLowerOptions::default()
        };
        let r = dense_lower_construct(&g, &opts).unwrap();
        assert_eq!(r.achieved_edges, 6 + 16);
        assert_eq!(r.phase_stats.cliques_found, Some(1));
    }

    #[test]
    fn partial_attachment() {
        // V = {0,1,2} is a triangle; 3 sees 0 and 1 only; 4..7 isolated
        let g = Graph::from_edges(8, [(0, 1), (0, 2), (1, 2), (3, 0), (3, 1)]).unwrap();
        let opts = DenseLowerOptions {
            v_size: Some(3),
            k: Some(3),
            p: Some(0.5),
            complete_forest: false,
            ..DenseLowerOptions::default()
        };
        let r = dense_lower_construct(&g, &opts).unwrap();
        assert_eq!(r.subgraph.edges(), &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]);
        assert_eq!(&r.witness.order[..4], &[0, 1, 2, 3]);
    }

    #[test]
    fn baseline_small() {
        let r = clique_union_baseline(&Graph::complete(6), 3, DEFAULT_CLIQUE_BUDGET, false).unwrap();
        assert_eq!(r.achieved_edges, 6);
        let bip = Graph::from_edges(6, [(0, 3), (0, 4), (1, 4), (1, 5), (2, 5), (2, 3)]).unwrap();
        let r = clique_union_baseline(&bip, 3, DEFAULT_CLIQUE_BUDGET, false).unwrap();
        assert_eq!(r.phase_stats.final_clique_size, Some(2));
        assert_eq!(r.achieved_edges, 3);
    }

    #[test]
    fn parameter_errors() {
        let g = Graph::complete(5);
        assert!(dense_lower_construct(&g, &DenseLowerOptions::default()).is_err());
        let g = Graph::complete(9);
        // density 1 cannot serve as p
        assert!(dense_lower_construct(&g, &DenseLowerOptions::default()).is_err());
        assert!(clique_union_baseline(&g, 1, 10, false).is_err());
    }
}
