use num_rational::Ratio;
use serde::Serialize;

use super::gadgets::{build_fj, power_path_gadget, square_path_gadget, Gadget};
use super::sequence::{x_sequence_until, DEFAULT_MAX_LENGTH};
use super::tiling::{check_tile_size, find_tiles, DEFAULT_TILE_BUDGET, TILE_MAX_N};
use super::SparseError;
use crate::construct::{certify, forest_completion, ConstructError, ConstructionResult, PhaseStats};
use crate::graph::{spanning_forest, Graph};
use crate::theory::{k_alpha, Alpha};

/// Which gadget family a given `α` calls for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "type")]
pub enum Regime {
    /// `α ≥ 2/3`: a spanning forest.
    Forest,
    /// `α ∈ (1/2, 2/3)`: `F(M)` built from squares of `(k+2)`-vertex paths.
    SquarePath { k: usize },
    /// `1/α = ℓ` an integer: `ℓ`-th powers of paths.
    PowerPath { ell: usize },
    /// `1/α ∈ (ℓ − 1, ℓ)`: the `F_j` gadgets.
    Fj { ell: usize },
}

/// At `α = (1+k)/(1+2k)` the smaller `k` is used, matching the strict
/// inequality that defines `k_α`.
pub fn sparse_regime(alpha: Alpha) -> Regime {
    let a = alpha.ratio();
    if a >= Ratio::from_integer(1) {
        return Regime::Forest;
    }
    if a > Ratio::new(1, 2) {
        return match k_alpha(alpha).expect("alpha lies in (1/2, 1)") {
            0 => Regime::Forest,
            k => Regime::SquarePath { k: k as usize },
        };
    }
    let inv = a.recip();
    if inv.is_integer() {
        Regime::PowerPath {
            ell: inv.to_integer() as usize,
        }
    } else {
        Regime::Fj {
            ell: inv.ceil().to_integer() as usize,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SparseOptions {
    /// Gadget size parameter: `M` for `F(M)`, `j` for path powers and `F_j`.
    /// Defaults to the largest gadget with at most [`TILE_MAX_N`] vertices.
    pub size: Option<usize>,
    /// Search-node budget per start vertex.
    pub tile_budget: u64,
    /// After the primary gadget, tile what is left with smaller gadgets.
    pub cascade: bool,
    pub complete_forest: bool,
}

impl Default for SparseOptions {
    fn default() -> Self {
        Self {
            size: None,
            tile_budget: DEFAULT_TILE_BUDGET,
            cascade: true,
            complete_forest: true,
        }
    }
}

fn max_copies(k: usize) -> usize {
    (TILE_MAX_N - 1) / (k + 1)
}

/// Largest `j` with `|V(F_j)| ≤ TILE_MAX_N`.
fn max_fj(alpha: Alpha) -> Result<usize, SparseError> {
    let seq = x_sequence_until(alpha, 1, DEFAULT_MAX_LENGTH)?;
    if seq.s_indices[0] + 1 > TILE_MAX_N {
        return Err(SparseError::TooLarge {
            n: seq.s_indices[0] + 1,
            cap: TILE_MAX_N,
        });
    }
    let mut j = 1;
    while let Ok(s) = x_sequence_until(alpha, j + 1, TILE_MAX_N) {
        if s.s_indices[j] + 1 > TILE_MAX_N {
            break;
        }
        j += 1;
    }
    Ok(j)
}

/// `top, top/2, top/4, …` down to `low`, always ending at `low`.
fn halving(top: usize, low: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut x = top;
    while x > low {
        out.push(x);
        x /= 2;
    }
    out.push(low);
    out
}

/// The gadget the regime prescribes, of the requested size.
pub fn primary_gadget(alpha: Alpha, size: Option<usize>) -> Result<Option<Gadget>, SparseError> {
    Ok(match sparse_regime(alpha) {
        Regime::Forest => None,
        Regime::SquarePath { k } => Some(square_path_gadget(k, size.unwrap_or(max_copies(k)).max(1))?),
        Regime::PowerPath { ell } => Some(power_path_gadget(ell, size.unwrap_or(TILE_MAX_N - 1))?),
        Regime::Fj { .. } => Some(build_fj(alpha, size.map_or_else(|| max_fj(alpha), Ok)?)?),
    })
}

/// Gadgets in the order they are tiled: the primary one, then (with
/// `cascade`) smaller members of the same family and of the families below.
pub fn gadget_schedule(alpha: Alpha, opts: &SparseOptions) -> Result<Vec<Gadget>, SparseError> {
    let Some(primary) = primary_gadget(alpha, opts.size)? else {
        return Ok(Vec::new());
    };
    check_tile_size(&primary)?;
    let mut out = vec![primary];
    if !opts.cascade {
        return Ok(out);
    }
    let mut rest = Vec::new();
    match sparse_regime(alpha) {
        Regime::Forest => {}
        Regime::SquarePath { k } => {
            for kk in (1..=k).rev() {
                for m in halving(max_copies(kk), 1) {
                    rest.push(square_path_gadget(kk, m)?);
                }
            }
        }
        Regime::PowerPath { ell } | Regime::Fj { ell } => {
            if matches!(sparse_regime(alpha), Regime::Fj { .. }) {
                for j in (1..=max_fj(alpha)?).rev() {
                    rest.push(build_fj(alpha, j)?);
                }
            }
            let top = if matches!(sparse_regime(alpha), Regime::Fj { .. }) {
                ell - 1
            } else {
                ell
            };
            for l in (2..=top).rev() {
                for j in halving(TILE_MAX_N - 1, 2) {
                    rest.push(power_path_gadget(l, j)?);
                }
            }
        }
    }
    for g in rest {
        if !out.iter().any(|o| o.graph == g.graph) {
            out.push(g);
        }
    }
    Ok(out)
}

/// Regime dispatch for `p = n^{−α}`: a spanning forest for `α ≥ 2/3`,
/// otherwise greedy tilings by the regime's gadgets followed by spanning
/// forest edges joining the tiles and the uncovered vertices. Every added
/// forest edge is a bridge, so the output stays chordal.
pub fn sparse_construct(g: &Graph, alpha: Alpha, opts: &SparseOptions) -> Result<ConstructionResult, ConstructError> {
    let schedule = gadget_schedule(alpha, opts)?;
    if schedule.is_empty() {
        let forest = spanning_forest(g);
        let stats = PhaseStats {
            gadget: Some("forest".into()),
            tiles_placed: Some(0),
            tile_edges: Some(0),
            forest_edges_added: Some(forest.len()),
            ..PhaseStats::default()
        };
        return certify(g, "sparse", forest.edges().to_vec(), None, stats);
    }
    let mut covered = vec![false; g.n()];
    let mut edges = Vec::new();
    let mut order = Vec::new();
    let mut by_gadget = Vec::new();
    let mut nodes = 0;
    for gadget in &schedule {
        let tiles = find_tiles(g, &gadget.graph, &mut covered, opts.tile_budget);
        nodes += tiles.nodes;
        by_gadget.push((gadget.name.clone(), tiles.maps.len()));
        edges.extend(tiles.edges(&gadget.graph));
        order.extend(tiles.maps.iter().flatten().copied());
    }
    let mut stats = PhaseStats {
        gadget: Some(schedule[0].name.clone()),
        tiles_placed: Some(by_gadget.iter().map(|(_, c)| c).sum()),
        tiles_by_gadget: Some(by_gadget),
        tile_edges: Some(edges.len()),
        search_nodes: Some(nodes),
        ..PhaseStats::default()
    };
    if opts.complete_forest {
        let (all, added) = forest_completion(g, edges);
        stats.forest_edges_added = Some(added);
        certify(g, "sparse", all, None, stats)
    } else {
        order.extend((0..g.n()).filter(|&v| !covered[v]));
        certify(g, "sparse", edges, Some(&order), stats)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{component_count, gen_gnp, RngSeed};

    fn a(s: &str) -> Alpha {
        s.parse().unwrap()
    }

    #[test]
    fn regimes() {
        assert_eq!(sparse_regime(a("2")), Regime::Forest);
        assert_eq!(sparse_regime(a("0.9")), Regime::Forest);
        assert_eq!(sparse_regime(a("2/3")), Regime::Forest);
        assert_eq!(sparse_regime(a("0.65")), Regime::SquarePath { k: 1 });
        assert_eq!(sparse_regime(a("3/5")), Regime::SquarePath { k: 1 });
        assert_eq!(sparse_regime(a("0.59")), Regime::SquarePath { k: 2 });
        assert_eq!(sparse_regime(a("1/2")), Regime::PowerPath { ell: 2 });
        assert_eq!(sparse_regime(a("1/3")), Regime::PowerPath { ell: 3 });
        assert_eq!(sparse_regime(a("0.45")), Regime::Fj { ell: 3 });
    }

    #[test]
    fn default_sizes_fit() {
        for s in ["0.65", "0.55", "1/2", "1/3", "0.45", "2/5", "0.3"] {
            let sched = gadget_schedule(a(s), &SparseOptions::default()).unwrap();
            assert!(!sched.is_empty());
            assert!(sched.iter().all(|g| g.vertices <= TILE_MAX_N), "{s}");
        }
        let f = primary_gadget(a("0.45"), None).unwrap().unwrap();
        assert_eq!(f.vertices, 15);
        assert!(gadget_schedule(a("0.9"), &SparseOptions::default()).unwrap().is_empty());
    }

    #[test]
    fn forest_regime_count() {
        let g = gen_gnp(2000, 1.0 / 4000.0, RngSeed::new(1, 0)).unwrap();
        let r = sparse_construct(&g, a("2"), &SparseOptions::default()).unwrap();
        assert_eq!(r.achieved_edges, 2000 - component_count(&g));
    }

    #[test]
    fn complete_graph_tiles() {
        let g = Graph::complete(16);
        let opts = SparseOptions {
            complete_forest: false,
            ..SparseOptions::default()
        };
        let r = sparse_construct(&g, a("0.45"), &opts).unwrap();
        // F_2 has 15 vertices and 31 edges; the last vertex stays alone
        assert_eq!(r.achieved_edges, 31);
        assert!(r.certified);
    }
}
