use serde::Serialize;

use super::density::{one_density, ser_ratio, ser_ratio_opt, subset_scan, Balance, Density};
use super::sequence::{x_sequence_until, DEFAULT_MAX_LENGTH};
use super::SparseError;
use crate::chordality::is_peo;
use crate::graph::Graph;
use crate::theory::Alpha;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "type")]
pub enum GadgetKind {
    /// `copies` squares of `(k+2)`-vertex paths glued end to start.
    SquarePath { k: usize, copies: usize },
    /// Vertices `0..=j`, each joined to its `min(i, ℓ)` predecessors.
    PowerPath { ell: usize, j: usize },
    /// Vertices `0..=s_j`, vertex `i` joined to its `x_i` predecessors.
    Fj { alpha: Alpha, j: usize, s: usize },
}

/// A small chordal pattern graph whose natural order is a PEO, with exact
/// densities. `max_one_density` and the balance flag come from the subset
/// scan and are left empty above [`SCAN_MAX_N`](super::SCAN_MAX_N) vertices.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Gadget {
    pub name: String,
    pub kind: GadgetKind,
    pub vertices: usize,
    pub edges: usize,
    #[serde(serialize_with = "ser_ratio")]
    pub one_density: Density,
    #[serde(serialize_with = "ser_ratio_opt")]
    pub max_one_density: Option<Density>,
    pub strictly_balanced: Balance,
    #[serde(skip)]
    pub graph: Graph,
}

impl Gadget {
    fn new(name: String, kind: GadgetKind, graph: Graph) -> Self {
        let identity: Vec<usize> = (0..graph.n()).collect();
        assert!(
            is_peo(&graph, &identity),
            "gadget {name} is not chordal in its natural order"
        );
        let rho = one_density(&graph).expect("gadgets have at least two vertices");
        let (max, balance) = match subset_scan(&graph) {
            Ok(s) => {
                let strict = s.proper_max.is_none_or(|p| p < rho);
                (
                    Some(s.max),
                    if strict {
                        Balance::VerifiedTrue
                    } else {
                        Balance::VerifiedFalse
                    },
                )
            }
            Err(_) => (None, Balance::Unverified),
        };
        Self {
            name,
            kind,
            vertices: graph.n(),
            edges: graph.m(),
            one_density: rho,
            max_one_density: max,
            strictly_balanced: balance,
            graph,
        }
    }

    /// `|E| − (|V| − 1)`: edges gained per tile over a spanning tree.
    pub fn excess(&self) -> usize {
        self.edges + 1 - self.vertices
    }
}

/// Graph on `0..=last` where vertex `i ≥ 1` is joined to its `back(i)`
/// immediate predecessors.
fn predecessor_graph(last: usize, back: impl Fn(usize) -> usize) -> Graph {
    let mut edges = Vec::new();
    for i in 1..=last {
        for d in 1..=back(i).min(i) {
            edges.push((i - d, i));
        }
    }
    Graph::from_edges(last + 1, edges).expect("predecessor edges are simple")
}

/// `F(M)`: `copies` squares of a path on `k + 2` vertices, the first vertex
/// of each copy identified with the last vertex of the previous one.
pub fn square_path_gadget(k: usize, copies: usize) -> Result<Gadget, SparseError> {
    if k == 0 || copies == 0 {
        return Err(SparseError::Index(format!(
            "need k ≥ 1 and M ≥ 1, got k = {k}, M = {copies}"
        )));
    }
    let span = k + 1;
    let mut edges = Vec::new();
    for c in 0..copies {
        let base = c * span;
        for i in 1..=span {
            edges.push((base + i - 1, base + i));
            if i >= 2 {
                edges.push((base + i - 2, base + i));
            }
        }
    }
    let g = Graph::from_edges(copies * span + 1, edges).expect("glued squares are simple");
    Ok(Gadget::new(
        format!("square-path(k={k},M={copies})"),
        GadgetKind::SquarePath { k, copies },
        g,
    ))
}

/// The `ℓ`-th power of a path on `j + 1` vertices.
pub fn power_path_gadget(ell: usize, j: usize) -> Result<Gadget, SparseError> {
    if ell == 0 || j == 0 {
        return Err(SparseError::Index(format!(
            "need ell ≥ 1 and j ≥ 1, got ell = {ell}, j = {j}"
        )));
    }
    Ok(Gadget::new(
        format!("power-path(l={ell},j={j})"),
        GadgetKind::PowerPath { ell, j },
        predecessor_graph(j, |_| ell),
    ))
}

/// `F_j` (1-based `j`) for a non-integer `1/α > 2`.
pub fn build_fj(alpha: Alpha, j: usize) -> Result<Gadget, SparseError> {
    if j == 0 {
        return Err(SparseError::Index("j is 1-based".into()));
    }
    let seq = x_sequence_until(alpha, j, DEFAULT_MAX_LENGTH)?;
    let s = seq.s_indices[j - 1];
    let g = predecessor_graph(s, |i| seq.xs[i - 1]);
    debug_assert_eq!(Some(seq.rho(s)), one_density(&g).ok());
    Ok(Gadget::new(
        format!("F_{j}(1/alpha={})", alpha.recip()),
        GadgetKind::Fj { alpha, j, s },
        g,
    ))
}
