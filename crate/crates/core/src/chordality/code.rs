use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::{certify_peo, layer_order, PeoError};
use crate::graph::{is_connected, Graph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("ordering is not a perfect elimination ordering: {0}")]
    NotPeo(#[from] PeoError),
    #[error("graph is disconnected; encode each component separately")]
    Disconnected,
    #[error("parent array is not a rooted tree")]
    BadTree,
    #[error("vertex {vertex}: vector has length {found}, expected {expected}")]
    LengthMismatch {
        vertex: usize,
        expected: usize,
        found: usize,
    },
    #[error("decoded graph fails certification: {0}")]
    Corrupt(PeoError),
    #[error("malformed code text on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Perfect elimination tree plus one 0/1 vector per non-root vertex.
///
/// Vertices are processed in the layer-preserving order by (depth, id). For a
/// non-root vertex `v` with parent `u`, coordinate `t` of `vectors[v]` says
/// whether `v` is adjacent to the `t`-th earlier neighbour of `u`, counted in
/// increasing elimination rank; so `vectors[v].len()` equals the outdegree
/// of `u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeoCode {
    pub root: usize,
    pub parent: Vec<Option<usize>>,
    pub vectors: Vec<Vec<bool>>,
}

impl PeoCode {
    pub fn n(&self) -> usize {
        self.parent.len()
    }

    /// Non-root vertices in the canonical (depth, id) order.
    pub fn canonical_order(&self) -> Result<Vec<usize>, CodeError> {
        let roots = self.parent.iter().filter(|p| p.is_none()).count();
        if roots != 1 || self.root >= self.n() || self.parent[self.root].is_some() {
            return Err(CodeError::BadTree);
        }
        layer_order(&self.parent).ok_or(CodeError::BadTree)
    }
}

/// Encodes a connected chordal graph given any PEO of it.
pub fn encode_chordal(g: &Graph, order: &[usize]) -> Result<PeoCode, CodeError> {
    let witness = certify_peo(g, order)?;
    if !is_connected(g) || g.n() == 0 {
        return Err(CodeError::Disconnected);
    }
    let parent = witness.nu;
    let order = layer_order(&parent).ok_or(CodeError::BadTree)?;
    let root = order[0];
    let n = g.n();
    let mut rank = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    // earlier neighbours under the canonical order are exactly the tree ancestors
    // adjacent in g, sorted by rank
    let earlier: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            let mut e: Vec<usize> = g.neighbors(v).filter(|&w| rank[w] < rank[v]).collect();
            e.sort_by_key(|&w| rank[w]);
            e
        })
        .collect();
    let mut vectors = vec![Vec::new(); n];
    for &v in &order[1..] {
        let u = parent[v].expect("non-root vertex has a parent");
        vectors[v] = earlier[u].iter().map(|&w| g.has_edge(v, w)).collect();
    }
    Ok(PeoCode { root, parent, vectors })
}

/// Rebuilds the graph left to right along the canonical order, then
/// re-certifies that order as a PEO of the result.
pub fn decode_chordal(code: &PeoCode) -> Result<Graph, CodeError> {
    let order = code.canonical_order()?;
    let n = code.n();
    if code.vectors.len() != n {
        return Err(CodeError::LengthMismatch {
            vertex: n.min(code.vectors.len()),
            expected: n,
            found: code.vectors.len(),
        });
    }
    let mut earlier: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut edges = Vec::new();
    for &v in &order {
        let Some(u) = code.parent[v] else {
            if !code.vectors[v].is_empty() {
                return Err(CodeError::LengthMismatch {
                    vertex: v,
                    expected: 0,
                    found: code.vectors[v].len(),
                });
            }
            continue;
        };
        let e = &code.vectors[v];
        if e.len() != earlier[u].len() {
            return Err(CodeError::LengthMismatch {
                vertex: v,
                expected: earlier[u].len(),
                found: e.len(),
            });
        }
        let mut mine: Vec<usize> = earlier[u]
            .iter()
            .zip(e)
            .filter_map(|(&w, &bit)| bit.then_some(w))
            .collect();
        mine.push(u);
        for &w in &mine {
            edges.push((w, v));
        }
        earlier[v] = mine;
    }
    let g = Graph::from_edges(n, edges).map_err(|_| CodeError::BadTree)?;
    certify_peo(&g, &order).map_err(CodeError::Corrupt)?;
    Ok(g)
}

impl fmt::Display for PeoCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.n(), self.root)?;
        let parents: Vec<String> = self
            .parent
            .iter()
            .map(|p| p.map_or_else(|| "-".to_string(), |u| u.to_string()))
            .collect();
        writeln!(f, "{}", parents.join(" "))?;
        let order = layer_order(&self.parent).ok_or(fmt::Error)?;
        for &v in order.iter().filter(|&&v| self.parent[v].is_some()) {
            let e = &self.vectors[v];
            if e.is_empty() {
                writeln!(f, "{v} 0")?;
            } else {
                let bits: String = e.iter().map(|&b| if b { '1' } else { '0' }).collect();
                writeln!(f, "{v} {} {bits}", e.len())?;
            }
        }
        Ok(())
    }
}

impl FromStr for PeoCode {
    type Err = CodeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |line: usize, msg: &str| CodeError::Parse {
            line,
            msg: msg.to_string(),
        };
        let mut lines = s.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, head) = lines.next().ok_or_else(|| bad(1, "missing header"))?;
        let head: Vec<&str> = head.split_whitespace().collect();
        let [n, root] = head[..] else {
            return Err(bad(1, "expected \"n root\""));
        };
        let n: usize = n.parse().map_err(|_| bad(1, "bad n"))?;
        let root: usize = root.parse().map_err(|_| bad(1, "bad root"))?;

        let (i, plist) = lines.next().ok_or_else(|| bad(2, "missing parent array"))?;
        let parent: Vec<Option<usize>> = plist
            .split_whitespace()
            .map(|t| match t {
                "-" => Ok(None),
                t => t.parse().map(Some).map_err(|_| bad(i + 1, "bad parent entry")),
            })
            .collect::<Result<_, _>>()?;
        if parent.len() != n {
            return Err(bad(i + 1, "parent array length differs from n"));
        }

        let mut vectors = vec![Vec::new(); n];
        let mut seen = vec![false; n];
        for (i, line) in lines {
            let toks: Vec<&str> = line.split_whitespace().collect();
            let (v, k, bits) = match toks[..] {
                [v, k] => (v, k, ""),
                [v, k, bits] => (v, k, bits),
                _ => return Err(bad(i + 1, "expected \"v k bits\"")),
            };
            let v: usize = v.parse().map_err(|_| bad(i + 1, "bad vertex"))?;
            let k: usize = k.parse().map_err(|_| bad(i + 1, "bad length"))?;
            if v >= n || seen[v] {
                return Err(bad(i + 1, "vertex out of range or repeated"));
            }
            seen[v] = true;
            let e: Vec<bool> = bits
                .chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    _ => Err(bad(i + 1, "bits must be 0 or 1")),
                })
                .collect::<Result<_, _>>()?;
            if e.len() != k {
                return Err(CodeError::LengthMismatch {
                    vertex: v,
                    expected: k,
                    found: e.len(),
                });
            }
            vectors[v] = e;
        }
        Ok(PeoCode { root, parent, vectors })
    }
}
