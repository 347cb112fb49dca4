use std::io::{BufRead, Write};

use thiserror::Error;

use super::{Graph, GraphError};

#[derive(Debug, Error)]
pub enum EdgeListError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("header declares {declared} edges but {found} were listed")]
    EdgeCount { declared: usize, found: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Writes `n m` followed by one `u v` line per edge, `u < v`.
pub fn write_edge_list<W: Write>(g: &Graph, mut out: W) -> std::io::Result<()> {
    writeln!(out, "{} {}", g.n(), g.m())?;
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}")?;
    }
    out.flush()
}

/// Reads the format produced by [`write_edge_list`]. Blank lines and lines
/// starting with `#` are skipped.
pub fn read_edge_list<R: BufRead>(input: R) -> Result<Graph, EdgeListError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let pair = parse_pair(t).ok_or_else(|| EdgeListError::Parse {
            line: i + 1,
            msg: format!("expected two non-negative integers, got {t:?}"),
        })?;
        if header.is_none() {
            header = Some(pair);
        } else {
            edges.push(pair);
        }
    }
    let (n, m) = header.ok_or(EdgeListError::Parse {
        line: 0,
        msg: "missing header".into(),
    })?;
    if edges.len() != m {
        return Err(EdgeListError::EdgeCount {
            declared: m,
            found: edges.len(),
        });
    }
    Ok(Graph::from_edges(n, edges)?)
}

pub fn parse_edge_list(text: &str) -> Result<Graph, EdgeListError> {
    read_edge_list(text.as_bytes())
}

fn parse_pair(s: &str) -> Option<(usize, usize)> {
    let mut it = s.split_whitespace();
    let a = it.next()?.parse().ok()?;
    let b = it.next()?.parse().ok()?;
    it.next().is_none().then_some((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let g = Graph::from_edges(5, [(0, 4), (1, 2), (2, 3)]).unwrap();
        let mut buf = Vec::new();
        write_edge_list(&g, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf.clone()).unwrap(), "5 3\n0 4\n1 2\n2 3\n");
        assert_eq!(read_edge_list(buf.as_slice()).unwrap(), g);
    }

    #[test]
    fn comments_and_errors() {
        let g = parse_edge_list("# c\n3 1\n\n0 2\n").unwrap();
        assert!(g.has_edge(2, 0));
        assert!(matches!(
            parse_edge_list("3 2\n0 1\n"),
            Err(EdgeListError::EdgeCount { .. })
        ));
        assert!(matches!(
            parse_edge_list("3 1\n0 x\n"),
            Err(EdgeListError::Parse { line: 2, .. })
        ));
        assert!(matches!(parse_edge_list("3 1\n1 1\n"), Err(EdgeListError::Graph(_))));
        assert!(parse_edge_list("").is_err());
    }
}
