//! Plain-text edge lists: a header line `n <node_count>` followed by one
//! `i j` pair per line, `i < j`, in lexicographic order.

use std::fmt::Write as _;

use super::Graph;
use crate::error::{Error, Result};

pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.node_count());
    for (i, j) in g.edges() {
        let _ = writeln!(out, "{i} {j}");
    }
    out
}

/// Parse an edge list. Edge order and orientation are not enforced on input,
/// but duplicates, self-loops and out-of-range nodes are errors.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hline, header) = lines.next().ok_or_else(|| Error::parse(1, "empty edge list"))?;
    let n = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["n", count] => count
            .parse::<usize>()
            .map_err(|_| Error::parse(hline, format!("bad node count `{count}`")))?,
        _ => return Err(Error::parse(hline, "expected header `n <node_count>`")),
    };
    if n == 0 {
        return Err(Error::parse(hline, "node count must be positive"));
    }

    let mut g = Graph::empty(n)?;
    for (line, content) in lines {
        let fields: Vec<&str> = content.split_whitespace().collect();
        let [a, b] = fields.as_slice() else {
            return Err(Error::parse(line, "expected two node indices"));
        };
        let node = |s: &str| -> Result<usize> {
            let v = s
                .parse::<usize>()
                .map_err(|_| Error::parse(line, format!("bad node index `{s}`")))?;
            if v >= n {
                return Err(Error::parse(line, format!("node {v} out of range for {n} nodes")));
            }
            Ok(v)
        };
        let (i, j) = (node(a)?, node(b)?);
        if i == j {
            return Err(Error::parse(line, format!("self-loop at node {i}")));
        }
        if g.has_edge(i, j) {
            return Err(Error::parse(line, format!("duplicate edge {i} {j}")));
        }
        g.add_edge_unchecked(i, j);
    }
    Ok(g)
}
