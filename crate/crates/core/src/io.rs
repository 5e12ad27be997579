//! DIMACS-style shortest-path graph files.
//!
//! Lines: `c <comment>`, one `p sp <vertices> <arcs>` header, and one
//! `a <src> <dst> <weight>` line per arc. Vertex ids are 1-indexed in files
//! and 0-indexed in memory.

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};

fn format_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Format {
        line,
        msg: msg.into(),
    }
}

/// Parses the serialized emitted by [`serialize_graph`] (plus optional
/// comment lines). Reports malformed input as `Format` with a 1-based line
/// number and out-of-range vertex ids as `Range`.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<Edge> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim_end_matches('\r');
        let mut fields = line.split_whitespace();
        let Some(kind) = fields.next() else {
            continue; // blank line
        };
        match kind {
            "c" => continue,
            "p" => {
                if header.is_some() {
                    return Err(format_err(lineno, "duplicate problem line"));
                }
                let tag = fields.next();
                if tag != Some("sp") {
                    return Err(format_err(lineno, "expected problem line `p sp <n> <m>`"));
                }
                let n = parse_count(fields.next(), lineno, "vertex count")?;
                let m = parse_count(fields.next(), lineno, "arc count")?;
                if fields.next().is_some() {
                    return Err(format_err(lineno, "trailing fields on problem line"));
                }
                header = Some((n, m));
                edges.reserve(m);
            }
            "a" => {
                let Some((n, _)) = header else {
                    return Err(format_err(lineno, "arc line before problem line"));
                };
                let src = parse_vertex(fields.next(), lineno, n)?;
                let dst = parse_vertex(fields.next(), lineno, n)?;
                let weight = match fields.next() {
                    Some(tok) => tok
                        .parse::<i64>()
                        .map_err(|_| format_err(lineno, format!("invalid weight `{tok}`")))?,
                    None => return Err(format_err(lineno, "missing weight")),
                };
                if fields.next().is_some() {
                    return Err(format_err(lineno, "trailing fields on arc line"));
                }
                edges.push(Edge { src, dst, weight });
            }
            other => {
                return Err(format_err(lineno, format!("unknown line type `{other}`")));
            }
        }
    }

    let Some((n, m)) = header else {
        return Err(format_err(text.lines().count() + 1, "missing problem line"));
    };
    if edges.len() != m {
        return Err(format_err(
            text.lines().count() + 1,
            format!("problem line declares {m} arcs, found {}", edges.len()),
        ));
    }
    Graph::new(n, edges)
}

fn parse_count(tok: Option<&str>, lineno: usize, what: &str) -> Result<usize> {
    match tok {
        Some(t) => t
            .parse::<usize>()
            .map_err(|_| format_err(lineno, format!("invalid {what} `{t}`"))),
        None => Err(format_err(lineno, format!("missing {what}"))),
    }
}

fn parse_vertex(tok: Option<&str>, lineno: usize, n: usize) -> Result<usize> {
    let Some(t) = tok else {
        return Err(format_err(lineno, "missing vertex id"));
    };
    let id = t
        .parse::<usize>()
        .map_err(|_| format_err(lineno, format!("invalid vertex id `{t}`")))?;
    if id < 1 || id > n {
        return Err(Error::Range(format!(
            "line {lineno}: vertex id {id} out of range 1..={n}"
        )));
    }
    Ok(id - 1)
}

/// Serializes a graph in the exact format accepted by [`parse_graph`]:
/// LF line endings, no comments, no trailing whitespace.
pub fn serialize_graph(g: &Graph) -> String {
    let mut out = String::new();
    out.push_str(&format!("p sp {} {}\n", g.vertex_count(), g.edge_count()));
    for e in g.edges() {
        out.push_str(&format!("a {} {} {}\n", e.src + 1, e.dst + 1, e.weight));
    }
    out
}
