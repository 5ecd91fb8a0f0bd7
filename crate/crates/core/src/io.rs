//! Edge-list text format, DOT export and a stable content hash.
//!
//! Format: one `u v` pair per line, `v <id>` declares a vertex, `#` starts a
//! comment, blank lines are ignored.

use std::fmt::Write as _;

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::graph::{Edge, Graph, GraphBuilder, GraphError, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: duplicate edge {edge}")]
    DuplicateEdge { line: usize, edge: Edge },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: Vertex },
    #[error("input declares no vertices")]
    Empty,
}

fn parse_id(tok: &str, line: usize) -> Result<Vertex, ParseError> {
    tok.parse().map_err(|_| ParseError::Syntax {
        line,
        message: format!("expected a non-negative integer, found {tok:?}"),
    })
}

pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut b = GraphBuilder::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let toks: Vec<&str> = content.split_whitespace().collect();
        match toks.as_slice() {
            ["v", id] => {
                b.add_vertex(parse_id(id, line)?);
            }
            [a, c] => {
                let (a, c) = (parse_id(a, line)?, parse_id(c, line)?);
                b.add_edge(a, c).map_err(|e| match e {
                    GraphError::SelfLoop(vertex) => ParseError::SelfLoop { line, vertex },
                    GraphError::DuplicateEdge(edge) => ParseError::DuplicateEdge { line, edge },
                    other => ParseError::Syntax {
                        line,
                        message: other.to_string(),
                    },
                })?;
            }
            _ => {
                return Err(ParseError::Syntax {
                    line,
                    message: format!("expected `u v` or `v <id>`, found {content:?}"),
                })
            }
        }
    }
    b.build().map_err(|_| ParseError::Empty)
}

/// Normalized text: isolated vertices first as `v <id>`, then every edge as
/// `lo hi` in sorted order.
pub fn serialize_graph(g: &Graph) -> String {
    let mut out = String::new();
    for v in g.vertices().filter(|&v| g.degree(v) == 0) {
        writeln!(out, "v {v}").unwrap();
    }
    for e in g.edges() {
        writeln!(out, "{} {}", e.lo(), e.hi()).unwrap();
    }
    out
}

/// First 16 hex digits of the SHA-256 of the normalized edge list.
pub fn graph_hash(g: &Graph) -> String {
    let digest = Sha256::digest(serialize_graph(g).as_bytes());
    digest.iter().take(8).fold(String::new(), |mut s, b| {
        write!(s, "{b:02x}").unwrap();
        s
    })
}

/// Graphviz rendering; `highlight` edges are drawn bold.
pub fn to_dot(g: &Graph, highlight: Option<&dyn Fn(Edge) -> bool>) -> String {
    let mut out = String::from("graph G {\n");
    for v in g.vertices() {
        writeln!(out, "  {v};").unwrap();
    }
    for e in g.edges() {
        let bold = highlight.is_some_and(|f| f(e));
        if bold {
            writeln!(out, "  {} -- {} [penwidth=3];", e.lo(), e.hi()).unwrap();
        } else {
            writeln!(out, "  {} -- {};", e.lo(), e.hi()).unwrap();
        }
    }
    out.push_str("}\n");
    out
}
