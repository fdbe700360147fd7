//! Plain-text adjacency lists (`v: u1 u2 ...`) and the bundled fixtures.

use thiserror::Error;

use crate::bitset::MAX_ORDER;
use crate::graph::{Graph, GraphError};

/// A 7-regular triangle-free 5-chromatic graph on 24 vertices.
pub const REGULAR_24: &str = include_str!("../fixtures/regular24.adj");

/// A triangle-free 6-chromatic graph on 40 vertices.
pub const SIX_CHROMATIC_40: &str = include_str!("../fixtures/sixchrom40.adj");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FixtureError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("vertex {0} is listed more than once")]
    DuplicateVertex(usize),
    #[error("vertex lines must be numbered 0..n-1; vertex {0} has no line")]
    MissingVertex(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Result of parsing an adjacency list: the symmetric closure of the listed
/// edges, plus every `(v, u)` entry whose mirror `(u, v)` was not listed.
#[derive(Debug, Clone)]
pub struct AdjacencyList {
    pub graph: Graph,
    pub asymmetric: Vec<(usize, usize)>,
}

pub fn parse_adjacency_list(text: &str) -> Result<AdjacencyList, FixtureError> {
    let mut rows: Vec<Option<Vec<usize>>> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let syntax = |message: &str| FixtureError::Syntax {
            line: idx + 1,
            message: message.to_string(),
        };
        let (head, tail) = line.split_once(':').ok_or_else(|| syntax("missing ':'"))?;
        let v: usize = head
            .trim()
            .parse()
            .map_err(|_| syntax("vertex label is not a non-negative integer"))?;
        if v >= MAX_ORDER {
            return Err(GraphError::OrderTooLarge(v + 1).into());
        }
        let nbrs = tail
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| syntax("neighbour is not a non-negative integer")))
            .collect::<Result<Vec<_>, _>>()?;
        if rows.len() <= v {
            rows.resize(v + 1, None);
        }
        if rows[v].is_some() {
            return Err(FixtureError::DuplicateVertex(v));
        }
        rows[v] = Some(nbrs);
    }
    let n = rows.len();
    let mut g = Graph::try_new(n)?;
    for (v, row) in rows.iter().enumerate() {
        let row = row.as_ref().ok_or(FixtureError::MissingVertex(v))?;
        for &u in row {
            g.try_add_edge(v, u)?;
        }
    }
    let mut asymmetric = Vec::new();
    for (v, row) in rows.iter().enumerate() {
        for &u in row.as_ref().expect("checked above") {
            if !rows[u].as_ref().expect("checked above").contains(&v) {
                asymmetric.push((v, u));
            }
        }
    }
    Ok(AdjacencyList { graph: g, asymmetric })
}

/// Renders `g` in the `v: u1 u2 ...` format.
pub fn to_adjacency_list(g: &Graph) -> String {
    let mut out = String::new();
    for v in 0..g.order() {
        out.push_str(&v.to_string());
        out.push(':');
        for u in g.neighbours(v).iter() {
            out.push(' ');
            out.push_str(&u.to_string());
        }
        out.push('\n');
    }
    out
}

pub fn regular_24() -> Graph {
    parse_adjacency_list(REGULAR_24).expect("bundled fixture parses").graph
}

pub fn six_chromatic_40() -> Graph {
    parse_adjacency_list(SIX_CHROMATIC_40).expect("bundled fixture parses").graph
}
