use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::Topology;
use crate::{Error, PlayerId, Result};

const NODES_DIRECTIVE: &str = "# nodes";

/// Parses `u v` lines. Blank lines and `#` comments are skipped; a
/// `# nodes N` line declares trailing isolated players.
pub fn load_edge_list(text: &str) -> Result<Topology> {
    let mut declared = None;
    let mut edges = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if let Some(rest) = line.strip_prefix(NODES_DIRECTIVE) {
            if let Ok(n) = rest.trim().parse::<usize>() {
                declared = Some(n);
            }
            continue;
        }
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let malformed = || Error::Parse(format!("line {}: malformed edge `{raw}`", lineno + 1));
        let mut fields = line.split_whitespace();
        let (Some(u), Some(v), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(malformed());
        };
        let u: PlayerId = u.parse().map_err(|_| malformed())?;
        let v: PlayerId = v.parse().map_err(|_| malformed())?;
        edges.push((u, v));
    }
    let implied = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
    let n = declared.unwrap_or(0).max(implied);
    Topology::new(n, edges)
}

/// Canonical sorted edge list, one `u v` line per edge with `u < v`.
pub fn dump_edge_list(t: &Topology) -> String {
    let mut out = String::new();
    let implied = t.edges().map(|(_, v)| v + 1).max().unwrap_or(0);
    if implied != t.n() {
        let _ = writeln!(out, "{NODES_DIRECTIVE} {}", t.n());
    }
    for (u, v) in t.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Graphviz rendering with degree labels.
pub fn to_dot(t: &Topology) -> String {
    let mut out = String::from("graph G {\n");
    for i in 0..t.n() {
        let _ = writeln!(
            out,
            "  {i} [label=\"{i}\\ndeg {}\"];",
            t.neighbors(i).len()
        );
    }
    for (u, v) in t.edges() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}

/// `{"n": 3, "edges": [[0, 1], [1, 2]]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopologyJson {
    pub n: usize,
    pub edges: Vec<[PlayerId; 2]>,
}

impl From<&Topology> for TopologyJson {
    fn from(t: &Topology) -> Self {
        Self {
            n: t.n(),
            edges: t.edges().map(|(u, v)| [u, v]).collect(),
        }
    }
}

impl TryFrom<TopologyJson> for Topology {
    type Error = Error;

    fn try_from(j: TopologyJson) -> Result<Self> {
        Topology::new(j.n, j.edges.into_iter().map(|[u, v]| (u, v)))
    }
}
