//! Input and output formats: the embedded-graph JSON format (EGF), graph6,
//! decomposition JSON and Graphviz DOT.
//!
//! EGF is `{"vertices": [labels], "rotation": {label: [labels in cyclic
//! order]}}`. Labels are strings or integers; vertex ids are assigned in the
//! order of `"vertices"` and every report maps them back through [`Labels`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use thiserror::Error;

use crate::decomp::Decomposition;
use crate::degeneracy::{Arc, Orientation};
use crate::embedding::EmbeddedGraph;
use crate::error::Error;
use crate::graph::{Edge, Graph, Vertex};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("label {0} is listed twice")]
    DuplicateLabel(Label),
    #[error("unknown vertex label {0}")]
    UnknownLabel(String),
    #[error("rotation at vertex {vertex} is not a permutation of its neighbours: {reason}")]
    InvalidRotation { vertex: Label, reason: String },
    #[error("invalid graph6: {0}")]
    Graph6(String),
    #[error("invalid decomposition: {0}")]
    Decomposition(String),
    #[error(transparent)]
    Graph(#[from] Error),
}

/// A vertex label as written in the input.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Label {
    Int(i64),
    Str(String),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Int(i) => write!(f, "{i}"),
            Label::Str(s) => f.write_str(s),
        }
    }
}

/// Vertex id `i` carries `labels[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Labels {
    labels: Vec<Label>,
    by_key: BTreeMap<String, Vertex>,
}

impl Labels {
    pub fn new(labels: Vec<Label>) -> Result<Self, FormatError> {
        let mut by_key = BTreeMap::new();
        for (i, l) in labels.iter().enumerate() {
            if by_key.insert(l.to_string(), Vertex(i as u32)).is_some() {
                return Err(FormatError::DuplicateLabel(l.clone()));
            }
        }
        Ok(Labels { labels, by_key })
    }

    /// Labels `0..n` for inputs without names.
    pub fn numeric(n: usize) -> Self {
        Labels::new((0..n as i64).map(Label::Int).collect()).expect("distinct")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, v: Vertex) -> Label {
        self.labels.get(v.0 as usize).cloned().unwrap_or(Label::Int(v.0 as i64))
    }

    pub fn vertex(&self, key: &str) -> Option<Vertex> {
        self.by_key.get(key).copied()
    }

    fn resolve(&self, l: &Label) -> Result<Vertex, FormatError> {
        self.vertex(&l.to_string()).ok_or_else(|| FormatError::UnknownLabel(l.to_string()))
    }
}

#[derive(Deserialize)]
struct EgfDoc {
    vertices: Vec<Label>,
    #[serde(default)]
    rotation: BTreeMap<String, Vec<Label>>,
}

/// Parses EGF. Unknown top-level fields are ignored; a vertex without a
/// rotation entry is isolated.
pub fn parse_egf(text: &str) -> Result<(EmbeddedGraph, Labels), FormatError> {
    let doc: EgfDoc = serde_json::from_str(text)?;
    let labels = Labels::new(doc.vertices)?;
    let mut rotation: BTreeMap<Vertex, Vec<Vertex>> = (0..labels.len()).map(|i| (Vertex(i as u32), Vec::new())).collect();
    for (key, ns) in &doc.rotation {
        let v = labels.vertex(key).ok_or_else(|| FormatError::UnknownLabel(key.clone()))?;
        let mut seen = BTreeSet::new();
        let mut row = Vec::with_capacity(ns.len());
        for l in ns {
            let u = labels.vertex(&l.to_string()).ok_or_else(|| FormatError::InvalidRotation {
                vertex: labels.label(v),
                reason: format!("unknown neighbour {l}"),
            })?;
            if u == v {
                return Err(FormatError::InvalidRotation { vertex: labels.label(v), reason: "contains the vertex itself".into() });
            }
            if !seen.insert(u) {
                return Err(FormatError::InvalidRotation { vertex: labels.label(v), reason: format!("neighbour {l} repeated") });
            }
            row.push(u);
        }
        rotation.insert(v, row);
    }
    for (&v, ns) in &rotation {
        for &u in ns {
            if !rotation[&u].contains(&v) {
                return Err(FormatError::InvalidRotation {
                    vertex: labels.label(u),
                    reason: format!("missing neighbour {} (adjacency not symmetric)", labels.label(v)),
                });
            }
        }
    }
    Ok((EmbeddedGraph::new(rotation)?, labels))
}

pub fn egf_value(eg: &EmbeddedGraph, labels: &Labels) -> Value {
    let vertices: Vec<Label> = eg.graph().vertices().map(|v| labels.label(v)).collect();
    let mut rotation = Map::new();
    for (&v, ns) in eg.rotations() {
        let row: Vec<Label> = ns.iter().map(|&u| labels.label(u)).collect();
        rotation.insert(labels.label(v).to_string(), serde_json::to_value(row).expect("labels serialize"));
    }
    serde_json::json!({ "vertices": vertices, "rotation": rotation })
}

pub fn emit_egf(eg: &EmbeddedGraph, labels: &Labels) -> String {
    serde_json::to_string_pretty(&egf_value(eg, labels)).expect("EGF serializes")
}

fn graph6_size(bytes: &[u8]) -> Result<(usize, &[u8]), FormatError> {
    let err = || FormatError::Graph6("truncated size field".into());
    let big = |bs: &[u8]| bs.iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
    match bytes {
        [126, 126, rest @ ..] => {
            let digits = rest.get(..6).ok_or_else(err)?;
            Ok((big(digits), &rest[6..]))
        }
        [126, rest @ ..] => {
            let digits = rest.get(..3).ok_or_else(err)?;
            Ok((big(digits), &rest[3..]))
        }
        [b, rest @ ..] => Ok(((b - 63) as usize, rest)),
        [] => Err(FormatError::Graph6("empty input".into())),
    }
}

/// Parses the first graph6 line; an optional `>>graph6<<` header is skipped.
pub fn parse_graph6(text: &str) -> Result<Graph, FormatError> {
    let line = text.lines().map(str::trim).find(|l| !l.is_empty()).unwrap_or("");
    let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
    let bytes = line.as_bytes();
    if let Some(b) = bytes.iter().find(|b| !(63..=126).contains(*b)) {
        return Err(FormatError::Graph6(format!("byte {b} outside 63..=126")));
    }
    let (n, body) = graph6_size(bytes)?;
    let bits_needed = n * n.saturating_sub(1) / 2;
    let bytes_needed = bits_needed.div_ceil(6);
    if body.len() != bytes_needed {
        return Err(FormatError::Graph6(format!("{n} vertices need {bytes_needed} data bytes, found {}", body.len())));
    }
    let bit = |k: usize| (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut g = Graph::with_vertices(n as u32);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                g.add_edge(Vertex(i as u32), Vertex(j as u32))?;
            }
            k += 1;
        }
    }
    Ok(g)
}

/// graph6 for a graph whose vertices are `0..n`.
pub fn emit_graph6(g: &Graph) -> String {
    let n = g.vertex_count();
    let mut out: Vec<u8> = Vec::new();
    if n < 63 {
        out.push(n as u8 + 63);
    } else if n < 258_048 {
        out.push(126);
        out.extend((0..3).rev().map(|s| ((n >> (6 * s)) & 63) as u8 + 63));
    } else {
        out.extend([126, 126]);
        out.extend((0..6).rev().map(|s| ((n >> (6 * s)) & 63) as u8 + 63));
    }
    let ids: Vec<Vertex> = g.vertices().collect();
    let mut bits = Vec::new();
    for j in 1..n {
        for i in 0..j {
            bits.push(g.has_edge(ids[i], ids[j]));
        }
    }
    for chunk in bits.chunks(6) {
        let mut b = 0u8;
        for (k, &set) in chunk.iter().enumerate() {
            if set {
                b |= 1 << (5 - k);
            }
        }
        out.push(b + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    Egf,
    Graph6,
}

/// A parsed input; `embedding` is present only for EGF.
#[derive(Debug, Clone)]
pub struct Input {
    pub format: InputFormat,
    pub graph: Graph,
    pub embedding: Option<EmbeddedGraph>,
    pub labels: Labels,
}

/// EGF when the text starts with `{`, graph6 otherwise.
pub fn parse_input(text: &str) -> Result<Input, FormatError> {
    if text.trim_start().starts_with('{') {
        let (eg, labels) = parse_egf(text)?;
        Ok(Input { format: InputFormat::Egf, graph: eg.graph().clone(), embedding: Some(eg), labels })
    } else {
        let graph = parse_graph6(text)?;
        let labels = Labels::numeric(graph.vertex_count());
        Ok(Input { format: InputFormat::Graph6, graph, embedding: None, labels })
    }
}

#[derive(Serialize, Deserialize)]
struct DecompositionDoc {
    d: usize,
    h: usize,
    #[serde(rename = "H")]
    h_edges: Vec<(Label, Label)>,
    arcs: Vec<(Label, Label)>,
}

pub fn decomposition_value(dec: &Decomposition, labels: &Labels) -> Value {
    let doc = DecompositionDoc {
        d: dec.d,
        h: dec.h,
        h_edges: dec.h_edges.iter().map(|e| (labels.label(e.lo()), labels.label(e.hi()))).collect(),
        arcs: dec.orientation.arcs().map(|a| (labels.label(a.tail), labels.label(a.head))).collect(),
    };
    serde_json::to_value(doc).expect("decomposition serializes")
}

pub fn parse_decomposition(text: &str, labels: &Labels) -> Result<Decomposition, FormatError> {
    let doc: DecompositionDoc = serde_json::from_str(text)?;
    let mut h_edges = BTreeSet::new();
    for (a, b) in &doc.h_edges {
        let (a, b) = (labels.resolve(a)?, labels.resolve(b)?);
        if a == b {
            return Err(FormatError::Decomposition(format!("H-edge {} is a loop", labels.label(a))));
        }
        h_edges.insert(Edge::new(a, b));
    }
    let mut orientation = Orientation::new();
    for (t, h) in &doc.arcs {
        orientation.insert(Arc::new(labels.resolve(t)?, labels.resolve(h)?))?;
    }
    Ok(Decomposition { h_edges, orientation, d: doc.d, h: doc.h })
}

/// Graphviz rendering. With a decomposition, oriented edges become arrows and
/// H-edges are drawn bold without arrowheads; highlighted vertices are filled.
pub fn to_dot(g: &Graph, labels: &Labels, dec: Option<&Decomposition>, highlight: &BTreeSet<Vertex>) -> String {
    let name = |v: Vertex| format!("{:?}", labels.label(v).to_string());
    let mut out = String::new();
    let (kind, plain) = if dec.is_some() { ("digraph", "->") } else { ("graph", "--") };
    writeln!(out, "{kind} G {{").unwrap();
    for v in g.vertices() {
        if highlight.contains(&v) {
            writeln!(out, "  {} [style=filled, fillcolor=lightblue];", name(v)).unwrap();
        } else {
            writeln!(out, "  {};", name(v)).unwrap();
        }
    }
    for e in g.edges() {
        match dec {
            Some(d) if d.h_edges.contains(&e) => {
                writeln!(out, "  {} -> {} [dir=none, style=bold, color=red];", name(e.lo()), name(e.hi())).unwrap()
            }
            Some(d) => match d.orientation.arc(e) {
                Some(a) => writeln!(out, "  {} -> {};", name(a.tail), name(a.head)).unwrap(),
                None => writeln!(out, "  {} -> {} [dir=none, style=dashed];", name(e.lo()), name(e.hi())).unwrap(),
            },
            None => writeln!(out, "  {} {plain} {};", name(e.lo()), name(e.hi())).unwrap(),
        }
    }
    out.push_str("}\n");
    out
}
