//! Degree-constrained subgraph matching, the forbidden and reducible
//! configuration catalogs, cycle detection and face-based vertex classes.
//!
//! Matching is subgraph matching (not induced): extra host edges among the
//! image vertices are allowed. Degree constraints refer to degrees in the host.

use std::ops::ControlFlow;

use serde::Serialize;

use crate::embedding::{EmbeddedGraph, Face, FaceSet};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum DegreeConstraint {
    Exact(usize),
    AtLeast(usize),
    AtMost(usize),
    Any,
}

impl DegreeConstraint {
    pub fn admits(self, degree: usize) -> bool {
        match self {
            DegreeConstraint::Exact(k) => degree == k,
            DegreeConstraint::AtLeast(k) => degree >= k,
            DegreeConstraint::AtMost(k) => degree <= k,
            DegreeConstraint::Any => true,
        }
    }
}

/// A small connected graph on `0..k` with a degree constraint per vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct Pattern {
    pub name: &'static str,
    pub labels: Vec<&'static str>,
    pub skeleton: Graph,
    pub constraints: Vec<DegreeConstraint>,
}

impl Pattern {
    /// Edges are given by label. Panics on malformed static definitions.
    pub fn new(
        name: &'static str,
        labels: &[&'static str],
        edges: &[(&str, &str)],
        constraints: Vec<DegreeConstraint>,
    ) -> Pattern {
        assert_eq!(labels.len(), constraints.len(), "pattern {name}: one constraint per vertex");
        let index = |l: &str| labels.iter().position(|x| *x == l).unwrap_or_else(|| panic!("pattern {name}: no label {l}"));
        let mut skeleton = Graph::with_vertices(labels.len() as u32);
        for &(a, b) in edges {
            skeleton.add_edge(Vertex(index(a) as u32), Vertex(index(b) as u32)).expect("pattern edge");
        }
        let p = Pattern { name, labels: labels.to_vec(), skeleton, constraints };
        assert!(p.is_well_formed(), "pattern {name} violates its invariants");
        p
    }

    pub fn unconstrained(name: &'static str, labels: &[&'static str], edges: &[(&str, &str)]) -> Pattern {
        Pattern::new(name, labels, edges, vec![DegreeConstraint::Any; labels.len()])
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| *l == label)
    }

    /// Connected skeleton and every exact mark at least the skeleton degree.
    pub fn is_well_formed(&self) -> bool {
        self.skeleton.is_connected()
            && self.constraints.iter().enumerate().all(|(i, c)| match c {
                DegreeConstraint::Exact(k) | DegreeConstraint::AtMost(k) => self.skeleton.degree(Vertex(i as u32)) <= *k,
                _ => true,
            })
    }
}

/// `mapping[i]` is the host image of pattern vertex `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatchWitness {
    pub mapping: Vec<Vertex>,
}

impl MatchWitness {
    /// Injective, edge-preserving and degree-respecting.
    pub fn is_valid(&self, host: &Graph, p: &Pattern) -> bool {
        if self.mapping.len() != p.len() {
            return false;
        }
        let mut seen = std::collections::BTreeSet::new();
        if !self.mapping.iter().all(|v| host.has_vertex(*v) && seen.insert(*v)) {
            return false;
        }
        p.skeleton.edges().all(|e| host.has_edge(self.mapping[e.lo().0 as usize], self.mapping[e.hi().0 as usize]))
            && self.mapping.iter().zip(&p.constraints).all(|(&v, c)| c.admits(host.degree(v)))
    }
}

/// Calls `visit` on every match in lexicographic order of the mapping vector,
/// stopping early when it breaks.
pub fn for_each_match<F>(host: &Graph, p: &Pattern, mut visit: F)
where
    F: FnMut(&[Vertex]) -> ControlFlow<()>,
{
    if p.is_empty() {
        let _ = visit(&[]);
        return;
    }
    let k = p.len();
    let earlier: Vec<Vec<usize>> = (0..k)
        .map(|i| p.skeleton.neighbors(Vertex(i as u32)).map(|u| u.0 as usize).filter(|&j| j < i).collect())
        .collect();
    let all: Vec<Vertex> = host.vertices().collect();
    let mut mapping = Vec::with_capacity(k);
    let _ = extend_match(host, p, &earlier, &all, &mut mapping, &mut visit);
}

fn extend_match<F>(
    host: &Graph,
    p: &Pattern,
    earlier: &[Vec<usize>],
    all: &[Vertex],
    mapping: &mut Vec<Vertex>,
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[Vertex]) -> ControlFlow<()>,
{
    let i = mapping.len();
    if i == p.len() {
        return visit(mapping);
    }
    let candidates: Vec<Vertex> = match earlier[i].first() {
        Some(&j) => host.neighbors(mapping[j]).collect(),
        None => all.to_vec(),
    };
    for v in candidates {
        if mapping.contains(&v)
            || !p.constraints[i].admits(host.degree(v))
            || !earlier[i].iter().all(|&j| host.has_edge(mapping[j], v))
        {
            continue;
        }
        mapping.push(v);
        let flow = extend_match(host, p, earlier, all, mapping, visit);
        mapping.pop();
        flow?;
    }
    ControlFlow::Continue(())
}

/// Lexicographically smallest match, if any. The search is exhaustive.
pub fn match_pattern(host: &Graph, p: &Pattern) -> Option<MatchWitness> {
    let mut found = None;
    for_each_match(host, p, |m| {
        found = Some(MatchWitness { mapping: m.to_vec() });
        ControlFlow::Break(())
    });
    found
}

/// The six configurations excluded by the main theorem, in figure order (a)-(f).
pub fn forbidden_catalog() -> Vec<Pattern> {
    vec![
        // 4-cycle with one chord
        Pattern::unconstrained("4a", &["E", "N", "W", "S"], &[("E", "N"), ("N", "W"), ("W", "S"), ("S", "E"), ("N", "S")]),
        // triangle and quadrilateral sharing an edge
        Pattern::unconstrained(
            "4b",
            &["NE", "H", "NW", "SW", "SE"],
            &[("NE", "H"), ("H", "NW"), ("NW", "SW"), ("SW", "SE"), ("SE", "NE"), ("NE", "NW")],
        ),
        // two quadrilaterals sharing an edge
        Pattern::unconstrained(
            "4c",
            &["NE", "NW", "W", "SW", "SE", "E"],
            &[("NE", "NW"), ("NW", "W"), ("W", "SW"), ("SW", "SE"), ("SE", "E"), ("E", "NE"), ("W", "E")],
        ),
        // hexagon and triangle sharing an edge
        Pattern::unconstrained(
            "4d",
            &["v1", "v2", "v3", "v4", "v5", "v6", "N"],
            &[("v1", "v2"), ("v2", "v3"), ("v3", "v4"), ("v4", "v5"), ("v5", "v6"), ("v6", "v1"), ("v1", "N"), ("N", "v2")],
        ),
        // pentagon, quadrilateral on v1v2, triangle on the adjacent edge v2v3
        Pattern::unconstrained(
            "4e",
            &["v1", "v2", "v3", "v4", "v5", "NE1", "NE2", "NW"],
            &[
                ("v1", "v2"),
                ("v2", "v3"),
                ("v3", "v4"),
                ("v4", "v5"),
                ("v5", "v1"),
                ("v2", "NE2"),
                ("NE2", "NE1"),
                ("NE1", "v1"),
                ("v2", "NW"),
                ("NW", "v3"),
            ],
        ),
        // pentagon, quadrilateral on v1v2, triangle on the non-adjacent edge v3v4
        Pattern::unconstrained(
            "4f",
            &["v1", "v2", "v3", "v4", "v5", "NE1", "NE2", "SW"],
            &[
                ("v1", "v2"),
                ("v2", "v3"),
                ("v3", "v4"),
                ("v4", "v5"),
                ("v5", "v1"),
                ("v2", "NE2"),
                ("NE2", "NE1"),
                ("NE1", "v1"),
                ("v3", "SW"),
                ("SW", "v4"),
            ],
        ),
    ]
}

/// The three reducible configurations with exact degree marks. Labels are
/// listed in the orientation rank used by their extension recipes.
pub fn reducible_catalog() -> Vec<Pattern> {
    use DegreeConstraint::Exact;
    let pentagon_with_triangle: &[(&str, &str)] =
        &[("v1", "v2"), ("v2", "v3"), ("v3", "v4"), ("v4", "v5"), ("v5", "v1"), ("v1", "h"), ("v2", "h")];
    vec![
        // triangle o v1 v2 with a pendant 3-vertex v3 at o
        Pattern::new(
            "5a",
            &["v2", "o", "v1", "v3"],
            &[("v2", "o"), ("o", "v1"), ("v1", "v2"), ("o", "v3")],
            vec![Exact(3), Exact(4), Exact(4), Exact(3)],
        ),
        // pentagon v1..v5 with triangle v1 v2 h; 3-vertices v3, v5
        Pattern::new(
            "5b",
            &["v5", "v1", "v2", "h", "v3", "v4"],
            pentagon_with_triangle,
            vec![Exact(3), Exact(4), Exact(4), Exact(4), Exact(3), Exact(4)],
        ),
        // same skeleton; 3-vertices v2, v4
        Pattern::new(
            "5c",
            &["v2", "v1", "v5", "h", "v4", "v3"],
            pentagon_with_triangle,
            vec![Exact(3), Exact(4), Exact(4), Exact(4), Exact(3), Exact(4)],
        ),
    ]
}

/// Some cycle on exactly `k` vertices, as a vertex sequence starting at its
/// smallest vertex. Exhaustive backtracking.
pub fn find_cycle_of_length(host: &Graph, k: usize) -> Result<Option<Vec<Vertex>>> {
    if k < 3 {
        return Err(Error::CycleLengthTooSmall(k));
    }
    let mut path = Vec::with_capacity(k);
    for start in host.vertices() {
        path.clear();
        path.push(start);
        if cycle_search(host, k, &mut path) {
            return Ok(Some(path));
        }
    }
    Ok(None)
}

fn cycle_search(host: &Graph, k: usize, path: &mut Vec<Vertex>) -> bool {
    let start = path[0];
    let last = *path.last().unwrap();
    if path.len() == k {
        return host.has_edge(last, start);
    }
    let next: Vec<Vertex> = host.neighbors(last).filter(|&u| u > start && !path.contains(&u)).collect();
    for u in next {
        path.push(u);
        if cycle_search(host, k, path) {
            return true;
        }
        path.pop();
    }
    false
}

/// Abstract part of membership in T_{i,j}: no i-cycle and no j-cycle.
pub fn in_class_tij(host: &Graph, i: usize, j: usize) -> Result<bool> {
    Ok(find_cycle_of_length(host, i)?.is_none() && find_cycle_of_length(host, j)?.is_none())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogWitness {
    /// Position in the catalog.
    pub index: usize,
    pub name: &'static str,
    pub witness: MatchWitness,
}

/// First catalog witness in catalog order, lexicographically smallest mapping.
pub fn forbidden_witness(host: &Graph) -> Option<CatalogWitness> {
    forbidden_catalog()
        .iter()
        .enumerate()
        .find_map(|(index, p)| match_pattern(host, p).map(|witness| CatalogWitness { index, name: p.name, witness }))
}

pub fn is_forbidden_free(host: &Graph) -> (bool, Option<CatalogWitness>) {
    let w = forbidden_witness(host);
    (w.is_none(), w)
}

/// Equality of cyclic sequences up to rotation and reflection.
pub fn cyclic_equivalent(a: &[usize], b: &[usize]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    let n = a.len();
    let reversed: Vec<usize> = b.iter().rev().copied().collect();
    (0..n).any(|s| (0..n).all(|i| a[i] == b[(s + i) % n]) || (0..n).all(|i| a[i] == reversed[(s + i) % n]))
}

/// Host degrees read along the face boundary.
pub fn face_degrees(host: &Graph, face: &Face) -> Vec<usize> {
    face.vertices().into_iter().map(|v| host.degree(v)).collect()
}

pub(crate) fn is_face_type(host: &Graph, face: &Face, pattern: &[usize]) -> bool {
    cyclic_equivalent(&face_degrees(host, face), pattern)
}

/// A 3-vertex on one (3,4,4,4)-face and two (3,4,3,4,4)-faces.
pub fn find_light_3vertices(eg: &EmbeddedGraph) -> Vec<Vertex> {
    light_3vertices_in(eg, &eg.faces())
}

pub(crate) fn light_3vertices_in(eg: &EmbeddedGraph, faces: &FaceSet) -> Vec<Vertex> {
    let g = eg.graph();
    g.vertices()
        .filter(|&v| g.degree(v) == 3)
        .filter(|&v| {
            let (mut quads, mut pentagons) = (0, 0);
            for f in faces.corners(eg, v) {
                if is_face_type(g, f, &[3, 4, 4, 4]) {
                    quads += 1;
                } else if is_face_type(g, f, &[3, 4, 3, 4, 4]) {
                    pentagons += 1;
                }
            }
            quads == 1 && pentagons == 2
        })
        .collect()
}

/// A 3-vertex incident to a 4-face.
pub fn find_minor_3vertices(eg: &EmbeddedGraph) -> Vec<Vertex> {
    let g = eg.graph();
    let faces = eg.faces();
    g.vertices()
        .filter(|&v| g.degree(v) == 3 && faces.corners(eg, v).any(|f| f.size() == 4))
        .collect()
}
