//! Checks the ten structural properties a smallest counterexample must have,
//! reporting a witness for every violation.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::embedding::{faces_normally_adjacent, EmbeddedGraph, Face, FaceId, FaceSet};
use crate::graph::{Edge, Graph, Vertex};
use crate::patterns::{for_each_match, is_face_type, light_3vertices_in, reducible_catalog};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LemmaItem {
    /// minimum degree at least 3
    I,
    /// no adjacent 3-vertices
    II,
    /// no chord on a 5⁻-cycle
    III,
    /// no adjacent 4⁻-faces
    IV,
    /// a 5-face meets 4⁻-faces normally and touches at most one 3-face
    V,
    /// a 5-face touching a 3-face touches no 4-face
    VI,
    /// no 6-face touches a 3-face
    VII,
    /// no (3,4,3,4)-face
    VIII,
    /// no light 3-vertex
    IX,
    /// no reducible configuration
    X,
}

impl LemmaItem {
    pub const ALL: [LemmaItem; 10] = [
        LemmaItem::I,
        LemmaItem::II,
        LemmaItem::III,
        LemmaItem::IV,
        LemmaItem::V,
        LemmaItem::VI,
        LemmaItem::VII,
        LemmaItem::VIII,
        LemmaItem::IX,
        LemmaItem::X,
    ];
}

impl fmt::Display for LemmaItem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", format!("{self:?}").to_lowercase())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Vertex { vertex: Vertex, degree: usize },
    Edge { edge: Edge },
    ChordedCycle { cycle: Vec<Vertex>, chord: Edge },
    /// Faces in the order the property names them, with an edge they share.
    Faces { faces: Vec<FaceId>, shared: Option<Edge> },
    Face { face: FaceId },
    Configuration { name: &'static str, mapping: Vec<Vertex> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditViolation {
    pub item: LemmaItem,
    pub witness: Witness,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub violations: Vec<AuditViolation>,
}

impl AuditReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn items(&self) -> BTreeSet<LemmaItem> {
        self.violations.iter().map(|v| v.item).collect()
    }

    pub fn witnesses(&self, item: LemmaItem) -> impl Iterator<Item = &Witness> + '_ {
        self.violations.iter().filter(move |v| v.item == item).map(|v| &v.witness)
    }
}

/// Every cycle of length `k` once, starting at its smallest vertex and
/// continuing towards the smaller of its two neighbours.
pub fn cycles_of_length(g: &Graph, k: usize) -> Vec<Vec<Vertex>> {
    fn extend(g: &Graph, k: usize, path: &mut Vec<Vertex>, out: &mut Vec<Vec<Vertex>>) {
        let start = path[0];
        let last = *path.last().unwrap();
        if path.len() == k {
            if g.has_edge(last, start) && path[1] < path[k - 1] {
                out.push(path.clone());
            }
            return;
        }
        for u in g.neighbors(last) {
            if u > start && !path.contains(&u) {
                path.push(u);
                extend(g, k, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    if k < 3 {
        return out;
    }
    for s in g.vertices() {
        extend(g, k, &mut vec![s], &mut out);
    }
    out
}

fn chords(g: &Graph, cycle: &[Vertex]) -> Vec<Edge> {
    let k = cycle.len();
    let mut out = Vec::new();
    for i in 0..k {
        for j in i + 2..k {
            if !(i == 0 && j == k - 1) && g.has_edge(cycle[i], cycle[j]) {
                out.push(Edge::new(cycle[i], cycle[j]));
            }
        }
    }
    out
}

fn faces_of_size(faces: &FaceSet, pred: impl Fn(usize) -> bool) -> impl Iterator<Item = &Face> {
    faces.faces().iter().filter(move |f| pred(f.size()))
}

/// Distinct faces sharing an edge with `f`, each with the smallest shared edge.
fn neighbours<'a>(faces: &'a FaceSet, f: &Face) -> Vec<(&'a Face, Edge)> {
    let mut out: Vec<(&Face, Edge)> = Vec::new();
    for d in &f.boundary {
        if let Some(g) = faces.face_of(d.reversed()) {
            if g.id() == f.id() {
                continue;
            }
            match out.iter_mut().find(|(h, _)| h.id() == g.id()) {
                Some(entry) => entry.1 = entry.1.min(d.edge()),
                None => out.push((g, d.edge())),
            }
        }
    }
    out.sort_by_key(|(g, _)| g.id());
    out
}

pub fn audit_lemma_properties(eg: &EmbeddedGraph) -> AuditReport {
    let g = eg.graph();
    let faces = eg.faces();
    let mut violations = Vec::new();
    let mut push = |item, witness| violations.push(AuditViolation { item, witness });

    for v in g.vertices().filter(|&v| g.degree(v) < 3) {
        push(LemmaItem::I, Witness::Vertex { vertex: v, degree: g.degree(v) });
    }

    for e in g.edges().filter(|e| g.degree(e.lo()) == 3 && g.degree(e.hi()) == 3) {
        push(LemmaItem::II, Witness::Edge { edge: e });
    }

    for k in [4, 5] {
        for cycle in cycles_of_length(g, k) {
            for chord in chords(g, &cycle) {
                push(LemmaItem::III, Witness::ChordedCycle { cycle: cycle.clone(), chord });
            }
        }
    }

    for f in faces_of_size(&faces, |s| s <= 4) {
        for (h, e) in neighbours(&faces, f) {
            if h.size() <= 4 && f.id() < h.id() {
                push(LemmaItem::IV, Witness::Faces { faces: vec![f.id(), h.id()], shared: Some(e) });
            }
        }
    }

    for f in faces_of_size(&faces, |s| s == 5) {
        let adjacent = neighbours(&faces, f);
        for (h, e) in &adjacent {
            if h.size() <= 4 && !faces_normally_adjacent(f, h) {
                push(LemmaItem::V, Witness::Faces { faces: vec![f.id(), h.id()], shared: Some(*e) });
            }
        }
        let triangles: Vec<&(&Face, Edge)> = adjacent.iter().filter(|(h, _)| h.size() == 3).collect();
        if triangles.len() > 1 {
            let mut ids = vec![f.id()];
            ids.extend(triangles.iter().map(|(h, _)| h.id()));
            push(LemmaItem::V, Witness::Faces { faces: ids, shared: None });
        }
        for (t, _) in &triangles {
            for (q, _) in adjacent.iter().filter(|(h, _)| h.size() == 4) {
                push(LemmaItem::VI, Witness::Faces { faces: vec![f.id(), t.id(), q.id()], shared: None });
            }
        }
    }

    for f in faces_of_size(&faces, |s| s == 6) {
        for (h, e) in neighbours(&faces, f) {
            if h.size() == 3 {
                push(LemmaItem::VII, Witness::Faces { faces: vec![f.id(), h.id()], shared: Some(e) });
            }
        }
    }

    for f in faces_of_size(&faces, |s| s == 4) {
        if is_face_type(g, f, &[3, 4, 3, 4]) {
            push(LemmaItem::VIII, Witness::Face { face: f.id() });
        }
    }

    for v in light_3vertices_in(eg, &faces) {
        push(LemmaItem::IX, Witness::Vertex { vertex: v, degree: 3 });
    }

    for p in reducible_catalog() {
        let mut seen: BTreeSet<BTreeSet<Vertex>> = BTreeSet::new();
        for_each_match(g, &p, |m| {
            if seen.insert(m.iter().copied().collect()) {
                push(LemmaItem::X, Witness::Configuration { name: p.name, mapping: m.to_vec() });
            }
            std::ops::ControlFlow::Continue(())
        });
    }

    AuditReport { violations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle, honeycomb_torus, torus_grid};

    #[test]
    fn cycle_enumeration() {
        let k4 = complete(4).unwrap();
        assert_eq!(cycles_of_length(k4.graph(), 3).len(), 4);
        assert_eq!(cycles_of_length(k4.graph(), 4).len(), 3);
        let c5 = cycle(5).unwrap();
        assert_eq!(cycles_of_length(c5.graph(), 5), vec![(0..5).map(Vertex).collect::<Vec<_>>()]);
    }

    #[test]
    fn grid_honeycomb_and_k4() {
        let grid = audit_lemma_properties(&torus_grid(3, 3).unwrap());
        assert!(grid.items().contains(&LemmaItem::IV));
        assert!(!grid.items().contains(&LemmaItem::II));

        let hex = audit_lemma_properties(&honeycomb_torus(3, 3).unwrap());
        assert!(hex.items().contains(&LemmaItem::II));
        assert_eq!(hex.witnesses(LemmaItem::II).count(), 27);

        let k4 = audit_lemma_properties(&complete(4).unwrap());
        assert!(k4.items().contains(&LemmaItem::III));
        assert_eq!(k4.witnesses(LemmaItem::III).count(), 6);
        assert!(!k4.items().contains(&LemmaItem::I));
    }

    #[test]
    fn item_names() {
        assert_eq!(LemmaItem::IV.to_string(), "(iv)");
        assert_eq!(serde_json::to_string(&LemmaItem::VIII).unwrap(), "\"viii\"");
    }
}
