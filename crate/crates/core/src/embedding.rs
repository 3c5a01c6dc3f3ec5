//! Rotation-system embeddings and face tracing.
//!
//! A rotation system fixes a cyclic order of neighbours at every vertex, which
//! determines a cellular embedding on an orientable surface. Faces are traced by
//! following directed half-edges: from `u -> v` the walk continues with
//! `v -> w`, where `w` follows `u` in the rotation at `v`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Vertex};

/// Directed half-edge `tail -> head`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Dart {
    pub tail: Vertex,
    pub head: Vertex,
}

impl Dart {
    pub fn new(tail: Vertex, head: Vertex) -> Self {
        Dart { tail, head }
    }

    pub fn reversed(self) -> Dart {
        Dart::new(self.head, self.tail)
    }

    pub fn edge(self) -> Edge {
        Edge::new(self.tail, self.head)
    }
}

impl fmt::Display for Dart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.tail, self.head)
    }
}

/// Faces are named by the smallest dart on their boundary.
pub type FaceId = Dart;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    /// Closed boundary walk, starting at the canonical (smallest) dart.
    pub boundary: Vec<Dart>,
}

impl Face {
    pub fn id(&self) -> FaceId {
        self.boundary[0]
    }

    pub fn size(&self) -> usize {
        self.boundary.len()
    }

    /// Vertices in boundary order (a vertex may repeat).
    pub fn vertices(&self) -> Vec<Vertex> {
        self.boundary.iter().map(|d| d.tail).collect()
    }

    pub fn vertex_set(&self) -> BTreeSet<Vertex> {
        self.boundary.iter().map(|d| d.tail).collect()
    }

    pub fn edge_set(&self) -> BTreeSet<Edge> {
        self.boundary.iter().map(|d| d.edge()).collect()
    }

    /// True when the boundary walk visits no vertex twice.
    pub fn is_simple(&self) -> bool {
        self.vertex_set().len() == self.size()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddedGraph {
    graph: Graph,
    rotation: BTreeMap<Vertex, Vec<Vertex>>,
}

impl EmbeddedGraph {
    /// Builds an embedding from per-vertex cyclic neighbour lists.
    ///
    /// Every neighbour named in a rotation must itself be a key, adjacency must be
    /// symmetric, and no rotation may repeat a neighbour or contain its own vertex.
    pub fn new(rotation: BTreeMap<Vertex, Vec<Vertex>>) -> Result<Self> {
        let mut graph = Graph::new();
        for &v in rotation.keys() {
            graph.add_vertex(v);
        }
        for (&v, ns) in &rotation {
            let mut seen = BTreeSet::new();
            for &u in ns {
                if u == v {
                    return Err(Error::InvalidRotation { vertex: v, reason: "contains the vertex itself".into() });
                }
                if !seen.insert(u) {
                    return Err(Error::InvalidRotation { vertex: v, reason: format!("neighbour {u} repeated") });
                }
                match rotation.get(&u) {
                    None => {
                        return Err(Error::InvalidRotation { vertex: v, reason: format!("unknown neighbour {u}") })
                    }
                    Some(back) if !back.contains(&v) => {
                        return Err(Error::InvalidRotation {
                            vertex: u,
                            reason: format!("missing neighbour {v} (adjacency not symmetric)"),
                        })
                    }
                    _ => {}
                }
                graph.add_edge(v, u)?;
            }
        }
        Ok(EmbeddedGraph { graph, rotation })
    }

    /// Rotation system from a straight-line drawing: neighbours are sorted
    /// counter-clockwise by the angle of the edge at each vertex. The embedding is
    /// planar exactly when the drawing has no crossings.
    pub fn from_positions(positions: &BTreeMap<Vertex, (f64, f64)>, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut g = Graph::new();
        for &v in positions.keys() {
            g.add_vertex(v);
        }
        for &(a, b) in edges {
            g.add_edge(a, b)?;
        }
        let rotation = g
            .vertices()
            .map(|v| {
                let (x0, y0) = positions[&v];
                let mut ns: Vec<(f64, Vertex)> = g
                    .neighbors(v)
                    .map(|u| {
                        let (x, y) = positions[&u];
                        ((y - y0).atan2(x - x0), u)
                    })
                    .collect();
                ns.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
                (v, ns.into_iter().map(|(_, u)| u).collect())
            })
            .collect();
        EmbeddedGraph::new(rotation)
    }

    /// Embedding with neighbours listed in increasing id order; useful when only
    /// the abstract graph matters.
    pub fn with_sorted_rotation(graph: &Graph) -> Self {
        let rotation = graph.vertices().map(|v| (v, graph.neighbors(v).collect())).collect();
        EmbeddedGraph { graph: graph.clone(), rotation }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn rotation(&self, v: Vertex) -> &[Vertex] {
        self.rotation.get(&v).map_or(&[], Vec::as_slice)
    }

    pub fn rotations(&self) -> &BTreeMap<Vertex, Vec<Vertex>> {
        &self.rotation
    }

    /// Neighbour following `u` in the rotation at `v`.
    pub fn rotation_successor(&self, v: Vertex, u: Vertex) -> Option<Vertex> {
        let rot = self.rotation.get(&v)?;
        let pos = rot.iter().position(|&x| x == u)?;
        Some(rot[(pos + 1) % rot.len()])
    }

    pub fn darts(&self) -> impl Iterator<Item = Dart> + '_ {
        self.rotation.iter().flat_map(|(&v, ns)| ns.iter().map(move |&u| Dart::new(v, u)))
    }

    pub fn faces(&self) -> FaceSet {
        FaceSet::new(face_trace(self))
    }

    /// Induced embedding on `V \ removed`; cyclic order of surviving neighbours is kept.
    pub fn delete_vertices(&self, removed: &BTreeSet<Vertex>) -> Result<EmbeddedGraph> {
        delete_vertices(self, removed)
    }
}

/// Faces of an embedding plus a dart-to-face index.
#[derive(Debug, Clone)]
pub struct FaceSet {
    faces: Vec<Face>,
    by_dart: HashMap<Dart, usize>,
    by_id: BTreeMap<FaceId, usize>,
}

impl FaceSet {
    pub fn new(faces: Vec<Face>) -> Self {
        let mut by_dart = HashMap::new();
        let mut by_id = BTreeMap::new();
        for (i, f) in faces.iter().enumerate() {
            by_id.insert(f.id(), i);
            for &d in &f.boundary {
                by_dart.insert(d, i);
            }
        }
        FaceSet { faces, by_dart, by_id }
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn get(&self, id: FaceId) -> Option<&Face> {
        self.by_id.get(&id).map(|&i| &self.faces[i])
    }

    /// The face whose boundary contains dart `d`.
    pub fn face_of(&self, d: Dart) -> Option<&Face> {
        self.by_dart.get(&d).map(|&i| &self.faces[i])
    }

    /// Faces around `v`, one per corner, in rotation order (repeats allowed).
    pub fn corners<'a>(&'a self, eg: &'a EmbeddedGraph, v: Vertex) -> impl Iterator<Item = &'a Face> + 'a {
        eg.rotation(v).iter().filter_map(move |&u| self.face_of(Dart::new(v, u)))
    }

    /// Pairs of distinct faces sharing at least one edge, with the shared edges.
    pub fn adjacent_pairs(&self) -> BTreeMap<(FaceId, FaceId), BTreeSet<Edge>> {
        let mut out: BTreeMap<(FaceId, FaceId), BTreeSet<Edge>> = BTreeMap::new();
        for f in &self.faces {
            for &d in &f.boundary {
                if let Some(g) = self.face_of(d.reversed()) {
                    if f.id() < g.id() {
                        out.entry((f.id(), g.id())).or_default().insert(d.edge());
                    }
                }
            }
        }
        out
    }
}

/// Traces every face of the embedding. Each dart lies on exactly one face; faces
/// are returned in increasing order of their canonical dart.
pub fn face_trace(eg: &EmbeddedGraph) -> Vec<Face> {
    let position: HashMap<Dart, usize> = eg
        .rotation
        .iter()
        .flat_map(|(&v, ns)| ns.iter().enumerate().map(move |(i, &u)| (Dart::new(v, u), i)))
        .collect();
    let next = |d: Dart| -> Dart {
        let rot = &eg.rotation[&d.head];
        let at = position[&d.reversed()];
        Dart::new(d.head, rot[(at + 1) % rot.len()])
    };

    let mut darts: Vec<Dart> = eg.darts().collect();
    darts.sort();
    let mut visited = BTreeSet::new();
    let mut faces = Vec::new();
    for start in darts {
        if visited.contains(&start) {
            continue;
        }
        let mut boundary = Vec::new();
        let mut d = start;
        loop {
            visited.insert(d);
            boundary.push(d);
            d = next(d);
            if d == start {
                break;
            }
        }
        faces.push(Face { boundary });
    }
    faces
}

/// `|V| - |E| + |F|` of a connected embedding. A lone vertex counts one face.
pub fn euler_characteristic(eg: &EmbeddedGraph) -> Result<i64> {
    let g = eg.graph();
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let faces = if g.edge_count() == 0 { 1 } else { face_trace(eg).len() };
    Ok(g.vertex_count() as i64 - g.edge_count() as i64 + faces as i64)
}

pub fn delete_vertices(eg: &EmbeddedGraph, removed: &BTreeSet<Vertex>) -> Result<EmbeddedGraph> {
    if let Some(&v) = removed.iter().find(|v| !eg.graph.has_vertex(**v)) {
        return Err(Error::UnknownVertex(v));
    }
    let rotation = eg
        .rotation
        .iter()
        .filter(|(v, _)| !removed.contains(v))
        .map(|(&v, ns)| (v, ns.iter().filter(|u| !removed.contains(u)).copied().collect()))
        .collect();
    Ok(EmbeddedGraph { graph: eg.graph.without_vertices(removed), rotation })
}

/// Distinct faces sharing exactly one edge and exactly two vertices.
pub fn faces_normally_adjacent(f: &Face, g: &Face) -> bool {
    if f.id() == g.id() {
        return false;
    }
    let shared_edges = f.edge_set().intersection(&g.edge_set()).count();
    let shared_vertices = f.vertex_set().intersection(&g.vertex_set()).count();
    shared_edges == 1 && shared_vertices == 2
}
