//! Degeneracy by minimum-degree peeling, and acyclic orientations with bounded
//! out-degree.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Arc {
    pub tail: Vertex,
    pub head: Vertex,
}

impl Arc {
    pub fn new(tail: Vertex, head: Vertex) -> Self {
        Arc { tail, head }
    }

    pub fn edge(&self) -> Edge {
        Edge::new(self.tail, self.head)
    }
}

/// An orientation of a set of edges, one arc per edge.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Orientation {
    arcs: BTreeMap<Edge, Arc>,
    out_degree: BTreeMap<Vertex, usize>,
}

impl Orientation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_arcs(arcs: impl IntoIterator<Item = Arc>) -> Result<Self> {
        let mut o = Orientation::new();
        for a in arcs {
            o.insert(a)?;
        }
        Ok(o)
    }

    pub fn insert(&mut self, arc: Arc) -> Result<()> {
        if arc.tail == arc.head {
            return Err(Error::SelfLoop(arc.tail));
        }
        let e = arc.edge();
        if self.arcs.contains_key(&e) {
            return Err(Error::DuplicateArc(e));
        }
        self.arcs.insert(e, arc);
        *self.out_degree.entry(arc.tail).or_default() += 1;
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn arcs(&self) -> impl Iterator<Item = Arc> + '_ {
        self.arcs.values().copied()
    }

    pub fn arc(&self, e: Edge) -> Option<Arc> {
        self.arcs.get(&e).copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.arcs.keys().copied()
    }

    pub fn out_degree(&self, v: Vertex) -> usize {
        self.out_degree.get(&v).copied().unwrap_or(0)
    }

    pub fn max_out_degree(&self) -> usize {
        self.out_degree.values().copied().max().unwrap_or(0)
    }

    /// Kahn-style sink removal; no recursion.
    pub fn is_acyclic(&self) -> bool {
        self.directed_cycle_free_count() == self.vertex_span().len()
    }

    fn vertex_span(&self) -> BTreeSet<Vertex> {
        self.arcs.values().flat_map(|a| [a.tail, a.head]).collect()
    }

    fn directed_cycle_free_count(&self) -> usize {
        let mut in_arcs: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
        let mut remaining_out: BTreeMap<Vertex, usize> = BTreeMap::new();
        for a in self.arcs.values() {
            in_arcs.entry(a.head).or_default().push(a.tail);
            *remaining_out.entry(a.tail).or_default() += 1;
            remaining_out.entry(a.head).or_default();
        }
        let mut sinks: VecDeque<Vertex> = remaining_out.iter().filter(|(_, &d)| d == 0).map(|(&v, _)| v).collect();
        let mut removed = 0;
        while let Some(v) = sinks.pop_front() {
            removed += 1;
            for &t in in_arcs.get(&v).map(Vec::as_slice).unwrap_or(&[]) {
                let d = remaining_out.get_mut(&t).unwrap();
                *d -= 1;
                if *d == 0 {
                    sinks.push_back(t);
                }
            }
        }
        removed
    }
}

/// Vertex removal order of the peeling.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeelingOrder {
    pub order: Vec<Vertex>,
}

impl PeelingOrder {
    /// Largest number of neighbours any vertex has later in the order.
    pub fn back_degree(&self, g: &Graph) -> usize {
        let rank: BTreeMap<Vertex, usize> = self.order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        self.order
            .iter()
            .map(|&v| g.neighbors(v).filter(|u| rank[u] > rank[&v]).count())
            .max()
            .unwrap_or(0)
    }
}

/// Repeatedly removes a minimum-degree vertex (smallest id on ties); the
/// degeneracy is the largest degree seen at removal time.
pub fn degeneracy(g: &Graph) -> (usize, PeelingOrder) {
    let mut degree: BTreeMap<Vertex, usize> = g.vertices().map(|v| (v, g.degree(v))).collect();
    let mut queue: BTreeSet<(usize, Vertex)> = degree.iter().map(|(&v, &d)| (d, v)).collect();
    let mut order = Vec::with_capacity(g.vertex_count());
    let mut best = 0;
    while let Some((d, v)) = queue.pop_first() {
        best = best.max(d);
        order.push(v);
        degree.remove(&v);
        for u in g.neighbors(v) {
            if let Some(du) = degree.get_mut(&u) {
                queue.remove(&(*du, u));
                *du -= 1;
                queue.insert((*du, u));
            }
        }
    }
    (best, PeelingOrder { order })
}

pub fn is_d_degenerate(g: &Graph, d: usize) -> bool {
    degeneracy(g).0 <= d
}

/// Orients every edge from the endpoint peeled first; the result is acyclic and
/// its out-degrees are the back-degrees of the peeling.
pub fn orientation_from_order(g: &Graph, order: &PeelingOrder) -> Orientation {
    let rank: BTreeMap<Vertex, usize> = order.order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let arcs = g.edges().map(|e| {
        let (a, b) = e.endpoints();
        if rank[&a] < rank[&b] {
            Arc::new(a, b)
        } else {
            Arc::new(b, a)
        }
    });
    Orientation::from_arcs(arcs).expect("graph edges are distinct")
}

pub fn orient_bounded(g: &Graph, d: usize) -> Option<Orientation> {
    let (k, order) = degeneracy(g);
    (k <= d).then(|| orientation_from_order(g, &order))
}

/// True iff `o` is acyclic with maximum out-degree at most `d`. Errors when `o`
/// does not orient exactly the edges of `g`.
pub fn verify_orientation(g: &Graph, o: &Orientation, d: usize) -> Result<bool> {
    if o.len() != g.edge_count() || !o.edges().all(|e| g.contains_edge(e)) {
        return Err(Error::EdgeMismatch);
    }
    Ok(o.max_out_degree() <= d && o.is_acyclic())
}
