//! (d,h)-decompositions: an edge set H of maximum degree at most h together
//! with an acyclic orientation of the remaining edges of out-degree at most d.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::degeneracy::{is_d_degenerate, orient_bounded, Orientation};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub h_edges: BTreeSet<Edge>,
    pub orientation: Orientation,
    pub d: usize,
    pub h: usize,
}

impl Decomposition {
    pub fn empty(d: usize, h: usize) -> Self {
        Decomposition { h_edges: BTreeSet::new(), orientation: Orientation::new(), d, h }
    }

    /// Largest number of H-edges at a single vertex.
    pub fn h_max_degree(&self) -> usize {
        let mut deg: BTreeMap<Vertex, usize> = BTreeMap::new();
        for e in &self.h_edges {
            *deg.entry(e.lo()).or_default() += 1;
            *deg.entry(e.hi()).or_default() += 1;
        }
        deg.values().copied().max().unwrap_or(0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Clause {
    HDegree,
    Coverage,
    Acyclicity,
    OutDegree,
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Clause::HDegree => "H-degree",
            Clause::Coverage => "coverage",
            Clause::Acyclicity => "acyclicity",
            Clause::OutDegree => "out-degree",
        })
    }
}

/// What a violation is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Subject {
    Vertex(Vertex),
    Edge(Edge),
    Orientation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub clause: Clause,
    pub subject: Subject,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.clause, self.detail)
    }
}

/// Violations are listed in clause order, so the first one is the first failed clause.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub violations: Vec<Violation>,
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }
}

pub fn verify_decomposition(g: &Graph, dec: &Decomposition) -> Result<Verdict> {
    if let Some(e) = dec.h_edges.iter().chain(dec.orientation.edges().collect::<Vec<_>>().iter()).find(|e| !g.contains_edge(**e)) {
        return Err(Error::EdgeNotInGraph(*e));
    }
    let mut violations = Vec::new();

    let mut h_degree: BTreeMap<Vertex, usize> = BTreeMap::new();
    for e in &dec.h_edges {
        *h_degree.entry(e.lo()).or_default() += 1;
        *h_degree.entry(e.hi()).or_default() += 1;
    }
    for (v, k) in &h_degree {
        if *k > dec.h {
            violations.push(Violation { clause: Clause::HDegree, subject: Subject::Vertex(*v), detail: format!("vertex {v} has {k} H-edges, limit {}", dec.h) });
        }
    }

    for e in g.edges() {
        let in_h = dec.h_edges.contains(&e);
        let oriented = dec.orientation.arc(e).is_some();
        if in_h && oriented {
            violations.push(Violation { clause: Clause::Coverage, subject: Subject::Edge(e), detail: format!("edge {e} is both in H and oriented") });
        } else if !in_h && !oriented {
            violations.push(Violation { clause: Clause::Coverage, subject: Subject::Edge(e), detail: format!("edge {e} is neither in H nor oriented") });
        }
    }

    if !dec.orientation.is_acyclic() {
        violations.push(Violation { clause: Clause::Acyclicity, subject: Subject::Orientation, detail: "orientation has a directed cycle".into() });
    }

    for v in g.vertices() {
        let k = dec.orientation.out_degree(v);
        if k > dec.d {
            violations.push(Violation { clause: Clause::OutDegree, subject: Subject::Vertex(v), detail: format!("vertex {v} has out-degree {k}, limit {}", dec.d) });
        }
    }
    Ok(Verdict { violations })
}

/// Exhaustive decision procedure: tries every H with maximum degree at most `h`,
/// by increasing size and then lexicographically over the sorted edge list, and
/// returns the first whose complement is d-degenerate.
pub fn solve_exact(g: &Graph, d: usize, h: usize) -> Option<Decomposition> {
    let found = if is_d_degenerate(g, d) {
        Some(BTreeSet::new())
    } else if h == 0 {
        None
    } else {
        let edges: Vec<Edge> = g.edges().collect();
        (1..=edges.len()).find_map(|size| {
            let mut chosen = Vec::with_capacity(size);
            let mut load = BTreeMap::new();
            first_subset(g, &edges, 0, size, d, h, &mut chosen, &mut load)
        })
    };
    let h_edges = found?;
    let rest = g.without_edges(&h_edges);
    let orientation = orient_bounded(&rest, d).expect("complement is d-degenerate");
    let dec = Decomposition { h_edges, orientation, d, h };
    debug_assert!(verify_decomposition(g, &dec).map(|v| v.is_valid()).unwrap_or(false));
    Some(dec)
}

#[allow(clippy::too_many_arguments)]
fn first_subset(
    g: &Graph,
    edges: &[Edge],
    from: usize,
    size: usize,
    d: usize,
    h: usize,
    chosen: &mut Vec<Edge>,
    load: &mut BTreeMap<Vertex, usize>,
) -> Option<BTreeSet<Edge>> {
    if chosen.len() == size {
        let set: BTreeSet<Edge> = chosen.iter().copied().collect();
        return is_d_degenerate(&g.without_edges(&set), d).then_some(set);
    }
    let needed = size - chosen.len();
    for i in from..edges.len() {
        if edges.len() - i < needed {
            break;
        }
        let e = edges[i];
        let (a, b) = e.endpoints();
        if load.get(&a).copied().unwrap_or(0) >= h || load.get(&b).copied().unwrap_or(0) >= h {
            continue;
        }
        *load.entry(a).or_default() += 1;
        *load.entry(b).or_default() += 1;
        chosen.push(e);
        let found = first_subset(g, edges, i + 1, size, d, h, chosen, load);
        chosen.pop();
        *load.get_mut(&a).unwrap() -= 1;
        *load.get_mut(&b).unwrap() -= 1;
        if found.is_some() {
            return found;
        }
    }
    None
}

pub fn decomposable_21(g: &Graph) -> bool {
    solve_exact(g, 2, 1).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degeneracy::{orientation_from_order, Arc, PeelingOrder};
    use crate::generators::{complete, cycle};

    fn kn(n: usize) -> Graph {
        complete(n).unwrap().graph().clone()
    }

    fn e(a: u32, b: u32) -> Edge {
        Edge::new(Vertex(a), Vertex(b))
    }

    #[test]
    fn k4_with_one_h_edge_is_valid() {
        let g = kn(4);
        let h: BTreeSet<Edge> = [e(0, 1)].into();
        let rest = g.without_edges(&h);
        let o = orient_bounded(&rest, 2).unwrap();
        let dec = Decomposition { h_edges: h, orientation: o, d: 2, h: 1 };
        assert!(verify_decomposition(&g, &dec).unwrap().is_valid());
    }

    #[test]
    fn two_incident_h_edges_violate_h_degree() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let dec = Decomposition { h_edges: [e(0, 1), e(1, 2)].into(), orientation: Orientation::new(), d: 2, h: 1 };
        let v = verify_decomposition(&g, &dec).unwrap();
        assert_eq!(v.first().unwrap().clause, Clause::HDegree);
    }

    #[test]
    fn directed_triangle_violates_acyclicity() {
        let g = cycle(3).unwrap().graph().clone();
        let o = Orientation::from_arcs([Arc::new(Vertex(0), Vertex(1)), Arc::new(Vertex(1), Vertex(2)), Arc::new(Vertex(2), Vertex(0))]).unwrap();
        let dec = Decomposition { h_edges: BTreeSet::new(), orientation: o, d: 2, h: 1 };
        let v = verify_decomposition(&g, &dec).unwrap();
        assert_eq!(v.violations.len(), 1);
        assert_eq!(v.first().unwrap().clause, Clause::Acyclicity);
    }

    #[test]
    fn coverage_and_out_degree_clauses() {
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let order = PeelingOrder { order: vec![Vertex(0), Vertex(1), Vertex(2), Vertex(3)] };
        let o = orientation_from_order(&g, &order);
        let dec = Decomposition { h_edges: BTreeSet::new(), orientation: o.clone(), d: 2, h: 1 };
        assert_eq!(verify_decomposition(&g, &dec).unwrap().first().unwrap().clause, Clause::OutDegree);
        let both = Decomposition { h_edges: [e(0, 1)].into(), orientation: o, d: 3, h: 1 };
        assert_eq!(verify_decomposition(&g, &both).unwrap().first().unwrap().clause, Clause::Coverage);
        let missing = Decomposition::empty(2, 1);
        assert_eq!(verify_decomposition(&g, &missing).unwrap().first().unwrap().clause, Clause::Coverage);
    }

    #[test]
    fn foreign_edges_are_errors() {
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        let dec = Decomposition { h_edges: [e(1, 2)].into(), orientation: Orientation::new(), d: 2, h: 1 };
        assert_eq!(verify_decomposition(&g, &dec), Err(Error::EdgeNotInGraph(e(1, 2))));
    }

    #[test]
    fn exact_solver_examples() {
        let k4 = solve_exact(&kn(4), 2, 1).unwrap();
        assert_eq!(k4.h_edges.len(), 1);
        assert!(solve_exact(&kn(5), 2, 1).is_none());
        let c6 = cycle(6).unwrap().graph().clone();
        let dec = solve_exact(&c6, 1, 1).unwrap();
        assert!(verify_decomposition(&c6, &dec).unwrap().is_valid());
        assert_eq!(dec.h_edges.len(), 1, "removing one edge of C6 leaves a path");
    }

    #[test]
    fn wrapper() {
        assert!(decomposable_21(&kn(4)));
        assert!(!decomposable_21(&kn(5)));
        let forest = Graph::from_edges(7, &[(0, 1), (1, 2), (3, 4), (4, 5), (4, 6)]).unwrap();
        let dec = solve_exact(&forest, 2, 1).unwrap();
        assert!(dec.h_edges.is_empty());
    }
}
