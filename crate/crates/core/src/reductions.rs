//! Constructive (2,1)-decomposition by reducible configurations.
//!
//! Each rule names a small configuration `X`. The solver deletes `X`, recurses
//! on the rest, then extends the decomposition of `G - X` back over `X` with the
//! rule's recipe: a fixed set of new H-edges, arcs among `X`, and every edge
//! between `X` and the rest oriented away from `X`. Edges between two vertices
//! of `X` that the recipe does not mention go from lower to higher label rank.
//! The boundary policy never changes an out-degree outside `X`, and each
//! extension is re-verified.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::decomp::{solve_exact, verify_decomposition, Decomposition};
use crate::degeneracy::Arc;
use crate::embedding::{EmbeddedGraph, Face, FaceSet};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Vertex};
use crate::patterns::{
    forbidden_witness, is_face_type, light_3vertices_in, match_pattern, reducible_catalog, CatalogWitness,
    DegreeConstraint,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum RuleId {
    /// a 2^- vertex
    I,
    /// two adjacent 3-vertices
    II,
    /// a (3,4,3,4)-face
    VIII,
    /// a light 3-vertex and its three faces
    IX,
    XA,
    XB,
    XC,
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Local matching and orientation for one configuration. Labels are listed in
/// rank order; `roles` gives the figure name of each label.
#[derive(Debug, Clone, PartialEq)]
pub struct Recipe {
    pub name: &'static str,
    pub labels: Vec<&'static str>,
    pub roles: Vec<&'static str>,
    pub degrees: Vec<DegreeConstraint>,
    pub skeleton: Vec<(usize, usize)>,
    pub h_edges: Vec<(usize, usize)>,
    pub arcs: Vec<(usize, usize)>,
}

impl Recipe {
    fn new(
        name: &'static str,
        labels: &[&'static str],
        degrees: Vec<DegreeConstraint>,
        skeleton: &[(&str, &str)],
        h_edges: &[(&str, &str)],
        arcs: &[(&str, &str)],
    ) -> Recipe {
        Recipe::with_roles(name, labels, labels, degrees, skeleton, h_edges, arcs)
    }

    /// Edge lists are written with role names.
    fn with_roles(
        name: &'static str,
        labels: &[&'static str],
        roles: &[&'static str],
        degrees: Vec<DegreeConstraint>,
        skeleton: &[(&str, &str)],
        h_edges: &[(&str, &str)],
        arcs: &[(&str, &str)],
    ) -> Recipe {
        let idx = |r: &str| roles.iter().position(|x| *x == r).unwrap_or_else(|| panic!("recipe {name}: no role {r}"));
        let pairs = |es: &[(&str, &str)]| es.iter().map(|&(a, b)| (idx(a), idx(b))).collect::<Vec<_>>();
        Recipe {
            name,
            labels: labels.to_vec(),
            roles: roles.to_vec(),
            degrees,
            skeleton: pairs(skeleton),
            h_edges: pairs(h_edges),
            arcs: pairs(arcs),
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Structural check: labelled vertices exist, are distinct, and carry the
    /// skeleton edges.
    fn check_structure(&self, g: &Graph, labeling: &[Vertex]) -> std::result::Result<(), String> {
        if labeling.len() != self.len() {
            return Err(format!("expected {} labelled vertices, got {}", self.len(), labeling.len()));
        }
        let distinct: BTreeSet<Vertex> = labeling.iter().copied().collect();
        if distinct.len() != labeling.len() {
            return Err("labelled vertices are not distinct".into());
        }
        if let Some(v) = labeling.iter().find(|v| !g.has_vertex(**v)) {
            return Err(format!("vertex {v} is not in the graph"));
        }
        for &(a, b) in &self.skeleton {
            if !g.has_edge(labeling[a], labeling[b]) {
                return Err(format!("missing edge {}-{}", self.roles[a], self.roles[b]));
            }
        }
        Ok(())
    }

    /// Structure plus the degree marks.
    fn check(&self, g: &Graph, labeling: &[Vertex]) -> std::result::Result<(), String> {
        self.check_structure(g, labeling)?;
        for (i, c) in self.degrees.iter().enumerate() {
            let deg = g.degree(labeling[i]);
            if !c.admits(deg) {
                return Err(format!("{} has degree {deg}, expected {c:?}", self.roles[i]));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReductionRule {
    pub id: RuleId,
    /// One recipe per figure panel; only rule IX has more than one.
    pub recipes: Vec<Recipe>,
}

impl ReductionRule {
    /// First occurrence of the rule's configuration in `eg`.
    pub fn find(&self, eg: &EmbeddedGraph, faces: &FaceSet) -> Option<ReductionMatch> {
        let g = eg.graph();
        let labeling = match self.id {
            RuleId::I => g.vertices().find(|&v| g.degree(v) <= 2).map(|v| (0, vec![v])),
            RuleId::II => g
                .edges()
                .find(|e| g.degree(e.lo()) == 3 && g.degree(e.hi()) == 3)
                .map(|e| (0, vec![e.lo(), e.hi()])),
            RuleId::VIII => faces.faces().iter().find_map(|f| label_3434_face(g, f)).map(|l| (0, l)),
            RuleId::XA | RuleId::XB | RuleId::XC => {
                let p = &reducible_catalog()[self.id as usize - RuleId::XA as usize];
                match_pattern(g, p).map(|w| (0, w.mapping))
            }
            RuleId::IX => light_3vertices_in(eg, faces).into_iter().find_map(|o| label_light_vertex(eg, faces, o)),
        }?;
        let (recipe, labeling) = labeling;
        let m = ReductionMatch::new(self.id, recipe, labeling);
        debug_assert!(self.recipes[recipe].check(g, &m.vertices()).is_ok());
        Some(m)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionMatch {
    pub rule: RuleId,
    /// Index into the rule's recipes.
    pub recipe: usize,
    /// Label -> host vertex, in rank order.
    pub labeling: Vec<(&'static str, Vertex)>,
}

impl ReductionMatch {
    pub fn new(rule: RuleId, recipe: usize, vertices: Vec<Vertex>) -> Self {
        let labels = &rule_by_id(rule).recipes[recipe].labels;
        assert_eq!(labels.len(), vertices.len());
        ReductionMatch { rule, recipe, labeling: labels.iter().copied().zip(vertices).collect() }
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        self.labeling.iter().map(|(_, v)| *v).collect()
    }

    /// The vertex set deleted by the reduction.
    pub fn x(&self) -> BTreeSet<Vertex> {
        self.labeling.iter().map(|(_, v)| *v).collect()
    }

    pub fn recipe(&self) -> &'static Recipe {
        &rule_by_id(self.rule).recipes[self.recipe]
    }
}

const fn exact(k: usize) -> DegreeConstraint {
    DegreeConstraint::Exact(k)
}

const LIGHT_SKELETON: [(&str, &str); 11] = [
    ("O", "H"),
    ("O", "L3"),
    ("O", "R3"),
    ("R3", "B"),
    ("B", "L3"),
    ("H", "L1"),
    ("L1", "L2"),
    ("L2", "L3"),
    ("H", "R1"),
    ("R1", "R2"),
    ("R2", "R3"),
];

/// Panel (d): the two pentagons share their third vertex, L2 = R2 = LR2.
const LIGHT_SKELETON_SHARED: [(&str, &str); 11] = [
    ("O", "H"),
    ("O", "L3"),
    ("O", "R3"),
    ("R3", "B"),
    ("B", "L3"),
    ("H", "L1"),
    ("L1", "LR2"),
    ("LR2", "L3"),
    ("H", "R1"),
    ("R1", "LR2"),
    ("LR2", "R3"),
];

const A_LABELS: [&str; 9] = ["a1", "a2", "a3", "a4", "a5", "a6", "a7", "a8", "a9"];

fn light_degrees(roles: &[&str], threes: &[&str]) -> Vec<DegreeConstraint> {
    roles.iter().map(|r| if *r == "O" || threes.contains(r) { exact(3) } else { exact(4) }).collect()
}

fn build_catalog() -> Vec<ReductionRule> {
    let fig5 = reducible_catalog();
    let from_pattern = |name: &'static str, i: usize, h: &[(&str, &str)], arcs: &[(&str, &str)]| {
        let p = &fig5[i];
        let skeleton: Vec<(&str, &str)> =
            p.skeleton.edges().map(|e| (p.labels[e.lo().0 as usize], p.labels[e.hi().0 as usize])).collect();
        Recipe::new(name, &p.labels, p.constraints.clone(), &skeleton, h, arcs)
    };

    // (a): L1, R1 are 3-vertices
    let roles_a = ["R1", "R2", "L1", "H", "O", "L3", "L2", "R3", "B"];
    // (b): L2, R2 are 3-vertices
    let roles_b = ["R2", "R1", "L2", "L3", "O", "H", "L1", "R3", "B"];
    // (c): L1, R2 are 3-vertices; the mirror image is found by swapping sides
    let roles_c = ["R2", "R1", "L1", "H", "O", "L3", "L2", "R3", "B"];
    // (d): L1, R1 are 3-vertices and L2 = R2
    let roles_d = ["R1", "L1", "H", "O", "L3", "LR2", "R3", "B"];

    vec![
        ReductionRule {
            id: RuleId::I,
            recipes: vec![Recipe::new("I", &["v"], vec![DegreeConstraint::AtMost(2)], &[], &[], &[])],
        },
        ReductionRule {
            id: RuleId::II,
            recipes: vec![Recipe::new("II", &["u", "v"], vec![exact(3), exact(3)], &[("u", "v")], &[("u", "v")], &[])],
        },
        ReductionRule {
            id: RuleId::VIII,
            recipes: vec![Recipe::new(
                "VIII",
                &["b1", "b3", "b2", "b4"],
                vec![exact(3), exact(3), exact(4), exact(4)],
                &[("b1", "b2"), ("b2", "b3"), ("b3", "b4"), ("b4", "b1")],
                &[("b1", "b2"), ("b3", "b4")],
                &[("b1", "b4"), ("b3", "b2")],
            )],
        },
        ReductionRule {
            id: RuleId::IX,
            recipes: vec![
                Recipe::with_roles(
                    "IX(a)",
                    &A_LABELS,
                    &roles_a,
                    light_degrees(&roles_a, &["L1", "R1"]),
                    &LIGHT_SKELETON,
                    &[("L3", "B"), ("R3", "R2"), ("R1", "H"), ("L1", "L2")],
                    &[("H", "O"), ("O", "L3"), ("O", "R3"), ("R3", "B"), ("L1", "H"), ("L3", "L2"), ("R1", "R2")],
                ),
                Recipe::with_roles(
                    "IX(b)",
                    &A_LABELS,
                    &roles_b,
                    light_degrees(&roles_b, &["L2", "R2"]),
                    &LIGHT_SKELETON,
                    &[("O", "L3"), ("L1", "L2"), ("H", "R1"), ("R2", "R3")],
                    &[("O", "H"), ("O", "R3"), ("R3", "B"), ("L3", "B"), ("H", "L1"), ("L2", "L3"), ("R2", "R1")],
                ),
                Recipe::with_roles(
                    "IX(c)",
                    &A_LABELS,
                    &roles_c,
                    light_degrees(&roles_c, &["L1", "R2"]),
                    &LIGHT_SKELETON,
                    &[("L3", "B"), ("R3", "R2"), ("R1", "H"), ("L1", "L2")],
                    &[("H", "O"), ("O", "L3"), ("O", "R3"), ("R3", "B"), ("L1", "H"), ("L3", "L2"), ("R2", "R1")],
                ),
                Recipe::with_roles(
                    "IX(d)",
                    &A_LABELS[..8],
                    &roles_d,
                    light_degrees(&roles_d, &["L1", "R1"]),
                    &LIGHT_SKELETON_SHARED,
                    &[("L3", "B"), ("R1", "H"), ("L1", "LR2")],
                    &[
                        ("H", "O"),
                        ("O", "L3"),
                        ("O", "R3"),
                        ("R3", "B"),
                        ("L1", "H"),
                        ("L3", "LR2"),
                        ("R1", "LR2"),
                        ("LR2", "R3"),
                    ],
                ),
            ],
        },
        ReductionRule {
            id: RuleId::XA,
            recipes: vec![from_pattern("XA", 0, &[("v1", "v2"), ("o", "v3")], &[("v2", "o"), ("o", "v1")])],
        },
        ReductionRule {
            id: RuleId::XB,
            recipes: vec![from_pattern(
                "XB",
                1,
                &[("v1", "h"), ("v2", "v3"), ("v4", "v5")],
                &[("v3", "v4"), ("v5", "v1"), ("v1", "v2"), ("v2", "h")],
            )],
        },
        ReductionRule {
            id: RuleId::XC,
            recipes: vec![from_pattern(
                "XC",
                2,
                &[("v1", "h"), ("v2", "v3"), ("v4", "v5")],
                &[("v2", "h"), ("v2", "v1"), ("v1", "v5"), ("v4", "v3")],
            )],
        },
    ]
}

/// The seven reduction rules, in `RuleId` order.
pub fn rule_catalog() -> &'static [ReductionRule] {
    static CATALOG: OnceLock<Vec<ReductionRule>> = OnceLock::new();
    CATALOG.get_or_init(build_catalog)
}

pub fn rule_by_id(id: RuleId) -> &'static ReductionRule {
    &rule_catalog()[id as usize]
}

/// Search order: degree rules first, face rules last.
pub const SCAN_ORDER: [RuleId; 7] = [RuleId::I, RuleId::II, RuleId::VIII, RuleId::XA, RuleId::XB, RuleId::XC, RuleId::IX];

/// A simple 4-face with degrees 3,4,3,4 around it, labelled b1 (a 3-vertex)
/// through b4 along the boundary; returned in recipe rank order b1, b3, b2, b4.
fn label_3434_face(g: &Graph, f: &Face) -> Option<Vec<Vertex>> {
    if f.size() != 4 || !f.is_simple() || !is_face_type(g, f, &[3, 4, 3, 4]) {
        return None;
    }
    let vs = f.vertices();
    let s = if g.degree(vs[0]) == 3 { 0 } else { 1 };
    let b = |i: usize| vs[(s + i) % 4];
    Some(vec![b(0), b(2), b(1), b(3)])
}

/// Boundary of `f` read as [o, h, x1, x2, x3], if `f` is simple and `o h` is
/// one of its edges.
fn pentagon_from(f: &Face, o: Vertex, h: Vertex) -> Option<[Vertex; 5]> {
    if !f.is_simple() {
        return None;
    }
    let vs = f.vertices();
    let n = vs.len();
    let i = vs.iter().position(|&v| v == o)?;
    let forward = vs[(i + 1) % n] == h;
    let backward = vs[(i + n - 1) % n] == h;
    let at = |k: usize| if forward { vs[(i + k) % n] } else { vs[(i + n - k) % n] };
    (forward || backward).then(|| [at(0), at(1), at(2), at(3), at(4)])
}

/// Labels the three faces around a light 3-vertex `o` and picks the panel that
/// fits the degree pattern of L1, L2, R1, R2.
fn label_light_vertex(eg: &EmbeddedGraph, faces: &FaceSet, o: Vertex) -> Option<(usize, Vec<Vertex>)> {
    let g = eg.graph();
    let corners: Vec<&Face> = faces.corners(eg, o).collect();
    let quad = corners.iter().find(|f| is_face_type(g, f, &[3, 4, 4, 4]) && f.is_simple())?;
    let mut pentagons: Vec<&Face> = corners.iter().filter(|f| is_face_type(g, f, &[3, 4, 3, 4, 4])).copied().collect();
    pentagons.sort_by_key(|f| f.id());
    pentagons.dedup_by_key(|f| f.id());
    if pentagons.len() != 2 {
        return None;
    }
    let qv = quad.vertices();
    let i = qv.iter().position(|&v| v == o)?;
    let (q_prev, b, q_next) = (qv[(i + 3) % 4], qv[(i + 2) % 4], qv[(i + 1) % 4]);
    let h = g.neighbors(o).find(|&u| u != q_prev && u != q_next)?;
    let p0 = pentagon_from(pentagons[0], o, h)?;
    let p1 = pentagon_from(pentagons[1], o, h)?;
    let ix = rule_by_id(RuleId::IX);

    for (left, right) in [(p0, p1), (p1, p0)] {
        let [_, _, l1, l2, l3] = left;
        let [_, _, r1, r2, r3] = right;
        let sides: BTreeSet<Vertex> = [l3, r3].into();
        if sides != BTreeSet::from([q_prev, q_next]) {
            continue;
        }
        let deg = |v: Vertex| g.degree(v);
        let role_map: BTreeMap<&str, Vertex> = [
            ("O", o),
            ("H", h),
            ("B", b),
            ("L1", l1),
            ("L2", l2),
            ("L3", l3),
            ("R1", r1),
            ("R2", r2),
            ("R3", r3),
            ("LR2", l2),
        ]
        .into();
        let distinct: BTreeSet<Vertex> = [o, h, b, l1, l2, l3, r1, r2, r3].into();
        let panel = if distinct.len() == 9 {
            match (deg(l1), deg(l2), deg(r1), deg(r2)) {
                (3, 4, 3, 4) => 0,
                (4, 3, 4, 3) => 1,
                (3, 4, 4, 3) => 2,
                _ => continue,
            }
        } else if distinct.len() == 8 && l2 == r2 && deg(l1) == 3 && deg(r1) == 3 {
            3
        } else {
            continue;
        };
        let recipe = &ix.recipes[panel];
        let labeling: Vec<Vertex> = recipe.roles.iter().map(|r| role_map[r]).collect();
        if recipe.check(g, &labeling).is_ok() {
            return Some((panel, labeling));
        }
    }
    None
}

/// First match in `SCAN_ORDER`.
pub fn find_reduction(eg: &EmbeddedGraph) -> Option<ReductionMatch> {
    let faces = eg.faces();
    SCAN_ORDER.iter().find_map(|&id| rule_by_id(id).find(eg, &faces))
}

/// Deletes `X`. Fails when the match no longer holds in `eg`.
pub fn apply_reduction(eg: &EmbeddedGraph, m: &ReductionMatch) -> Result<EmbeddedGraph> {
    m.recipe()
        .check(eg.graph(), &m.vertices())
        .map_err(|reason| Error::StaleMatch { rule: m.rule.to_string(), reason })?;
    eg.delete_vertices(&m.x())
}

/// Extends a (2,1)-decomposition of `eg - X` over `X` and verifies the result.
///
/// Only the labelled skeleton is required to be present; degree marks are not
/// re-checked here, since the final verification decides.
pub fn extend_decomposition(eg: &EmbeddedGraph, m: &ReductionMatch, sub: &Decomposition) -> Result<Decomposition> {
    let g = eg.graph();
    let recipe = m.recipe();
    let host = m.vertices();
    recipe
        .check_structure(g, &host)
        .map_err(|reason| Error::StaleMatch { rule: m.rule.to_string(), reason })?;
    let rank: BTreeMap<Vertex, usize> = host.iter().enumerate().map(|(i, &v)| (v, i)).collect();

    let mut dec = sub.clone();
    dec.d = 2;
    dec.h = 1;
    for &(a, b) in &recipe.h_edges {
        dec.h_edges.insert(Edge::new(host[a], host[b]));
    }
    let drawn: BTreeMap<Edge, Arc> =
        recipe.arcs.iter().map(|&(a, b)| (Edge::new(host[a], host[b]), Arc::new(host[a], host[b]))).collect();

    for &v in &host {
        for u in g.neighbors(v) {
            let e = Edge::new(v, u);
            if dec.h_edges.contains(&e) {
                continue;
            }
            let arc = match rank.get(&u) {
                None => Arc::new(v, u),
                Some(&ru) if rank[&v] < ru => drawn.get(&e).copied().unwrap_or(Arc::new(v, u)),
                Some(_) => continue,
            };
            dec.orientation.insert(arc)?;
        }
    }

    let verdict = verify_decomposition(g, &dec)?;
    match verdict.first() {
        None => Ok(dec),
        Some(v) => Err(Error::ExtensionFailed { rule: recipe.name.to_string(), violation: v.to_string() }),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum TraceStep {
    Reduction { rule: RuleId, recipe: &'static str, labeling: Vec<(&'static str, Vertex)> },
    /// The exhaustive solver finished an irreducible remainder.
    Fallback { vertices: Vec<Vertex>, edges: usize },
}

#[derive(Debug, Clone)]
pub struct Constructive {
    pub decomposition: Decomposition,
    pub trace: Vec<TraceStep>,
}

impl Constructive {
    pub fn used_fallback(&self) -> bool {
        self.trace.iter().any(|s| matches!(s, TraceStep::Fallback { .. }))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    /// Hand irreducible remainders with at most this many edges to the exact
    /// solver; `None` disables the fallback.
    pub fallback_edge_limit: Option<usize>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { fallback_edge_limit: Some(20) }
    }
}

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("input contains forbidden configuration {}", .0.name)]
    Forbidden(CatalogWitness),
    #[error("no reduction rule applies to a remainder with {} vertices and {} edges", .0.graph().vertex_count(), .0.graph().edge_count())]
    Stuck(EmbeddedGraph),
    #[error("remainder with {} vertices has no (2,1)-decomposition, so neither has the input", .0.graph().vertex_count())]
    NotDecomposable(EmbeddedGraph),
    #[error(transparent)]
    Core(#[from] Error),
}

/// Reduce to the empty graph (or a small irreducible remainder), then extend
/// back level by level.
pub fn solve_constructive(eg: &EmbeddedGraph, options: SolveOptions) -> std::result::Result<Constructive, SolveError> {
    if let Some(w) = forbidden_witness(eg.graph()) {
        return Err(SolveError::Forbidden(w));
    }
    let mut levels: Vec<(EmbeddedGraph, ReductionMatch)> = Vec::new();
    let mut trace = Vec::new();
    let mut current = eg.clone();
    let mut base = Decomposition::empty(2, 1);
    while !current.graph().is_empty() {
        match find_reduction(&current) {
            Some(m) => {
                let next = apply_reduction(&current, &m)?;
                trace.push(TraceStep::Reduction { rule: m.rule, recipe: m.recipe().name, labeling: m.labeling.clone() });
                levels.push((std::mem::replace(&mut current, next), m));
            }
            None => {
                let edges = current.graph().edge_count();
                match options.fallback_edge_limit {
                    Some(limit) if edges <= limit => {
                        base = solve_exact(current.graph(), 2, 1).ok_or_else(|| SolveError::NotDecomposable(current.clone()))?;
                        trace.push(TraceStep::Fallback { vertices: current.graph().vertices().collect(), edges });
                        break;
                    }
                    _ => return Err(SolveError::Stuck(current)),
                }
            }
        }
    }
    let decomposition = levels
        .iter()
        .rev()
        .try_fold(base, |sub, (level, m)| extend_decomposition(level, m, &sub))?;
    debug_assert!(verify_decomposition(eg.graph(), &decomposition).map(|v| v.is_valid()).unwrap_or(false));
    Ok(Constructive { decomposition, trace })
}
