//! Brute-force oracles and host builders shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;

use dhdecomp::decomp::Decomposition;
use dhdecomp::patterns::{DegreeConstraint, Pattern};
use dhdecomp::reductions::{rule_by_id, ReductionMatch, RuleId};
use dhdecomp::{Arc, EmbeddedGraph, Graph, Orientation, Vertex};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn v(x: u32) -> Vertex {
    Vertex(x)
}

/// All graphs on `0..n` whose edge set is a subset of K_n, by bitmask.
pub fn all_graphs(n: u32) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(u32, u32)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let edges: Vec<(u32, u32)> =
            pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
        Graph::from_edges(n, &edges).unwrap()
    })
}

/// Largest minimum degree over all non-empty vertex subsets.
pub fn degeneracy_oracle(g: &Graph) -> usize {
    let vs: Vec<Vertex> = g.vertices().collect();
    assert!(vs.len() <= 16);
    let mut best = 0;
    for mask in 1u32..1 << vs.len() {
        let inside = |u: &Vertex| vs.iter().position(|x| x == u).is_some_and(|i| mask >> i & 1 == 1);
        let min = (0..vs.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| g.neighbors(vs[i]).filter(inside).count())
            .min()
            .unwrap();
        best = best.max(min);
    }
    best
}

/// All matchings of `g`, as edge lists.
pub fn matchings(g: &Graph) -> Vec<Vec<(Vertex, Vertex)>> {
    fn go(edges: &[(Vertex, Vertex)], used: &mut BTreeSet<Vertex>, cur: &mut Vec<(Vertex, Vertex)>, out: &mut Vec<Vec<(Vertex, Vertex)>>) {
        let Some((&(a, b), rest)) = edges.split_first() else {
            out.push(cur.clone());
            return;
        };
        go(rest, used, cur, out);
        if !used.contains(&a) && !used.contains(&b) {
            used.extend([a, b]);
            cur.push((a, b));
            go(rest, used, cur, out);
            cur.pop();
            used.remove(&a);
            used.remove(&b);
        }
    }
    let edges: Vec<(Vertex, Vertex)> = g.edges().map(|e| e.endpoints()).collect();
    let mut out = Vec::new();
    go(&edges, &mut BTreeSet::new(), &mut Vec::new(), &mut out);
    out
}

/// (d,1)-decomposability by trying every matching as H.
pub fn decomposable_d1_oracle(g: &Graph, d: usize) -> bool {
    matchings(g).iter().any(|m| {
        let mut rest = g.clone();
        for &(a, b) in m {
            rest.remove_edge(dhdecomp::Edge::new(a, b));
        }
        degeneracy_oracle(&rest) <= d
    })
}

/// Directed cycle search by DFS from every vertex.
pub fn has_directed_cycle(o: &Orientation) -> bool {
    let mut succ: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
    for a in o.arcs() {
        succ.entry(a.tail).or_default().push(a.head);
    }
    fn reaches(succ: &BTreeMap<Vertex, Vec<Vertex>>, from: Vertex, target: Vertex, seen: &mut BTreeSet<Vertex>) -> bool {
        for &n in succ.get(&from).into_iter().flatten() {
            if n == target || (seen.insert(n) && reaches(succ, n, target, seen)) {
                return true;
            }
        }
        false
    }
    succ.keys().any(|&s| reaches(&succ, s, s, &mut BTreeSet::new()))
}

/// Lexicographically smallest match by trying every injection.
pub fn naive_first_match(host: &Graph, p: &Pattern) -> Option<Vec<Vertex>> {
    fn go(host: &Graph, p: &Pattern, hv: &[Vertex], cur: &mut Vec<Vertex>) -> Option<Vec<Vertex>> {
        if cur.len() == p.len() {
            let ok = p.skeleton.edges().all(|e| host.has_edge(cur[e.lo().0 as usize], cur[e.hi().0 as usize]))
                && cur.iter().zip(&p.constraints).all(|(&v, c)| c.admits(host.degree(v)));
            return ok.then(|| cur.clone());
        }
        for &x in hv {
            if !cur.contains(&x) {
                cur.push(x);
                if let Some(m) = go(host, p, hv, cur) {
                    return Some(m);
                }
                cur.pop();
            }
        }
        None
    }
    let hv: Vec<Vertex> = host.vertices().collect();
    go(host, p, &hv, &mut Vec::new())
}

/// A stacked triangulation drawn with straight lines: each new vertex sits at
/// the centroid of a random inner triangle.
pub fn stacked_triangulation(rng: &mut impl Rng, n: usize) -> EmbeddedGraph {
    assert!(n >= 3);
    let mut pos: BTreeMap<Vertex, (f64, f64)> = BTreeMap::new();
    for k in 0..3u32 {
        let a = PI / 2.0 + 2.0 * PI * k as f64 / 3.0;
        pos.insert(v(k), (a.cos(), a.sin()));
    }
    let mut edges = vec![(v(0), v(1)), (v(1), v(2)), (v(0), v(2))];
    let mut triangles = vec![[v(0), v(1), v(2)]];
    for w in 3..n as u32 {
        let i = rng.gen_range(0..triangles.len());
        let [a, b, c] = triangles.swap_remove(i);
        let (pa, pb, pc) = (pos[&a], pos[&b], pos[&c]);
        pos.insert(v(w), ((pa.0 + pb.0 + pc.0) / 3.0, (pa.1 + pb.1 + pc.1) / 3.0));
        edges.extend([(a, v(w)), (b, v(w)), (c, v(w))]);
        triangles.extend([[a, b, v(w)], [b, c, v(w)], [a, c, v(w)]]);
    }
    EmbeddedGraph::from_positions(&pos, &edges).unwrap()
}

pub struct ExtensionCase {
    pub host: EmbeddedGraph,
    pub matched: ReductionMatch,
    pub exterior: Decomposition,
    pub x: BTreeSet<Vertex>,
}

/// A host made of the recipe's configuration `X` (vertices `0..k`) and a random
/// exterior with a random (2,1)-decomposition: a DAG of out-degree at most 2
/// plus a matching. Missing degree at `X` is filled by edges to the exterior
/// and, now and then, by extra edges inside `X`.
pub fn random_extension_case(rng: &mut impl Rng, rule: RuleId, recipe: usize) -> ExtensionCase {
    let r = &rule_by_id(rule).recipes[recipe];
    let k = r.len() as u32;
    let n_out = rng.gen_range(4..=14u32);
    let mut g = Graph::with_vertices(k + n_out);
    let outside: Vec<Vertex> = (k..k + n_out).map(Vertex).collect();

    let mut order = outside.clone();
    order.shuffle(rng);
    let mut orientation = Orientation::new();
    for (i, &t) in order.iter().enumerate() {
        let later = &order[i + 1..];
        let want = rng.gen_range(0..=2usize).min(later.len());
        for &h in later.choose_multiple(rng, want) {
            g.add_edge(t, h).unwrap();
            orientation.insert(Arc::new(t, h)).unwrap();
        }
    }
    let mut matched = BTreeSet::new();
    let mut h_edges = BTreeSet::new();
    for _ in 0..n_out {
        let (&a, &b) = (outside.choose(rng).unwrap(), outside.choose(rng).unwrap());
        if a != b && !matched.contains(&a) && !matched.contains(&b) && !g.has_edge(a, b) {
            g.add_edge(a, b).unwrap();
            matched.extend([a, b]);
            h_edges.insert(dhdecomp::Edge::new(a, b));
        }
    }

    let x: Vec<Vertex> = (0..k).map(Vertex).collect();
    for &(a, b) in &r.skeleton {
        g.add_edge(x[a], x[b]).unwrap();
    }
    let target: Vec<usize> = r
        .degrees
        .iter()
        .map(|c| match *c {
            DegreeConstraint::Exact(t) => t,
            DegreeConstraint::AtMost(t) => rng.gen_range(0..=t),
            other => panic!("recipe constraint {other:?} has no fixed target"),
        })
        .collect();
    for i in 0..x.len() {
        while g.degree(x[i]) < target[i] {
            if rng.gen_bool(0.2) {
                let partners: Vec<Vertex> = (0..x.len())
                    .filter(|&j| j != i && g.degree(x[j]) < target[j] && !g.has_edge(x[i], x[j]))
                    .map(|j| x[j])
                    .collect();
                if let Some(&p) = partners.choose(rng) {
                    g.add_edge(x[i], p).unwrap();
                    continue;
                }
            }
            let free: Vec<Vertex> = outside.iter().copied().filter(|&u| !g.has_edge(x[i], u)).collect();
            g.add_edge(x[i], *free.choose(rng).unwrap()).unwrap();
        }
    }

    ExtensionCase {
        host: EmbeddedGraph::with_sorted_rotation(&g),
        matched: ReductionMatch::new(rule, recipe, x.clone()),
        exterior: Decomposition { h_edges, orientation, d: 2, h: 1 },
        x: x.into_iter().collect(),
    }
}

/// Which degree-3 roles each light-vertex panel uses, with stub directions (in
/// degrees) for every vertex that needs edges leaving the configuration.
pub struct PanelDrawing {
    pub name: &'static str,
    pub stubs: &'static [(&'static str, &'static [f64])],
}

pub const PANEL_DRAWINGS: [PanelDrawing; 3] = [
    PanelDrawing {
        name: "IX(a)",
        stubs: &[
            ("L1", &[90.0]),
            ("R1", &[90.0]),
            ("L2", &[150.0, 210.0]),
            ("R2", &[30.0, -30.0]),
            ("L3", &[-120.0]),
            ("R3", &[-60.0]),
            ("B", &[-120.0, -60.0]),
            ("H", &[90.0]),
        ],
    },
    PanelDrawing {
        name: "IX(b)",
        stubs: &[
            ("L1", &[60.0, 120.0]),
            ("R1", &[60.0, 120.0]),
            ("L2", &[180.0]),
            ("R2", &[0.0]),
            ("L3", &[-120.0]),
            ("R3", &[-60.0]),
            ("B", &[-120.0, -60.0]),
            ("H", &[90.0]),
        ],
    },
    PanelDrawing {
        name: "IX(c)",
        stubs: &[
            ("L1", &[90.0]),
            ("R1", &[60.0, 120.0]),
            ("L2", &[150.0, 210.0]),
            ("R2", &[0.0]),
            ("L3", &[-120.0]),
            ("R3", &[-60.0]),
            ("B", &[-120.0, -60.0]),
            ("H", &[90.0]),
        ],
    },
];

/// Two regular pentagons sharing the edge O-H, with the rhombus O, R3, B, L3
/// below O. Every stub ends in a new leaf. `mirror` reflects the drawing.
pub fn light_panel_host(drawing: &PanelDrawing, mirror: bool) -> (EmbeddedGraph, BTreeMap<&'static str, Vertex>) {
    let deg = |a: f64| a.to_radians();
    let at = |c: (f64, f64), a: f64| (c.0 + deg(a).cos(), c.1 + deg(a).sin());
    let lc = at((0.0, 0.0), 144.0);
    let rc = at((0.0, 0.0), 36.0);
    let mut pos: BTreeMap<&'static str, (f64, f64)> = BTreeMap::new();
    pos.insert("O", (0.0, 0.0));
    pos.insert("H", at(lc, 36.0));
    pos.insert("L1", at(lc, 108.0));
    pos.insert("L2", at(lc, 180.0));
    pos.insert("L3", at(lc, 252.0));
    pos.insert("R1", at(rc, 72.0));
    pos.insert("R2", at(rc, 0.0));
    pos.insert("R3", at(rc, -72.0));
    pos.insert("B", (0.0, pos["L3"].1 * 2.0));
    let skeleton = [
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
    build_drawing(pos, &skeleton, drawing.stubs, mirror)
}

/// Panel (d): the pentagons share L2 = R2 = LR2.
pub fn shared_panel_host() -> (EmbeddedGraph, BTreeMap<&'static str, Vertex>) {
    let pos: BTreeMap<&'static str, (f64, f64)> = [
        ("O", (0.0, 0.0)),
        ("H", (0.0, 1.0)),
        ("L1", (-0.5, 2.0)),
        ("R1", (0.5, 2.0)),
        ("LR2", (0.0, 4.0)),
        ("L3", (-2.0, -0.5)),
        ("R3", (2.0, -0.5)),
        ("B", (0.0, -1.5)),
    ]
    .into();
    let skeleton = [
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
    let stubs: &[(&str, &[f64])] =
        &[("L1", &[-30.0]), ("R1", &[210.0]), ("H", &[90.0]), ("L3", &[-120.0]), ("R3", &[-60.0]), ("B", &[-120.0, -60.0])];
    build_drawing(pos, &skeleton, stubs, false)
}

fn build_drawing(
    pos: BTreeMap<&'static str, (f64, f64)>,
    skeleton: &[(&str, &str)],
    stubs: &[(&str, &[f64])],
    mirror: bool,
) -> (EmbeddedGraph, BTreeMap<&'static str, Vertex>) {
    let flip = |p: (f64, f64)| if mirror { (-p.0, p.1) } else { p };
    let names: BTreeMap<&'static str, Vertex> = pos.keys().enumerate().map(|(i, &r)| (r, Vertex(i as u32))).collect();
    let mut points: BTreeMap<Vertex, (f64, f64)> = pos.iter().map(|(r, &p)| (names[r], flip(p))).collect();
    let mut edges: Vec<(Vertex, Vertex)> = skeleton.iter().map(|(a, b)| (names[a], names[b])).collect();
    let mut next = names.len() as u32;
    for (role, angles) in stubs {
        let (x, y) = pos[role];
        for a in angles.iter() {
            let leaf = Vertex(next);
            next += 1;
            let r = a.to_radians();
            points.insert(leaf, flip((x + 0.5 * r.cos(), y + 0.5 * r.sin())));
            edges.push((names[role], leaf));
        }
    }
    (EmbeddedGraph::from_positions(&points, &edges).unwrap(), names)
}
