//! Embedded test families: torus grids, honeycomb tori, cycles, complete graphs
//! and seeded random rotation systems.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::embedding::EmbeddedGraph;
use crate::error::{Error, Result};
use crate::graph::Vertex;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum GeneratorSpec {
    /// m x n quadrangulation of the torus; 4-regular.
    TorusGrid { m: usize, n: usize },
    /// Hexagonal tiling of the torus with m x n hexagons; 3-regular, girth 6.
    HoneycombTorus { m: usize, n: usize },
    /// G(n, p) with p = avg_degree / (n - 1) and uniformly shuffled rotations.
    RandomRotation { n: usize, avg_degree: f64, seed: u64 },
    Cycle { n: usize },
    Complete { n: usize },
}

impl GeneratorSpec {
    pub fn seed(&self) -> Option<u64> {
        match self {
            GeneratorSpec::RandomRotation { seed, .. } => Some(*seed),
            _ => None,
        }
    }
}

pub fn generate(spec: &GeneratorSpec) -> Result<EmbeddedGraph> {
    match *spec {
        GeneratorSpec::TorusGrid { m, n } => torus_grid(m, n),
        GeneratorSpec::HoneycombTorus { m, n } => honeycomb_torus(m, n),
        GeneratorSpec::RandomRotation { n, avg_degree, seed } => random_rotation(n, avg_degree, seed),
        GeneratorSpec::Cycle { n } => cycle(n),
        GeneratorSpec::Complete { n } => complete(n),
    }
}

fn check_torus_dims(m: usize, n: usize) -> Result<()> {
    if m < 3 || n < 3 {
        return Err(Error::InvalidGenerator(format!("torus dimensions must be at least 3, got {m}x{n}")));
    }
    Ok(())
}

fn build(rotation: BTreeMap<u32, Vec<u32>>) -> Result<EmbeddedGraph> {
    EmbeddedGraph::new(
        rotation
            .into_iter()
            .map(|(v, ns)| (Vertex(v), ns.into_iter().map(Vertex).collect()))
            .collect(),
    )
}

/// Vertex `(i, j)` has id `i * n + j`; rotation is N, E, S, W.
pub fn torus_grid(m: usize, n: usize) -> Result<EmbeddedGraph> {
    check_torus_dims(m, n)?;
    let id = |i: usize, j: usize| ((i % m) * n + (j % n)) as u32;
    let mut rotation = BTreeMap::new();
    for i in 0..m {
        for j in 0..n {
            let north = id(i + m - 1, j);
            let east = id(i, j + 1);
            let south = id(i + 1, j);
            let west = id(i, j + n - 1);
            rotation.insert(id(i, j), vec![north, east, south, west]);
        }
    }
    build(rotation)
}

/// Cell `(i, j)` owns a white vertex `2(i n + j)` and a black vertex one above it.
/// White vertices see black neighbours at -30, 90 and 210 degrees; black vertices
/// see white neighbours at 30, 150 and 270 degrees. Both rotations are
/// counter-clockwise, so every face is a hexagon.
pub fn honeycomb_torus(m: usize, n: usize) -> Result<EmbeddedGraph> {
    check_torus_dims(m, n)?;
    let cell = |i: usize, j: usize| ((i % m) * n + (j % n)) as u32;
    let white = |i: usize, j: usize| 2 * cell(i, j);
    let black = |i: usize, j: usize| 2 * cell(i, j) + 1;
    let mut rotation = BTreeMap::new();
    for i in 0..m {
        for j in 0..n {
            rotation.insert(white(i, j), vec![black(i + 1, j + n - 1), black(i, j), black(i, j + n - 1)]);
            rotation.insert(black(i, j), vec![white(i, j + 1), white(i + m - 1, j + 1), white(i, j)]);
        }
    }
    build(rotation)
}

pub fn cycle(n: usize) -> Result<EmbeddedGraph> {
    if n < 3 {
        return Err(Error::InvalidGenerator(format!("cycle length must be at least 3, got {n}")));
    }
    let n32 = n as u32;
    build((0..n32).map(|v| (v, vec![(v + n32 - 1) % n32, (v + 1) % n32])).collect())
}

/// Vertex 0 at the centre, the rest on a regular polygon; rotations follow the
/// straight-line drawing, which is planar for `n <= 4`.
pub fn complete(n: usize) -> Result<EmbeddedGraph> {
    if n == 0 {
        return Err(Error::InvalidGenerator("complete graph needs at least one vertex".into()));
    }
    let mut positions = BTreeMap::new();
    positions.insert(Vertex(0), (0.0, 0.0));
    let outer = n - 1;
    for k in 1..n {
        let angle = PI / 2.0 + 2.0 * PI * (k - 1) as f64 / outer as f64;
        positions.insert(Vertex(k as u32), (angle.cos(), angle.sin()));
    }
    let mut edges = Vec::new();
    for a in 0..n as u32 {
        for b in a + 1..n as u32 {
            edges.push((Vertex(a), Vertex(b)));
        }
    }
    EmbeddedGraph::from_positions(&positions, &edges)
}

pub fn random_rotation(n: usize, avg_degree: f64, seed: u64) -> Result<EmbeddedGraph> {
    if n == 0 {
        return Err(Error::InvalidGenerator("random graph needs at least one vertex".into()));
    }
    if avg_degree.is_nan() || avg_degree < 0.0 {
        return Err(Error::InvalidGenerator(format!("average degree must be non-negative, got {avg_degree}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = if n > 1 { (avg_degree / (n - 1) as f64).min(1.0) } else { 0.0 };
    let mut rotation: BTreeMap<u32, Vec<u32>> = (0..n as u32).map(|v| (v, Vec::new())).collect();
    for a in 0..n as u32 {
        for b in a + 1..n as u32 {
            if rng.gen_bool(p) {
                rotation.get_mut(&a).unwrap().push(b);
                rotation.get_mut(&b).unwrap().push(a);
            }
        }
    }
    for ns in rotation.values_mut() {
        ns.shuffle(&mut rng);
    }
    build(rotation)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::{euler_characteristic, face_trace};

    #[test]
    fn torus_grid_counts() {
        let eg = torus_grid(3, 3).unwrap();
        assert_eq!(eg.graph().vertex_count(), 9);
        assert_eq!(eg.graph().edge_count(), 18);
        assert_eq!(face_trace(&eg).len(), 9);
        assert!(eg.graph().vertices().all(|v| eg.graph().degree(v) == 4));
    }

    #[test]
    fn honeycomb_counts() {
        let eg = honeycomb_torus(3, 3).unwrap();
        assert_eq!(eg.graph().vertex_count(), 18);
        assert_eq!(eg.graph().edge_count(), 27);
        let faces = face_trace(&eg);
        assert_eq!(faces.len(), 9);
        assert!(faces.iter().all(|f| f.size() == 6 && f.is_simple()));
        assert_eq!(euler_characteristic(&eg), Ok(0));
    }

    #[test]
    fn non_square_tori() {
        for (m, n) in [(3, 5), (4, 3), (6, 4)] {
            let g = torus_grid(m, n).unwrap();
            assert_eq!(euler_characteristic(&g), Ok(0));
            let h = honeycomb_torus(m, n).unwrap();
            assert_eq!(euler_characteristic(&h), Ok(0));
            assert_eq!(h.graph().vertex_count(), 2 * m * n);
        }
    }

    #[test]
    fn small_tori_rejected() {
        assert!(matches!(torus_grid(2, 5), Err(Error::InvalidGenerator(_))));
        assert!(matches!(honeycomb_torus(3, 2), Err(Error::InvalidGenerator(_))));
        assert!(matches!(cycle(2), Err(Error::InvalidGenerator(_))));
    }

    #[test]
    fn cycle_on_the_sphere() {
        let eg = cycle(5).unwrap();
        let faces = face_trace(&eg);
        assert_eq!(faces.len(), 2);
        assert!(faces.iter().all(|f| f.size() == 5));
    }

    #[test]
    fn small_complete_graphs_are_planar() {
        for n in 1..=4 {
            assert_eq!(euler_characteristic(&complete(n).unwrap()), Ok(2), "K{n}");
        }
    }

    #[test]
    fn random_rotation_is_deterministic() {
        let a = random_rotation(30, 4.0, 7).unwrap();
        let b = random_rotation(30, 4.0, 7).unwrap();
        let c = random_rotation(30, 4.0, 8).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}
