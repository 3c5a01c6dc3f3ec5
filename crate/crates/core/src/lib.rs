//! (d,h)-decompositions of graphs embedded by rotation systems.
//!
//! A (d,h)-decomposition of `G` is a subgraph `H` with maximum degree at most
//! `h` together with an acyclic orientation of `G - E(H)` whose out-degrees are
//! at most `d`. The crate provides:
//!
//! * rotation-system embeddings, face tracing and Euler characteristics;
//! * degree-constrained subgraph matching with the forbidden and reducible
//!   configuration catalogs;
//! * degeneracy, bounded acyclic orientations and an exhaustive decomposition
//!   solver;
//! * a constructive (2,1)-decomposition solver built from reductions and
//!   extension recipes;
//! * a discharging engine with exact rational charges and a structural audit.

pub mod audit;
pub mod decomp;
pub mod degeneracy;
pub mod discharge;
pub mod embedding;
pub mod error;
pub mod format;
pub mod generators;
pub mod graph;
pub mod patterns;
pub mod reductions;

pub use decomp::{decomposable_21, solve_exact, verify_decomposition, Decomposition};
pub use degeneracy::{degeneracy, is_d_degenerate, orient_bounded, verify_orientation, Arc, Orientation};
pub use embedding::{euler_characteristic, face_trace, Dart, EmbeddedGraph, Face, FaceId};
pub use error::{Error, Result};
pub use graph::{Edge, Graph, Vertex};
