use thiserror::Error;

use crate::graph::{Edge, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {0} does not exist")]
    UnknownVertex(Vertex),
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("rotation at vertex {vertex} is not a permutation of its neighbours: {reason}")]
    InvalidRotation { vertex: Vertex, reason: String },
    #[error("edge {0} is not an edge of the graph")]
    EdgeNotInGraph(Edge),
    #[error("edge {0} is oriented more than once")]
    DuplicateArc(Edge),
    #[error("orientation edge set differs from the graph edge set")]
    EdgeMismatch,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is empty")]
    EmptyGraph,
    #[error("cycle length must be at least 3, got {0}")]
    CycleLengthTooSmall(usize),
    #[error("generator parameter out of range: {0}")]
    InvalidGenerator(String),
    #[error("reduction match for rule {rule} no longer holds: {reason}")]
    StaleMatch { rule: String, reason: String },
    #[error("extension by rule {rule} failed verification: {violation}")]
    ExtensionFailed { rule: String, violation: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
