use thiserror::Error;

use crate::graph::{Path, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(Vertex),
    #[error("edge {0}-{1} is not in the graph")]
    MissingEdge(Vertex, Vertex),
    #[error("invalid path {path:?}: {reason}")]
    InvalidPath { path: Vec<Vertex>, reason: String },
    #[error("invalid separation: {0}")]
    InvalidSeparation(String),
    #[error("graph carries no edge labels")]
    MissingLabels,
    #[error("label {value} on edge {u}-{v} is outside Z_{modulus}")]
    LabelOutOfRange { u: Vertex, v: Vertex, value: u32, modulus: u32 },
    #[error("invalid residue spec: residue {residue} modulo {modulus}")]
    InvalidResidue { modulus: u32, residue: u32 },
    #[error("path enumeration exceeded the cap of {cap} paths")]
    EnumerationOverflow { cap: usize },
    #[error("vertex set {0:?} is not a block of the graph")]
    NotABlock(Vec<Vertex>),
    #[error("graph is not bipartite: {0}")]
    NotBipartite(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("precondition violated by path {witness:?}: {reason}")]
    PreconditionWitness { reason: String, witness: Path },
    #[error("invalid wall: {0}")]
    InvalidWall(String),
    #[error("subwall window is not contiguous: {0}")]
    NonContiguousWindow(String),
    #[error("invalid linkage: {0}")]
    InvalidLinkage(String),
    #[error("separation of order {order} is too large for a tangle of order {limit}")]
    OrderTooLarge { order: usize, limit: usize },
    #[error("instance too large for exhaustive search: {0}")]
    TooLarge(String),
    #[error("tangle invariant violated: {0}")]
    TangleViolation(String),
    #[error("invalid windmill: {0}")]
    InvalidWindmill(String),
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("internal invariant broken: {0}")]
    Internal(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
