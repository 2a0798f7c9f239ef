use thiserror::Error;

use crate::graph::Vertex;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: u64, n: usize },

    #[error("self-loop on vertex {vertex}")]
    SelfLoop { vertex: Vertex },

    #[error("duplicate edge ({u}, {v})")]
    DuplicateEdge { u: Vertex, v: Vertex },

    #[error("root set is empty")]
    EmptyRoots,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("edge ({u}, {v}) of the candidate is not an edge of the host graph")]
    NotSubgraph { u: Vertex, v: Vertex },

    #[error("instance needs {vertices} vertices, above the cap of {cap}")]
    SizeCap { vertices: u128, cap: usize },

    #[error("stretch spec `{0}` needs a source set")]
    MissingSources(String),

    #[error("unknown size formula `{0}`")]
    UnknownFormula(String),

    #[error("invalid stretch spec `{0}`")]
    InvalidSpec(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
