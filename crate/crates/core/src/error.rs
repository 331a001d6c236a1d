use thiserror::Error;

use crate::basis::BasisId;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid partition {0:?}: parts must be positive and weakly decreasing")]
    InvalidPartition(Vec<usize>),

    #[error("basis `{0}` is not supported by this operation")]
    UnsupportedBasis(BasisId),

    #[error("unknown basis id `{0}`")]
    UnknownBasis(String),

    #[error("singular linear system in degree {degree}")]
    SingularSystem { degree: usize },

    #[error("family is not triangular in degree {degree}")]
    NonTriangular { degree: usize },

    #[error("inner product needs at least one exact operand")]
    NoExactOperand,

    #[error("degree cap {have} is too small, need at least {need}")]
    InsufficientCap { need: usize, have: usize },

    #[error("vertices {0} and {1} are already adjacent")]
    EdgePresent(usize, usize),

    #[error("expected two distinct vertices, got {0} twice")]
    SameVertex(usize),

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("graphs are limited to {max} vertices, got {n}")]
    TooManyVertices { n: usize, max: usize },

    #[error("vertex weights must be positive and one per vertex")]
    InvalidWeights,

    #[error("unknown graph spec `{0}`")]
    UnknownGraph(String),

    #[error("unknown poset spec `{0}`")]
    UnknownPoset(String),

    #[error("order relations contain a cycle through element {0}")]
    PosetCycle(usize),

    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    #[error("array has no flaw")]
    NoFlaw,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
