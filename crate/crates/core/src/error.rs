//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("vertex {v} out of range for graph on {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("self-loop at vertex {0} not allowed in a simple graph")]
    Loop(usize),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("graph is not {k}-regular (vertex {v} has degree {degree})")]
    NotRegular { k: usize, v: usize, degree: usize },
    #[error("bipartite parts differ: {n_inputs} inputs vs {n_outputs} outputs")]
    PartMismatch { n_inputs: usize, n_outputs: usize },
    #[error("instance too large for exhaustive scan: {n} > {max}")]
    TooLarge { n: usize, max: usize },
    #[error("no graph exists for these parameters: {0}")]
    Existence(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("expansion certificate failure: constant {got} below required {needed}")]
    InsufficientExpansion { got: String, needed: String },
    #[error("matrix is not symmetric at ({i},{j})")]
    NotSymmetric { i: usize, j: usize },
    #[error("graph is disconnected; component {0:?} is isolated from the rest")]
    Disconnected(Vec<usize>),
    #[error("diameter {diameter} too small: need at least {needed}")]
    DiameterTooSmall { diameter: usize, needed: usize },
    #[error("group closure exceeded cap of {0} elements")]
    CapExceeded(usize),
    #[error("division by zero quaternion")]
    ZeroDivision,
    #[error("{0}")]
    Unsupported(String),
}
