use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("loop at vertex {vertex}")]
    Loop { vertex: usize },

    #[error("parallel edge {u}-{v}")]
    ParallelEdge { u: usize, v: usize },

    #[error("vertex {vertex} out of range for a graph on {vertex_count} vertices")]
    InvalidVertex { vertex: usize, vertex_count: usize },

    #[error("edge {u}-{v} is not in the graph")]
    MissingEdge { u: usize, v: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("arity mismatch: expected {expected} variables, got {found}")]
    Arity { expected: usize, found: usize },

    #[error("colouring does not match the graph: {0}")]
    ColouringMismatch(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A search that is guaranteed to succeed came back empty.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}
