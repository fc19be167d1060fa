use thiserror::Error;

use crate::graph::{EdgeId, VertexId};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range (graph has {vertex_count} vertices)")]
    VertexOutOfRange {
        vertex: VertexId,
        vertex_count: usize,
    },

    #[error("unknown edge id {0}")]
    UnknownEdge(EdgeId),

    #[error("{0} vertex set is empty")]
    EmptyVertexSet(&'static str),

    #[error("source and sink sets share vertex {0}")]
    Overlap(VertexId),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{0}")]
    Input(String),

    /// A separator budget above the configured hard limit.
    #[error("budget {requested} exceeds the hard limit {limit}")]
    Budget { requested: usize, limit: usize },

    /// Exhaustive search refused because the instance is too large.
    #[error("instance too large for exhaustive search: {0}")]
    Size(String),

    /// The query lies outside what the certificate guarantees.
    #[error("{0}")]
    Contract(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

/// Coarse classification used by the CLI to pick an exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Input,
    Budget,
    Internal,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Budget { .. } | Error::Size(_) => ErrorKind::Budget,
            Error::Invariant(_) => ErrorKind::Internal,
            _ => ErrorKind::Input,
        }
    }
}
