use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Failures of the algorithms in this crate.
///
/// [`Error::InternalInconsistency`] is special: it is raised when a
/// postcondition that the underlying combinatorics guarantees does not hold.
/// It signals an implementation bug (or a counterexample to a theorem), never
/// bad input.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for a digraph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("loop at vertex {0}")]
    Loop(usize),

    #[error("duplicate arc {0} -> {1}")]
    DuplicateArc(usize, usize),

    #[error("digon between {0} and {1} in an oriented digraph")]
    Digon(usize, usize),

    #[error("cannot contract: vertex {0} has arcs to and from the contracted set")]
    NotContractable(usize),

    #[error("contracted set is empty")]
    EmptyContraction,

    #[error("digraph is not strongly connected")]
    NotStronglyConnected,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}
