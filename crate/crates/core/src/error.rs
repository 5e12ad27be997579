use thiserror::Error;

use crate::graph::EdgeId;

/// Errors shared across the library.
///
/// All weight arithmetic is checked; anything that would leave the 64-bit
/// signed range surfaces as [`Error::Overflow`] instead of wrapping.
#[derive(Error, Debug)]
pub enum Error {
    #[error("arithmetic overflow: {0}")]
    Overflow(&'static str),

    /// A negative-total cycle was found. `witness` lists edge indices that
    /// form a closed walk of strictly negative total weight.
    #[error("negative cycle detected (witness: {witness:?})")]
    NegativeCycle { witness: Vec<EdgeId> },

    /// The iteration cap was exhausted while strictly negative edges remained.
    #[error(
        "iteration limit of {max_iters} reached with {negative_edges} negative edges remaining"
    )]
    IterationLimit {
        max_iters: usize,
        negative_edges: usize,
    },

    /// The zero-weight edge subgraph contains a cycle; snake statistics are
    /// undefined on such inputs. `witness` lists the zero edges of one cycle.
    #[error("zero-weight cycle detected (witness: {witness:?})")]
    ZeroCycle { witness: Vec<EdgeId> },

    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },

    #[error("{0}")]
    Range(String),

    #[error("{0}")]
    Precondition(String),

    /// The graph does not have the shape required by the operation
    /// (e.g. a path graph in vertex-id order).
    #[error("{0}")]
    Shape(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
