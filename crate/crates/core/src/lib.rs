//! Iterative potential-neutralization engine for shortest paths with
//! negative edge weights, plus the instrumentation used to study how many
//! iterations it needs.
//!
//! The engine repeatedly computes, for every vertex v, the minimum weight
//! eta(v) of a path ending at v whose negative edges all precede its
//! positive edges ("nbp" order), then reweights the graph by that potential.
//! Each round is near-linear; the open question is how many rounds it takes.
//! [`family`] provides instances answering that: graphs forcing a linear
//! number of rounds, paths forcing a logarithmic number, and benign ones.
//!
//! Module map:
//! - [`graph`]: graph storage, potentials, reduced weights;
//! - [`io`]: DIMACS-style parse/serialize;
//! - [`engine`]: eta computation, the iteration loop, traces, SSSP on top;
//! - [`baseline`]: Bellman-Ford, Dijkstra, Johnson potentials for
//!   cross-checking;
//! - [`snake`]: negative-edge-with-zero-tail structures tracked per
//!   iteration;
//! - [`seq`]: weight-sequence views of path graphs (contraction, negative
//!   segments);
//! - [`family`]: instance generators and their closed-form oracles.

pub mod baseline;
pub mod engine;
pub mod error;
pub mod family;
pub mod graph;
pub mod io;
pub mod seq;
pub mod snake;

pub use baseline::{bellman_ford, dijkstra, johnson_potential, DistanceArray};
pub use engine::{
    compute_eta, default_max_iters, nbp_decomposition, run_to_fixpoint, sssp, sssp_with_limit,
    EtaResult, IterationRecord, IterationTrace, NbpDecomposition, RecordOptions,
};
pub use error::{Error, Result};
pub use family::{
    gen_alternating_path, gen_gn, gen_hard_path, gen_random_graph, gn_closed_form_eta,
    gn_closed_form_reduced, verify_gn, GnLayout, GnMismatch, GN_MAX_N, HARD_PATH_MAX_S,
};
pub use graph::{
    is_neutralizing, is_valid_potential, reduce_weights, reduced_weight, Edge, EdgeFilter, EdgeId,
    Graph, Potential, SubgraphView, VertexId,
};
pub use io::{parse_graph, serialize_graph};
pub use seq::{
    analyze_neg_segments, contract_sequence, path_graph_to_seq, seq_to_path_graph,
    NegSegmentAnalysis, WeightSeq,
};
pub use snake::{enumerate_snakes, min_snake_length, Snake, SnakeEnumeration, DEFAULT_SNAKE_LIMIT};
