//! Sparse fault-tolerant single-source reachability certificates for
//! directed graphs, built from important separators, together with
//! brute-force oracles that check every guarantee on small instances.

pub mod error;
pub mod flow;
pub mod ftrs;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod separators;
pub mod split;

pub use error::{Error, ErrorKind, Result};
pub use flow::{max_flow_bounded, BoundedFlow, ResidualSides};
pub use ftrs::{
    alpha, build_ftrs, build_ftrs_with_threshold, build_lambda_ftrs, delete_candidate, BuildParams,
    BuildStats, Deletion, DeletionReason, FaultMode, FaultSet, FtrsResult,
};
pub use graph::{normalize, reachable_set, Digraph, Edge, EdgeId, EdgeSet, VertexId, VertexSet};
pub use io::{gen_random, parse_graph, serialize_graph, GenSpec, Model, ParsedGraph};
pub use separators::{
    dominates, enumerate_important, enumerate_important_with_limit, furthest_min_cut, min_cut,
    ImportantFamily, Separator, DEFAULT_BUDGET_LIMIT,
};
pub use split::{split_vertices, SplitMap, SplitVertex};
