//! Steiner Orientation on mixed graphs.
//!
//! Given a mixed graph `G = (V, E, A)` with undirected edges `E`, arcs `A` and
//! a list of terminal pairs `(s, t)`, decide whether the edges can be oriented
//! so that every `t` becomes reachable from its `s`.
//!
//! The crate is organised bottom-up:
//!
//! - [`mixed_graph`]: the data model, the text file format and witness checking.
//! - [`graph_kit`]: SCC, reachability, matching, 2-SAT and vertex cover.
//! - [`preprocess`]: answer-preserving reductions with witness lifting.
//! - [`solvers`]: brute force, the restricted 2-SAT case, branching on arcs,
//!   the clique-modulator algorithm, the vertex-cover XP algorithm and MSO2 emission.
//! - [`kernel`]: the matching-based polynomial kernel and the type-based exponential kernel.
//! - [`generators`]: reductions from SAT / multicolored clique and random instances.
//! - [`cli`]: the `steiner` command line front end.

pub mod cli;
pub mod error;
pub mod generators;
pub mod graph_kit;
pub mod kernel;
pub mod mixed_graph;
pub mod preprocess;
pub mod solvers;

pub use error::{Error, Result};
pub use mixed_graph::{
    check_orientation, parse_instance, serialize_instance, underlying_graph, Instance, MixedGraph,
    Orientation, TerminalPair, Verdict, VertexId,
};
