//! Averaged bipartite entanglement of multi-qubit pure states, with a
//! focus on graph states.
//!
//! The central quantity is a family of measures `Q_m`: for an `n`-qubit
//! pure state, `Q_m` averages the linear entropy of every size-`m`
//! marginal and rescales it so the maximum attainable value is 1. Sizes
//! are meaningful up to `floor(n/2)`; larger sizes carry no new
//! information for pure states and are only evaluated on request, tagged
//! with the exact proportionality constant that relates them to their
//! complement.
//!
//! Two purity engines back the measures:
//!
//! * a dense engine that builds the full state vector and contracts
//!   marginals numerically, usable on any pure state up to 14 qubits;
//! * an exact engine for graph states that reads each marginal purity
//!   off the binary rank of a cut submatrix of the adjacency matrix, so
//!   every purity is a dyadic rational and every `Q_m` an exact fraction.
//!
//! Running both cross-checks them against each other; disagreement is an
//! error, never silently resolved.
//!
//! Graphs parse from a human-readable edge list (`"4: 1-2, 2-3"`) or
//! from graph6 strings, and can be enumerated exhaustively (optionally
//! connected-only or one representative per isomorphism class). On top
//! of that sit searches for states whose small marginals are all
//! maximally mixed, and a reference six-qubit state with that property
//! reproduced exactly as a graph state.
//!
//! The `scottq` binary exposes all of this on the command line with
//! stable JSON, CSV, and text output.

pub mod cli;
pub mod error;
pub mod graph;
pub mod measures;
pub mod report;
pub mod stab;
pub mod state;
pub mod subset;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{enumerate_graphs, Graph};
pub use measures::{
    complement_ratio, meyer_wallach, q_m, q_profile, validate_m, Engine, MAuthorization,
    ProfileSource, QmReport, QmRequest, Ratio,
};
pub use stab::{cut_rank, find_ame_graphs, is_ame, match_gstar, purity_exact, DyadicPurity};
pub use state::{
    graph_state, gstar_state, plus_state, random_local_unitary, random_state, LocalUnitary,
    PureState,
};
pub use subset::SubsetMask;
pub use verify::{all_passed, run_claims, ClaimRecord, ClaimStatus};
