//! Estimate the global centrality rank of a single node in a large
//! undirected network without computing the centrality of every node.
//!
//! The exact rank of a node under a centrality measure is one plus the
//! number of nodes with a strictly greater value, which classically costs a
//! full pass over the network — Θ(n·m) for closeness. This crate provides
//! that exact baseline plus three families of estimators that avoid it:
//!
//! - [`powerlaw`]: O(1) degree-rank closed forms from fitted power-law
//!   degree-distribution parameters;
//! - [`sampling`]: degree-rank extrapolation from uniform samples,
//!   Metropolis–Hastings crawls or re-weighted random walks, behind a
//!   capability-restricted access layer;
//! - [`sigmoid`]: closeness-rank estimation from a logistic reverse-rank
//!   curve whose parameters come from exactly three BFS traversals.
//!
//! [`graph`] holds the shared representation and generators, [`exact`] the
//! ground-truth oracles, and [`eval`] a seeded harness that reproduces
//! absolute-error-versus-rank experiments as CSV.

pub mod error;
pub mod estimate;
pub mod eval;
pub mod exact;
pub mod generate;
pub mod graph;
pub mod powerlaw;
pub mod sampling;
pub mod sigmoid;
pub mod stats;

pub use error::{Error, Result};
pub use estimate::{Method, NetworkParams, ParameterSource, RankEstimate};
pub use graph::{DegreeStats, Graph, NodeId};
