//! Shared types for rank estimators.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exact::Metric;
use crate::graph::{DegreeStats, Graph, NodeId};

/// Rank estimation method.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// Closed form from power-law degree-distribution parameters.
    Pl,
    /// Uniform node sampling.
    Us,
    /// Metropolis–Hastings random walk.
    Mh,
    /// Re-weighted random walk.
    Rw,
    /// Three-BFS logistic-curve closeness heuristic.
    ClosenessSigmoid,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Pl,
        Method::Us,
        Method::Mh,
        Method::Rw,
        Method::ClosenessSigmoid,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Pl => "pl",
            Method::Us => "us",
            Method::Mh => "mh",
            Method::Rw => "rw",
            Method::ClosenessSigmoid => "closeness-sigmoid",
        }
    }

    /// The centrality whose rank this method estimates.
    pub fn metric(&self) -> Metric {
        match self {
            Method::ClosenessSigmoid => Metric::Closeness,
            _ => Metric::Degree,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Method> {
        Method::ALL
            .iter()
            .copied()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::Parameter(format!("unknown method '{s}'")))
    }
}

/// Estimated global rank of one node, clamped to `[1, n]`.
#[derive(Debug, Clone, PartialEq)]
pub struct RankEstimate {
    pub node: NodeId,
    /// Real-valued estimate; rounding is a presentation choice only.
    pub value: f64,
    pub method: Method,
    pub sample_frac: Option<f64>,
    pub seed: Option<u64>,
}

/// Network size and degree bounds the estimators plug into their formulas.
#[derive(Debug, Clone, Copy)]
pub struct NetworkParams {
    pub n: usize,
    pub degrees: DegreeStats,
}

impl NetworkParams {
    pub fn from_graph(g: &Graph) -> Result<NetworkParams> {
        Ok(NetworkParams {
            n: g.node_count(),
            degrees: g.degree_stats()?,
        })
    }
}

/// Where estimator inputs (n, d_min, d_max, d_avg) come from: read exactly
/// off the graph, or supplied by the caller (e.g. from an external
/// parameter-estimation step when the full graph is unavailable).
#[derive(Debug, Clone, Copy)]
pub enum ParameterSource {
    GroundTruth,
    Provided(NetworkParams),
}

impl ParameterSource {
    pub fn resolve(&self, g: &Graph) -> Result<NetworkParams> {
        match self {
            ParameterSource::GroundTruth => NetworkParams::from_graph(g),
            ParameterSource::Provided(params) => Ok(*params),
        }
    }
}

pub(crate) fn clamp_rank(value: f64, n: usize) -> f64 {
    value.clamp(1.0, n.max(1) as f64)
}
