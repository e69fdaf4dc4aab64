//! Constant-time degree-rank estimation from power-law parameters.
//!
//! In a scale-free network the fraction of nodes with degree `j` is modeled
//! as `f(j) = c·j^(−γ)`. Both constants follow in closed form from the
//! minimum, maximum and average degree, and the expected degree rank of a
//! node follows in closed form from its degree — no sampling, no traversal.

use crate::error::{Error, Result};
use crate::estimate::{clamp_rank, Method, NetworkParams, RankEstimate};
use crate::graph::{DegreeStats, NodeId};

/// Fitted power-law degree distribution `f(j) = c·j^(−γ)` over
/// `[d_min, d_max]`, normalized so the density integrates to one.
#[derive(Debug, Clone, Copy)]
pub struct PowerLawParams {
    pub gamma: f64,
    pub c: f64,
    pub d_min: usize,
    pub d_max: usize,
    pub n: usize,
}

impl PowerLawParams {
    /// Fits γ and c from network size and degree statistics.
    pub fn from_network(params: &NetworkParams) -> Result<PowerLawParams> {
        let gamma = estimate_gamma(&params.degrees)?;
        let c = estimate_c(gamma, params.degrees.d_min, params.degrees.d_max)?;
        Ok(PowerLawParams {
            gamma,
            c,
            d_min: params.degrees.d_min,
            d_max: params.degrees.d_max,
            n: params.n,
        })
    }
}

/// Power-law exponent `γ ≈ 2 + d_min / (d_avg − d_min)`.
pub fn estimate_gamma(stats: &DegreeStats) -> Result<f64> {
    let d_min = stats.d_min as f64;
    if stats.d_avg <= d_min {
        return Err(Error::Degenerate(format!(
            "d_avg = {} does not exceed d_min = {}",
            stats.d_avg, stats.d_min
        )));
    }
    Ok(2.0 + d_min / (stats.d_avg - d_min))
}

/// Normalization constant `c = (1 − γ) / (d_max^(1−γ) − d_min^(1−γ))`.
pub fn estimate_c(gamma: f64, d_min: usize, d_max: usize) -> Result<f64> {
    if d_min < 1 {
        return Err(Error::Parameter("d_min must be at least 1".into()));
    }
    if d_max <= d_min {
        return Err(Error::Degenerate(format!(
            "d_max = {d_max} does not exceed d_min = {d_min}"
        )));
    }
    if (gamma - 1.0).abs() < 1e-12 {
        return Err(Error::Parameter("gamma = 1 has no closed form".into()));
    }
    let e = 1.0 - gamma;
    Ok(e / ((d_max as f64).powf(e) - (d_min as f64).powf(e)))
}

/// Expected number of nodes of degree `j`: `n·f(j)`.
///
/// A continuous approximation: it may exceed the integer bin truth,
/// especially at the extremes of the degree range.
pub fn expected_degree_count(params: &PowerLawParams, j: usize) -> Result<f64> {
    if j < params.d_min || j > params.d_max {
        return Err(Error::Parameter(format!(
            "degree {j} outside [{}, {}]",
            params.d_min, params.d_max
        )));
    }
    Ok(params.n as f64 * params.c * (j as f64).powf(-params.gamma))
}

/// Expected degree rank of a node of degree `d_u`:
///
/// `E[R(u)] ≈ n · (d_max^(1−γ) − (d_u+1)^(1−γ)) / (d_max^(1−γ) − d_min^(1−γ)) + 1`
///
/// `d_u` is clamped into `[d_min, d_max]` before evaluation, and the result
/// is clamped into `[1, n]`: the continuous density legitimately pushes the
/// raw expectation slightly outside the valid range at the extremes.
pub fn estimate_degree_rank_pl(
    params: &PowerLawParams,
    node: NodeId,
    d_u: usize,
) -> Result<RankEstimate> {
    if params.d_max <= params.d_min || params.d_min < 1 {
        return Err(Error::Degenerate(format!(
            "invalid degree bounds [{}, {}]",
            params.d_min, params.d_max
        )));
    }
    let d_u = d_u.clamp(params.d_min, params.d_max);
    let e = 1.0 - params.gamma;
    let hi = (params.d_max as f64).powf(e);
    let lo = (params.d_min as f64).powf(e);
    let cut = (d_u as f64 + 1.0).powf(e);
    let raw = params.n as f64 * (hi - cut) / (hi - lo) + 1.0;
    Ok(RankEstimate {
        node,
        value: clamp_rank(raw, params.n),
        method: Method::Pl,
        sample_frac: None,
        seed: None,
    })
}
