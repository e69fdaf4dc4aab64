//! Synthetic graph generators.
//!
//! Both generators are bitwise deterministic: the same parameters and seed
//! always produce the same edge set.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

/// Barabási–Albert preferential attachment.
///
/// Starts from a clique of `m_attach + 1` nodes; every later node attaches
/// `m_attach` distinct edges, each target drawn proportionally to current
/// degree. The result is connected with minimum degree exactly `m_attach`.
pub fn generate_ba(n: usize, m_attach: usize, seed: u64) -> Result<Graph> {
    if m_attach < 1 {
        return Err(Error::Parameter("m_attach must be at least 1".into()));
    }
    if n <= m_attach {
        return Err(Error::Parameter(format!(
            "n = {n} must exceed m_attach = {m_attach}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m0 = m_attach + 1;

    let mut edges: Vec<(NodeId, NodeId)> = Vec::new();
    for i in 0..m0 {
        for j in (i + 1)..m0 {
            edges.push((i, j));
        }
    }
    // One entry per edge endpoint; sampling this list uniformly picks an
    // existing node with probability proportional to its degree.
    let mut endpoints: Vec<NodeId> = Vec::with_capacity(2 * (edges.len() + (n - m0) * m_attach));
    for &(u, v) in &edges {
        endpoints.push(u);
        endpoints.push(v);
    }

    let mut targets: Vec<NodeId> = Vec::with_capacity(m_attach);
    for new_node in m0..n {
        targets.clear();
        while targets.len() < m_attach {
            let t = endpoints[rng.gen_range(0..endpoints.len())];
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        for &t in &targets {
            edges.push((new_node, t));
            endpoints.push(new_node);
            endpoints.push(t);
        }
    }
    Ok(Graph::from_edges(n, edges))
}

/// Erdős–Rényi G(n, p): each unordered pair is an edge independently with
/// probability `p_edge`.
pub fn generate_er(n: usize, p_edge: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p_edge) {
        return Err(Error::Parameter(format!(
            "p_edge = {p_edge} outside [0, 1]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen::<f64>() < p_edge {
                edges.push((i, j));
            }
        }
    }
    Ok(Graph::from_edges(n, edges))
}
