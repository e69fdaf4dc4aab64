//! Exact centrality values and competition ranks.
//!
//! These are the ground-truth oracles every estimator is judged against.
//! Computing the full closeness vector costs one BFS per node, i.e. Θ(n·m):
//! the expensive baseline the estimators replace. Every BFS run here bumps
//! the owning graph's traversal counter so callers can assert traversal
//! budgets.

use std::collections::VecDeque;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

/// Which centrality a value vector was computed under.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Metric {
    Degree,
    Closeness,
}

impl Metric {
    pub fn as_str(&self) -> &'static str {
        match self {
            Metric::Degree => "degree",
            Metric::Closeness => "closeness",
        }
    }
}

/// Per-node centrality values for one metric.
#[derive(Debug, Clone)]
pub struct CentralityVector {
    pub metric: Metric,
    pub values: Vec<f64>,
}

/// Competition rank of one node: `1 +` the number of nodes with strictly
/// greater centrality; tied values share a rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactRank {
    pub node: NodeId,
    pub rank: usize,
}

pub(crate) const UNREACHED: usize = usize::MAX;

/// Shortest-path hop counts from `source`; `usize::MAX` marks unreachable
/// nodes. Counts as one BFS traversal of `g`.
pub fn bfs_distances(g: &Graph, source: NodeId) -> Vec<usize> {
    g.record_bfs();
    let mut dist = vec![UNREACHED; g.node_count()];
    dist[source] = 0;
    let mut queue = VecDeque::new();
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u) {
            if dist[v] == UNREACHED {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Degree centrality `deg(u) / (n - 1)`.
pub fn degree_centrality(g: &Graph, u: NodeId) -> Result<f64> {
    let n = g.node_count();
    if n < 2 {
        return Err(Error::Parameter(
            "degree centrality is undefined for n < 2".into(),
        ));
    }
    Ok(g.degree(u) as f64 / (n - 1) as f64)
}

/// Degree centrality of every node.
pub fn all_degree_centrality(g: &Graph) -> Result<CentralityVector> {
    let values = (0..g.node_count())
        .map(|u| degree_centrality(g, u))
        .collect::<Result<Vec<_>>>()?;
    Ok(CentralityVector {
        metric: Metric::Degree,
        values,
    })
}

/// Closeness centrality `(n - 1) / Σ_v d(u, v)` via a single BFS.
///
/// Errors if any node is unreachable from `u`; run on the largest connected
/// component first when the graph may be disconnected.
pub fn closeness_centrality(g: &Graph, u: NodeId) -> Result<f64> {
    let n = g.node_count();
    if n < 2 {
        return Err(Error::Parameter(
            "closeness centrality is undefined for n < 2".into(),
        ));
    }
    let dist = bfs_distances(g, u);
    let mut sum = 0usize;
    let mut reachable = 0usize;
    for d in &dist {
        if *d != UNREACHED {
            reachable += 1;
            sum += d;
        }
    }
    if reachable != n {
        let missing = dist.iter().position(|&d| d == UNREACHED).unwrap();
        return Err(Error::Disconnected {
            from: u,
            missing,
            reachable,
            total: n,
        });
    }
    Ok((n - 1) as f64 / sum as f64)
}

/// Closeness centrality of every node: n BFS runs, Θ(n·m) total.
///
/// Sources are processed in parallel; the result is indexed by node id and
/// independent of execution order.
pub fn all_closeness(g: &Graph) -> Result<CentralityVector> {
    let values = (0..g.node_count())
        .into_par_iter()
        .map(|u| closeness_centrality(g, u))
        .collect::<Result<Vec<_>>>()?;
    Ok(CentralityVector {
        metric: Metric::Closeness,
        values,
    })
}

/// Competition rank of `u` within a complete value vector, by directly
/// counting nodes with strictly greater centrality.
pub fn exact_rank(values: &CentralityVector, u: NodeId) -> ExactRank {
    let c_u = values.values[u];
    let greater = values.values.iter().filter(|&&c| c > c_u).count();
    ExactRank {
        node: u,
        rank: greater + 1,
    }
}

/// Competition ranks for every node at once, by sorting and scanning.
///
/// Independent route from [`exact_rank`]'s per-node counting; the two are
/// cross-checked in tests.
pub fn competition_ranks(values: &CentralityVector) -> Vec<usize> {
    let n = values.values.len();
    let mut order: Vec<NodeId> = (0..n).collect();
    order.sort_by(|&a, &b| {
        values.values[b]
            .partial_cmp(&values.values[a])
            .expect("centrality values must not be NaN")
    });
    let mut ranks = vec![0usize; n];
    let mut rank = 1;
    for (pos, &u) in order.iter().enumerate() {
        if pos > 0 && values.values[u] < values.values[order[pos - 1]] {
            rank = pos + 1;
        }
        ranks[u] = rank;
    }
    ranks
}

/// Exact degree rank of `u`.
pub fn degree_rank(g: &Graph, u: NodeId) -> Result<ExactRank> {
    let values = all_degree_centrality(g)?;
    Ok(exact_rank(&values, u))
}

/// Exact closeness rank of `u`, computed on the largest connected component.
///
/// On a disconnected graph the rank is relative to the component size;
/// querying a node outside the component is an error.
pub fn closeness_rank(g: &Graph, u: NodeId) -> Result<ExactRank> {
    if g.is_connected() {
        let values = all_closeness(g)?;
        return Ok(exact_rank(&values, u));
    }
    let (lcc, mapping) = g.largest_connected_component();
    let lu = mapping[u].ok_or(Error::OutsideLcc { node: u })?;
    let values = all_closeness(&lcc)?;
    g.add_bfs_runs(lcc.bfs_count());
    Ok(ExactRank {
        node: u,
        rank: exact_rank(&values, lu).rank,
    })
}
