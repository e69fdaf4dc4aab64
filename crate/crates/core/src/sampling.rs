//! Degree-rank estimation from samples.
//!
//! Three collectors feed one estimation pipeline: uniform node sampling
//! (needs global access to the id universe), a Metropolis–Hastings walk
//! (uniform stationary distribution) and a plain random walk re-weighted by
//! inverse degree. The local rank of the queried node inside the sample is
//! extrapolated to the full network as `(n / s) · r_local`.
//!
//! Graph access is capability-restricted: walks run against [`LocalAccess`],
//! which exposes nothing but degrees, neighbor lists and random neighbors,
//! so a crawl can never peek at `n`, `m` or the node-id universe. Every
//! capability call is counted, which lets tests assert that crawl-only
//! methods leave the global counters untouched.

use std::sync::atomic::{AtomicU64, Ordering};

use rand::distributions::{Distribution, WeightedIndex};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::estimate::{clamp_rank, Method, RankEstimate};
use crate::graph::{Graph, NodeId};

/// Default number of walk steps discarded before collection starts.
pub const DEFAULT_BURN_IN: usize = 100;

/// Seed offset separating the re-weighting draw stream from the walk stream.
pub(crate) const REWEIGHT_SEED_SALT: u64 = 0x5eed_0002;

/// Capability-call counts of a [`LocalAccess`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LocalCounters {
    pub degree: u64,
    pub neighbors: u64,
    pub random_neighbor: u64,
}

/// Capability-call counts of the global extensions in [`GlobalAccess`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GlobalCounters {
    pub random_node: u64,
    pub node_count: u64,
}

/// Local-information view of a graph: degree, neighbors and a uniformly
/// random neighbor of a known node. Nothing else leaks out.
pub struct LocalAccess<'g> {
    graph: &'g Graph,
    degree_calls: AtomicU64,
    neighbors_calls: AtomicU64,
    random_neighbor_calls: AtomicU64,
}

impl<'g> LocalAccess<'g> {
    pub fn new(graph: &'g Graph) -> LocalAccess<'g> {
        LocalAccess {
            graph,
            degree_calls: AtomicU64::new(0),
            neighbors_calls: AtomicU64::new(0),
            random_neighbor_calls: AtomicU64::new(0),
        }
    }

    pub fn degree(&self, u: NodeId) -> usize {
        self.degree_calls.fetch_add(1, Ordering::Relaxed);
        self.graph.degree(u)
    }

    pub fn neighbors(&self, u: NodeId) -> &[NodeId] {
        self.neighbors_calls.fetch_add(1, Ordering::Relaxed);
        self.graph.neighbors(u)
    }

    /// A uniformly random neighbor of `u`, or `None` if `u` is isolated.
    pub fn random_neighbor(&self, u: NodeId, rng: &mut impl Rng) -> Option<NodeId> {
        self.random_neighbor_calls.fetch_add(1, Ordering::Relaxed);
        let list = self.graph.neighbors(u);
        if list.is_empty() {
            None
        } else {
            Some(list[rng.gen_range(0..list.len())])
        }
    }

    pub fn counters(&self) -> LocalCounters {
        LocalCounters {
            degree: self.degree_calls.load(Ordering::Relaxed),
            neighbors: self.neighbors_calls.load(Ordering::Relaxed),
            random_neighbor: self.random_neighbor_calls.load(Ordering::Relaxed),
        }
    }
}

/// [`LocalAccess`] plus the two global capabilities uniform sampling needs:
/// a uniformly random node and the node count.
pub struct GlobalAccess<'g> {
    local: LocalAccess<'g>,
    random_node_calls: AtomicU64,
    node_count_calls: AtomicU64,
}

impl<'g> GlobalAccess<'g> {
    pub fn new(graph: &'g Graph) -> GlobalAccess<'g> {
        GlobalAccess {
            local: LocalAccess::new(graph),
            random_node_calls: AtomicU64::new(0),
            node_count_calls: AtomicU64::new(0),
        }
    }

    /// The crawl-only view; walks built on it cannot touch global state.
    pub fn local(&self) -> &LocalAccess<'g> {
        &self.local
    }

    pub fn random_node(&self, rng: &mut impl Rng) -> NodeId {
        self.random_node_calls.fetch_add(1, Ordering::Relaxed);
        rng.gen_range(0..self.local.graph.node_count())
    }

    pub fn node_count(&self) -> usize {
        self.node_count_calls.fetch_add(1, Ordering::Relaxed);
        self.local.graph.node_count()
    }

    pub fn global_counters(&self) -> GlobalCounters {
        GlobalCounters {
            random_node: self.random_node_calls.load(Ordering::Relaxed),
            node_count: self.node_count_calls.load(Ordering::Relaxed),
        }
    }
}

/// How a sample was collected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SampleMethod {
    Uniform,
    MetropolisHastings,
    RandomWalk,
    ReweightedRandomWalk,
}

impl SampleMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            SampleMethod::Uniform => "us",
            SampleMethod::MetropolisHastings => "mh",
            SampleMethod::RandomWalk => "rw",
            SampleMethod::ReweightedRandomWalk => "rw-reweighted",
        }
    }
}

/// An ordered multiset of `(node, degree)` observations.
#[derive(Debug, Clone)]
pub struct Sample {
    entries: Vec<(NodeId, usize)>,
    method: SampleMethod,
    burn_in: usize,
    seed: u64,
}

impl Sample {
    pub fn entries(&self) -> &[(NodeId, usize)] {
        &self.entries
    }

    /// Sample size `s`.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn method(&self) -> SampleMethod {
        self.method
    }

    pub fn burn_in(&self) -> usize {
        self.burn_in
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

/// Draws `s` distinct nodes uniformly at random, without replacement, using
/// only the random-node capability (rejecting repeats).
pub fn sample_uniform(access: &GlobalAccess, s: usize, seed: u64) -> Result<Sample> {
    let n = access.node_count();
    if s == 0 || s > n {
        return Err(Error::Parameter(format!(
            "sample size {s} outside [1, {n}]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = std::collections::HashSet::with_capacity(s);
    let mut entries = Vec::with_capacity(s);
    while entries.len() < s {
        let v = access.random_node(&mut rng);
        if seen.insert(v) {
            entries.push((v, access.local().degree(v)));
        }
    }
    Ok(Sample {
        entries,
        method: SampleMethod::Uniform,
        burn_in: 0,
        seed,
    })
}

/// Metropolis–Hastings random walk.
///
/// From node `u`, a neighbor `v` is proposed uniformly and accepted with
/// probability `min(1, d_u / d_v)`; otherwise the walk stays at `u` (a
/// self-loop step). This realizes the transition kernel
/// `P(u→v) = (1/d_u)·min(1, d_u/d_v)` whose stationary distribution is
/// uniform over a connected graph.
///
/// After `burn_in` steps the current node is recorded at every step, self-
/// loop repeats included, until `s` entries are collected.
pub fn mh_walk(
    access: &LocalAccess,
    start: NodeId,
    s: usize,
    burn_in: usize,
    seed: u64,
) -> Result<Sample> {
    walk(access, start, s, burn_in, seed, WalkKind::MetropolisHastings)
}

/// Plain random walk: the next node is a uniformly random neighbor, so the
/// stationary probability of a node is proportional to its degree.
pub fn rw_walk(
    access: &LocalAccess,
    start: NodeId,
    s: usize,
    burn_in: usize,
    seed: u64,
) -> Result<Sample> {
    walk(access, start, s, burn_in, seed, WalkKind::Plain)
}

enum WalkKind {
    MetropolisHastings,
    Plain,
}

fn walk(
    access: &LocalAccess,
    start: NodeId,
    s: usize,
    burn_in: usize,
    seed: u64,
    kind: WalkKind,
) -> Result<Sample> {
    let d_start = access.degree(start);
    if d_start == 0 {
        return Err(Error::IsolatedStart(start));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current = start;
    let mut d_current = d_start;

    let step = |current: NodeId, d_current: usize, rng: &mut ChaCha8Rng| {
        let proposed = access
            .random_neighbor(current, rng)
            .expect("walk nodes have degree >= 1");
        let d_proposed = access.degree(proposed);
        match kind {
            WalkKind::Plain => (proposed, d_proposed),
            WalkKind::MetropolisHastings => {
                // Accept with min(1, d_u / d_v); rejection is a self-loop.
                if d_proposed <= d_current
                    || rng.gen::<f64>() < d_current as f64 / d_proposed as f64
                {
                    (proposed, d_proposed)
                } else {
                    (current, d_current)
                }
            }
        }
    };

    for _ in 0..burn_in {
        (current, d_current) = step(current, d_current, &mut rng);
    }
    let mut entries = Vec::with_capacity(s);
    for _ in 0..s {
        entries.push((current, d_current));
        (current, d_current) = step(current, d_current, &mut rng);
    }
    Ok(Sample {
        entries,
        method: match kind {
            WalkKind::MetropolisHastings => SampleMethod::MetropolisHastings,
            WalkKind::Plain => SampleMethod::RandomWalk,
        },
        burn_in,
        seed,
    })
}

/// Resamples `s_out` entries with replacement, each drawn with probability
/// proportional to `1 / degree`. This cancels the degree bias of a plain
/// random walk, turning it into an approximately uniform sample.
pub fn reweight(sample: &Sample, s_out: usize, seed: u64) -> Result<Sample> {
    if sample.is_empty() {
        return Err(Error::EmptySample);
    }
    if sample.entries.iter().any(|&(_, d)| d == 0) {
        return Err(Error::Parameter(
            "cannot re-weight an entry of degree zero".into(),
        ));
    }
    let weights = sample.entries.iter().map(|&(_, d)| 1.0 / d as f64);
    let index = WeightedIndex::new(weights)
        .map_err(|e| Error::Parameter(format!("re-weighting failed: {e}")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let entries = (0..s_out)
        .map(|_| sample.entries[index.sample(&mut rng)])
        .collect();
    Ok(Sample {
        entries,
        method: SampleMethod::ReweightedRandomWalk,
        burn_in: sample.burn_in,
        seed,
    })
}

/// Rank of the queried node within a sample: `1 +` the number of entries
/// with strictly greater degree. Entries recording the queried node itself
/// are excluded.
pub fn local_rank(sample: &Sample, u: NodeId, d_u: usize) -> usize {
    1 + sample
        .entries
        .iter()
        .filter(|&&(v, d_v)| v != u && d_v > d_u)
        .count()
}

/// Extrapolates a local rank to the full network: `(n / s) · r_local`,
/// clamped into `[1, n]`.
pub fn extrapolate(r_local: usize, n: usize, s: usize) -> Result<f64> {
    if s == 0 {
        return Err(Error::Parameter("sample size must be positive".into()));
    }
    Ok(clamp_rank(n as f64 / s as f64 * r_local as f64, n))
}

fn sample_size(sample_frac: f64, n: usize) -> Result<usize> {
    if !(sample_frac > 0.0 && sample_frac <= 1.0) {
        return Err(Error::Parameter(format!(
            "sample_frac = {sample_frac} outside (0, 1]"
        )));
    }
    Ok(((sample_frac * n as f64).ceil() as usize).max(1))
}

/// Collects a random-walk sample and re-weights it to the same size; the
/// single crawl underlying the rw estimator.
pub fn rw_reweighted_sample(
    access: &LocalAccess,
    start: NodeId,
    s: usize,
    burn_in: usize,
    seed: u64,
) -> Result<Sample> {
    let raw = rw_walk(access, start, s, burn_in, seed)?;
    reweight(&raw, s, seed ^ REWEIGHT_SEED_SALT)
}

fn finish_estimate(
    sample: &Sample,
    u: NodeId,
    d_u: usize,
    n: usize,
    method: Method,
    sample_frac: f64,
    seed: u64,
) -> Result<RankEstimate> {
    let r_local = local_rank(sample, u, d_u);
    Ok(RankEstimate {
        node: u,
        value: extrapolate(r_local, n, sample.len())?,
        method,
        sample_frac: Some(sample_frac),
        seed: Some(seed),
    })
}

/// Degree-rank estimate from a fresh uniform sample of `ceil(sample_frac·n)`
/// nodes. `n` is the network size used for extrapolation.
pub fn estimate_degree_rank_us(
    access: &GlobalAccess,
    u: NodeId,
    n: usize,
    sample_frac: f64,
    seed: u64,
) -> Result<RankEstimate> {
    let s = sample_size(sample_frac, n)?;
    let sample = sample_uniform(access, s, seed)?;
    let d_u = access.local().degree(u);
    finish_estimate(&sample, u, d_u, n, Method::Us, sample_frac, seed)
}

/// Degree-rank estimate from a Metropolis–Hastings crawl starting at
/// `start`. Uses local access only; `n` comes from the caller's parameter
/// source.
pub fn estimate_degree_rank_mh(
    access: &LocalAccess,
    start: NodeId,
    u: NodeId,
    n: usize,
    sample_frac: f64,
    burn_in: usize,
    seed: u64,
) -> Result<RankEstimate> {
    let s = sample_size(sample_frac, n)?;
    let sample = mh_walk(access, start, s, burn_in, seed)?;
    let d_u = access.degree(u);
    finish_estimate(&sample, u, d_u, n, Method::Mh, sample_frac, seed)
}

/// Degree-rank estimate from a re-weighted random-walk crawl starting at
/// `start`.
pub fn estimate_degree_rank_rw(
    access: &LocalAccess,
    start: NodeId,
    u: NodeId,
    n: usize,
    sample_frac: f64,
    burn_in: usize,
    seed: u64,
) -> Result<RankEstimate> {
    let s = sample_size(sample_frac, n)?;
    let sample = rw_reweighted_sample(access, start, s, burn_in, seed)?;
    let d_u = access.degree(u);
    finish_estimate(&sample, u, d_u, n, Method::Rw, sample_frac, seed)
}
