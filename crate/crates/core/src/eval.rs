//! Seeded evaluation harness: absolute error versus actual rank.
//!
//! An experiment runs a set of estimators against the exact oracle over a
//! fixed node panel, repeats each sampler for a number of seeded iterations
//! (iteration `i` uses `base_seed + i`), and reports per-node mean estimate,
//! mean absolute error and the error's standard deviation as CSV. Output is
//! byte-deterministic for a fixed graph and configuration, whether the
//! iterations run sequentially or in parallel.

use std::io::Write;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::estimate::{Method, NetworkParams};
use crate::exact::{all_closeness, all_degree_centrality, competition_ranks, Metric};
use crate::graph::{Graph, NodeId};
use crate::powerlaw::{estimate_degree_rank_pl, PowerLawParams};
use crate::sampling::{
    local_rank, rw_reweighted_sample, extrapolate, mh_walk, sample_uniform, GlobalAccess,
    LocalAccess, Sample,
};
use crate::sigmoid::{estimate_closeness_rank_with_params, fit_sigmoid_params};

pub const DEFAULT_SAMPLE_FRAC: f64 = 0.01;
pub const DEFAULT_ITERATIONS: usize = 20;

/// Seed offset separating walk-start selection from the sampler streams.
const START_SEED_SALT: u64 = 0x5eed_0001;

/// Which nodes an experiment evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalNodes {
    /// Every node of the (working) graph.
    All,
    /// A fixed number of nodes spanning the rank spectrum.
    StratifiedByRank(usize),
}

/// Experiment configuration; see the module docs for seeding semantics.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub methods: Vec<Method>,
    pub sample_frac: f64,
    pub iterations: usize,
    pub base_seed: u64,
    pub burn_in: usize,
    pub slope: f64,
    pub eval_nodes: EvalNodes,
    /// Free-form graph description echoed into the CSV metadata.
    pub graph_label: String,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            methods: Vec::new(),
            sample_frac: DEFAULT_SAMPLE_FRAC,
            iterations: DEFAULT_ITERATIONS,
            base_seed: 42,
            burn_in: crate::sampling::DEFAULT_BURN_IN,
            slope: crate::sigmoid::DEFAULT_SLOPE,
            eval_nodes: EvalNodes::All,
            graph_label: String::new(),
        }
    }
}

/// Per-method error statistics for one node.
#[derive(Debug, Clone, PartialEq)]
pub struct MethodStats {
    pub method: Method,
    pub mean_estimate: f64,
    pub mean_abs_error: f64,
    pub std_abs_error: f64,
}

/// One evaluated node: its actual rank and each method's error statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorRecord {
    pub node: NodeId,
    pub label: String,
    pub actual_rank: usize,
    pub methods: Vec<MethodStats>,
}

/// Runs the configured experiment and returns one record per evaluated
/// node, sorted by actual rank ascending (ties by node id).
pub fn run_experiment(g: &Graph, cfg: &ExperimentConfig) -> Result<Vec<ErrorRecord>> {
    validate(cfg)?;
    let metric = single_metric(&cfg.methods)?;

    // Closeness methods are defined on a connected graph; work on the LCC.
    let lcc_storage;
    let work: &Graph = match metric {
        Metric::Closeness if !g.is_connected() => {
            lcc_storage = g.largest_connected_component().0;
            &lcc_storage
        }
        Metric::Degree
            if cfg.methods.iter().any(|m| matches!(m, Method::Mh | Method::Rw))
                && !g.is_connected() =>
        {
            return Err(Error::Parameter(
                "walk-based methods need a connected graph; evaluate on the largest \
                 connected component instead"
                    .into(),
            ));
        }
        _ => g,
    };
    let n = work.node_count();
    if n < 2 {
        return Err(Error::Parameter("experiments need at least two nodes".into()));
    }

    let values = match metric {
        Metric::Degree => all_degree_centrality(work)?,
        Metric::Closeness => all_closeness(work)?,
    };
    let ranks = competition_ranks(&values);
    let degrees = work.degrees();

    let eval_nodes = match cfg.eval_nodes {
        EvalNodes::All => {
            let mut nodes: Vec<NodeId> = (0..n).collect();
            nodes.sort_by_key(|&u| (ranks[u], u));
            nodes
        }
        EvalNodes::StratifiedByRank(count) => stratify_eval_nodes(&ranks, count)?,
    };

    // estimates[method][iteration][node index]
    let mut estimates: Vec<Vec<Vec<f64>>> = Vec::with_capacity(cfg.methods.len());
    for &method in &cfg.methods {
        let per_iteration = match method {
            Method::Pl => {
                let params = PowerLawParams::from_network(&NetworkParams::from_graph(work)?)
                    .map_err(|e| e.with_context("pl"))?;
                let once = eval_nodes
                    .iter()
                    .map(|&u| estimate_degree_rank_pl(&params, u, degrees[u]).map(|e| e.value))
                    .collect::<Result<Vec<f64>>>()
                    .map_err(|e| e.with_context("pl"))?;
                vec![once; cfg.iterations]
            }
            Method::ClosenessSigmoid => {
                let params = fit_sigmoid_params(work, cfg.slope)
                    .map_err(|e| e.with_context("closeness-sigmoid"))?;
                let once = eval_nodes
                    .iter()
                    .map(|&u| {
                        estimate_closeness_rank_with_params(work, &params, u).map(|e| e.value)
                    })
                    .collect::<Result<Vec<f64>>>()
                    .map_err(|e| e.with_context("closeness-sigmoid"))?;
                vec![once; cfg.iterations]
            }
            Method::Us | Method::Mh | Method::Rw => (0..cfg.iterations)
                .into_par_iter()
                .map(|i| {
                    let seed = cfg.base_seed + i as u64;
                    sampled_estimates(work, method, cfg, seed, &eval_nodes, &degrees)
                        .map_err(|e| e.with_context(method.as_str()))
                })
                .collect::<Result<Vec<Vec<f64>>>>()?,
        };
        estimates.push(per_iteration);
    }

    let records = eval_nodes
        .iter()
        .enumerate()
        .map(|(k, &u)| {
            let actual = ranks[u];
            let methods = cfg
                .methods
                .iter()
                .enumerate()
                .map(|(mi, &method)| {
                    let ests: Vec<f64> =
                        (0..cfg.iterations).map(|i| estimates[mi][i][k]).collect();
                    let abs_errors: Vec<f64> =
                        ests.iter().map(|e| (e - actual as f64).abs()).collect();
                    MethodStats {
                        method,
                        mean_estimate: crate::stats::mean(&ests),
                        mean_abs_error: crate::stats::mean(&abs_errors),
                        std_abs_error: crate::stats::std_population(&abs_errors),
                    }
                })
                .collect();
            ErrorRecord {
                node: u,
                label: work.label(u).to_string(),
                actual_rank: actual,
                methods,
            }
        })
        .collect();
    Ok(records)
}

/// Collects one shared sample for an iteration and reads every evaluated
/// node's estimate out of it.
fn sampled_estimates(
    work: &Graph,
    method: Method,
    cfg: &ExperimentConfig,
    seed: u64,
    eval_nodes: &[NodeId],
    degrees: &[usize],
) -> Result<Vec<f64>> {
    let n = work.node_count();
    let s = ((cfg.sample_frac * n as f64).ceil() as usize).clamp(1, n);
    let sample: Sample = match method {
        Method::Us => {
            let access = GlobalAccess::new(work);
            sample_uniform(&access, s, seed)?
        }
        Method::Mh => {
            let access = LocalAccess::new(work);
            mh_walk(&access, draw_start(work, seed)?, s, cfg.burn_in, seed)?
        }
        Method::Rw => {
            let access = LocalAccess::new(work);
            rw_reweighted_sample(&access, draw_start(work, seed)?, s, cfg.burn_in, seed)?
        }
        _ => unreachable!("only sampling methods share samples"),
    };
    eval_nodes
        .iter()
        .map(|&u| extrapolate(local_rank(&sample, u, degrees[u]), n, sample.len()))
        .collect()
}

/// Uniformly random non-isolated walk start, drawn from a stream separated
/// from the sampler's seed.
fn draw_start(work: &Graph, seed: u64) -> Result<NodeId> {
    let n = work.node_count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ START_SEED_SALT);
    for _ in 0..4 * n.max(16) {
        let v = rng.gen_range(0..n);
        if work.degree(v) > 0 {
            return Ok(v);
        }
    }
    Err(Error::Parameter(
        "could not find a non-isolated walk start".into(),
    ))
}

fn validate(cfg: &ExperimentConfig) -> Result<()> {
    if cfg.methods.is_empty() {
        return Err(Error::Parameter("no methods selected".into()));
    }
    let mut seen = std::collections::HashSet::new();
    for m in &cfg.methods {
        if !seen.insert(m) {
            return Err(Error::Parameter(format!("method '{m}' listed twice")));
        }
    }
    if !(cfg.sample_frac > 0.0 && cfg.sample_frac <= 1.0) {
        return Err(Error::Parameter(format!(
            "sample_frac = {} outside (0, 1]",
            cfg.sample_frac
        )));
    }
    if cfg.iterations == 0 {
        return Err(Error::Parameter("iterations must be at least 1".into()));
    }
    Ok(())
}

fn single_metric(methods: &[Method]) -> Result<Metric> {
    let metric = methods[0].metric();
    if methods.iter().any(|m| m.metric() != metric) {
        return Err(Error::Parameter(
            "methods mix degree- and closeness-rank targets; run separate experiments".into(),
        ));
    }
    Ok(metric)
}

/// Picks `count` nodes spanning the rank spectrum.
///
/// With `count` below the number of distinct rank values, one node is taken
/// per evenly spaced distinct rank (lowest id among ties), which always
/// includes a rank-1 node and a maximum-rank node and yields strictly
/// increasing ranks. With more buckets than distinct ranks, selection falls
/// back to evenly spaced positions in the rank-sorted node order.
/// `count == n` returns every node.
pub fn stratify_eval_nodes(ranks: &[usize], count: usize) -> Result<Vec<NodeId>> {
    let n = ranks.len();
    if count == 0 || count > n {
        return Err(Error::Parameter(format!(
            "eval node count {count} outside [1, {n}]"
        )));
    }
    let mut order: Vec<NodeId> = (0..n).collect();
    order.sort_by_key(|&u| (ranks[u], u));
    if count == n {
        return Ok(order);
    }

    let mut distinct: Vec<usize> = ranks.to_vec();
    distinct.sort_unstable();
    distinct.dedup();

    if count <= distinct.len() {
        // Lowest id per rank value; `order` is sorted by (rank, id).
        let pick = |target_rank: usize| -> NodeId {
            let pos = order.partition_point(|&u| ranks[u] < target_rank);
            order[pos]
        };
        let k = distinct.len();
        let chosen: Vec<NodeId> = (0..count)
            .map(|i| {
                let idx = if count == 1 {
                    0
                } else {
                    ((i as f64) * (k - 1) as f64 / (count - 1) as f64).round() as usize
                };
                pick(distinct[idx])
            })
            .collect();
        return Ok(chosen);
    }

    let picked: Vec<NodeId> = (0..count)
        .map(|i| {
            let pos = ((i as f64) * (n - 1) as f64 / (count - 1) as f64).round() as usize;
            order[pos]
        })
        .collect();
    Ok(picked)
}

/// Writes records as CSV: optional `#`-prefixed metadata lines, a header,
/// then one row per node with six-decimal floating-point fields.
pub fn emit_csv<W: Write>(
    records: &[ErrorRecord],
    methods: &[Method],
    metadata: &[String],
    writer: &mut W,
) -> std::io::Result<()> {
    for line in metadata {
        writeln!(writer, "# {line}")?;
    }
    let mut header = String::from("node,actual_rank");
    for m in methods {
        header.push_str(&format!(",{m}_mean_est,{m}_mae,{m}_std"));
    }
    writeln!(writer, "{header}")?;
    for record in records {
        let mut row = format!("{},{}", record.label, record.actual_rank);
        for stats in &record.methods {
            row.push_str(&format!(
                ",{:.6},{:.6},{:.6}",
                stats.mean_estimate, stats.mean_abs_error, stats.std_abs_error
            ));
        }
        writeln!(writer, "{row}")?;
    }
    Ok(())
}

/// Metadata block echoed at the top of an experiment's CSV output.
pub fn experiment_metadata(g: &Graph, cfg: &ExperimentConfig) -> Vec<String> {
    let methods: Vec<&str> = cfg.methods.iter().map(|m| m.as_str()).collect();
    vec![
        format!(
            "graph: {} (n={}, m={})",
            if cfg.graph_label.is_empty() { "-" } else { &cfg.graph_label },
            g.node_count(),
            g.edge_count()
        ),
        format!("methods: {}", methods.join(",")),
        format!("sample_frac: {:.6}", cfg.sample_frac),
        format!("iterations: {}", cfg.iterations),
        format!("base_seed: {}", cfg.base_seed),
        format!("burn_in: {}", cfg.burn_in),
        format!("slope: {:.6}", cfg.slope),
        match cfg.eval_nodes {
            EvalNodes::All => "eval_nodes: all".to_string(),
            EvalNodes::StratifiedByRank(c) => format!("eval_nodes: stratified:{c}"),
        },
    ]
}
