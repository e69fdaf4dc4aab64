//! Command-line front end: generate graphs, compute exact ranks, run single
//! estimates, run error-versus-rank experiments.
//!
//! Exit codes: 0 on success, 1 on usage errors (bad flags or values), 2 on
//! data and domain errors (unreadable input, disconnected graph, degenerate
//! degree distribution, ...). All randomness flows from `--seed`, so any
//! invocation repeated with identical flags and inputs produces identical
//! output. `RANK_THREADS` optionally caps the internal worker count.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use rankest::estimate::{Method, NetworkParams, ParameterSource};
use rankest::eval::{
    emit_csv, experiment_metadata, run_experiment, EvalNodes, ExperimentConfig,
    DEFAULT_ITERATIONS, DEFAULT_SAMPLE_FRAC,
};
use rankest::exact::{closeness_rank, degree_rank};
use rankest::generate::{generate_ba, generate_er};
use rankest::graph::DegreeStats;
use rankest::sampling::{
    estimate_degree_rank_mh, estimate_degree_rank_rw, estimate_degree_rank_us, GlobalAccess,
    LocalAccess, DEFAULT_BURN_IN,
};
use rankest::sigmoid::{estimate_closeness_rank, DEFAULT_SLOPE};
use rankest::{Graph, NodeId, RankEstimate};

#[derive(Parser)]
#[command(
    name = "rankest",
    version,
    about = "Estimate the global centrality rank of a node in a large undirected network"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Base seed for all randomness.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Suppress progress chatter on stderr.
    #[arg(long, global = true)]
    quiet: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic graph and write it as an edge list.
    Generate(GenerateArgs),
    /// Compute the exact centrality rank of one node.
    ExactRank(ExactRankArgs),
    /// Estimate the centrality rank of one node.
    Estimate(EstimateArgs),
    /// Run an absolute-error-versus-rank experiment and emit CSV.
    Evaluate(EvaluateArgs),
}

#[derive(Args)]
struct GenerateArgs {
    /// Graph model.
    #[arg(long, value_enum)]
    model: Model,

    /// Number of nodes.
    #[arg(long)]
    n: usize,

    /// Edges attached per new node (ba model).
    #[arg(long, default_value_t = 5)]
    m_attach: usize,

    /// Independent edge probability (er model).
    #[arg(long, default_value_t = 0.01)]
    p_edge: f64,

    /// Output file; stdout when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Ba,
    Er,
}

#[derive(Args)]
struct ExactRankArgs {
    /// Edge-list file.
    #[arg(long)]
    graph: PathBuf,

    /// Centrality to rank under.
    #[arg(long, value_enum)]
    metric: MetricArg,

    /// Label of the node to rank.
    #[arg(long)]
    node: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum MetricArg {
    Degree,
    Closeness,
}

#[derive(Args)]
struct EstimateArgs {
    /// Edge-list file.
    #[arg(long)]
    graph: PathBuf,

    /// Estimation method.
    #[arg(long, value_enum)]
    method: MethodArg,

    /// Label of the node whose rank to estimate.
    #[arg(long)]
    node: String,

    /// Fraction of nodes sampled per estimate (us, mh, rw).
    #[arg(long, default_value_t = DEFAULT_SAMPLE_FRAC, value_parser = parse_frac)]
    sample_frac: f64,

    /// Walk steps discarded before collection (mh, rw).
    #[arg(long, default_value_t = DEFAULT_BURN_IN)]
    burn_in: usize,

    /// Logistic slope at the midpoint (closeness-sigmoid).
    #[arg(long, default_value_t = DEFAULT_SLOPE)]
    slope: f64,

    /// Walk start label (mh, rw); a seeded random node when omitted.
    #[arg(long)]
    start: Option<String>,

    /// Override the network size read from the graph.
    #[arg(long)]
    n: Option<usize>,

    /// Override the minimum degree read from the graph.
    #[arg(long)]
    dmin: Option<usize>,

    /// Override the maximum degree read from the graph.
    #[arg(long)]
    dmax: Option<usize>,

    /// Override the average degree read from the graph.
    #[arg(long)]
    davg: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Pl,
    Us,
    Mh,
    Rw,
    ClosenessSigmoid,
}

impl From<MethodArg> for Method {
    fn from(value: MethodArg) -> Method {
        match value {
            MethodArg::Pl => Method::Pl,
            MethodArg::Us => Method::Us,
            MethodArg::Mh => Method::Mh,
            MethodArg::Rw => Method::Rw,
            MethodArg::ClosenessSigmoid => Method::ClosenessSigmoid,
        }
    }
}

#[derive(Args)]
struct EvaluateArgs {
    /// Edge-list file.
    #[arg(long)]
    graph: PathBuf,

    /// Comma-separated methods to evaluate.
    #[arg(long, value_enum, value_delimiter = ',', required = true)]
    methods: Vec<MethodArg>,

    /// Seeded iterations averaged per node.
    #[arg(long, default_value_t = DEFAULT_ITERATIONS)]
    iterations: usize,

    /// Fraction of nodes sampled per iteration.
    #[arg(long, default_value_t = DEFAULT_SAMPLE_FRAC, value_parser = parse_frac)]
    sample_frac: f64,

    /// Walk steps discarded before collection (mh, rw).
    #[arg(long, default_value_t = DEFAULT_BURN_IN)]
    burn_in: usize,

    /// Logistic slope at the midpoint (closeness-sigmoid).
    #[arg(long, default_value_t = DEFAULT_SLOPE)]
    slope: f64,

    /// Nodes to evaluate: "all" or a stratified count.
    #[arg(long, default_value = "all", value_parser = parse_eval_nodes)]
    eval_nodes: EvalNodesArg,

    /// Output CSV file; stdout when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug)]
enum EvalNodesArg {
    All,
    Stratified(usize),
}

fn parse_eval_nodes(value: &str) -> Result<EvalNodesArg, String> {
    if value.eq_ignore_ascii_case("all") {
        return Ok(EvalNodesArg::All);
    }
    value
        .parse::<usize>()
        .map(EvalNodesArg::Stratified)
        .map_err(|_| format!("expected 'all' or a positive count, got '{value}'"))
}

fn parse_frac(value: &str) -> Result<f64, String> {
    let frac: f64 = value.parse().map_err(|_| format!("invalid number '{value}'"))?;
    if frac > 0.0 && frac <= 1.0 {
        Ok(frac)
    } else {
        Err(format!("{frac} outside (0, 1]"))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version requests are successes, not usage errors.
            if matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{err}");
                return ExitCode::SUCCESS;
            }
            eprint!("{err}");
            return ExitCode::from(1);
        }
    };

    if let Err(message) = configure_threads() {
        eprintln!("{message}");
        return ExitCode::from(1);
    }

    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(value) = std::env::var("RANK_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .parse()
        .map_err(|_| format!("RANK_THREADS must be a positive integer, got '{value}'"))?;
    if threads == 0 {
        return Err("RANK_THREADS must be a positive integer".into());
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| format!("could not configure {threads} worker threads: {e}"))
}

fn run(cli: Cli) -> rankest::Result<()> {
    match cli.command {
        Command::Generate(args) => generate(args, cli.seed, cli.quiet),
        Command::ExactRank(args) => exact_rank(args, cli.quiet),
        Command::Estimate(args) => estimate(args, cli.seed, cli.quiet),
        Command::Evaluate(args) => evaluate(args, cli.seed, cli.quiet),
    }
}

fn load_graph(path: &Path, quiet: bool) -> rankest::Result<Graph> {
    let file = File::open(path)?;
    let (graph, stats) = Graph::load_edge_list_with_stats(BufReader::new(file))?;
    if !quiet && (stats.self_loops_dropped > 0 || stats.duplicate_edges_dropped > 0) {
        eprintln!(
            "loaded {}: dropped {} self-loops and {} duplicate edges",
            path.display(),
            stats.self_loops_dropped,
            stats.duplicate_edges_dropped
        );
    }
    Ok(graph)
}

fn resolve_node(graph: &Graph, label: &str) -> rankest::Result<NodeId> {
    graph
        .node_by_label(label)
        .ok_or_else(|| rankest::Error::UnknownLabel(label.to_string()))
}

fn open_output(path: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn generate(args: GenerateArgs, seed: u64, quiet: bool) -> rankest::Result<()> {
    let graph = match args.model {
        Model::Ba => generate_ba(args.n, args.m_attach, seed)?,
        Model::Er => generate_er(args.n, args.p_edge, seed)?,
    };
    let mut out = open_output(&args.output)?;
    graph.write_edge_list(&mut out)?;
    out.flush()?;
    if !quiet {
        eprintln!(
            "generated {} graph: n={} m={}",
            match args.model {
                Model::Ba => "ba",
                Model::Er => "er",
            },
            graph.node_count(),
            graph.edge_count()
        );
    }
    Ok(())
}

fn exact_rank(args: ExactRankArgs, quiet: bool) -> rankest::Result<()> {
    let graph = load_graph(&args.graph, quiet)?;
    let node = resolve_node(&graph, &args.node)?;
    let (tag, rank) = match args.metric {
        MetricArg::Degree => ("exact-degree", degree_rank(&graph, node)?),
        MetricArg::Closeness => ("exact-closeness", closeness_rank(&graph, node)?),
    };
    println!("node={} method={} rank={}", args.node, tag, rank.rank);
    Ok(())
}

fn estimate(args: EstimateArgs, seed: u64, quiet: bool) -> rankest::Result<()> {
    let graph = load_graph(&args.graph, quiet)?;
    let node = resolve_node(&graph, &args.node)?;
    let source = parameter_source(&graph, &args)?;
    let params = source.resolve(&graph)?;

    let est: RankEstimate = match args.method {
        MethodArg::Pl => {
            let pl = rankest::powerlaw::PowerLawParams::from_network(&params)?;
            rankest::powerlaw::estimate_degree_rank_pl(&pl, node, graph.degree(node))?
        }
        MethodArg::Us => {
            let access = GlobalAccess::new(&graph);
            estimate_degree_rank_us(&access, node, params.n, args.sample_frac, seed)?
        }
        MethodArg::Mh | MethodArg::Rw => {
            let access = LocalAccess::new(&graph);
            let start = walk_start(&graph, &args.start, seed)?;
            match args.method {
                MethodArg::Mh => estimate_degree_rank_mh(
                    &access,
                    start,
                    node,
                    params.n,
                    args.sample_frac,
                    args.burn_in,
                    seed,
                )?,
                _ => estimate_degree_rank_rw(
                    &access,
                    start,
                    node,
                    params.n,
                    args.sample_frac,
                    args.burn_in,
                    seed,
                )?,
            }
        }
        MethodArg::ClosenessSigmoid => estimate_closeness_rank(&graph, node, args.slope)?,
    };
    println!(
        "node={} method={} rank={:.6}",
        args.node,
        est.method.as_str(),
        est.value
    );
    Ok(())
}

/// Ground truth unless the caller overrides any of the network parameters.
fn parameter_source(graph: &Graph, args: &EstimateArgs) -> rankest::Result<ParameterSource> {
    if args.n.is_none() && args.dmin.is_none() && args.dmax.is_none() && args.davg.is_none() {
        return Ok(ParameterSource::GroundTruth);
    }
    let truth = NetworkParams::from_graph(graph)?;
    Ok(ParameterSource::Provided(NetworkParams {
        n: args.n.unwrap_or(truth.n),
        degrees: DegreeStats {
            d_min: args.dmin.unwrap_or(truth.degrees.d_min),
            d_max: args.dmax.unwrap_or(truth.degrees.d_max),
            d_avg: args.davg.unwrap_or(truth.degrees.d_avg),
        },
    }))
}

fn walk_start(graph: &Graph, start: &Option<String>, seed: u64) -> rankest::Result<NodeId> {
    if let Some(label) = start {
        return resolve_node(graph, label);
    }
    // Evaluation mode: pick a seeded uniform start among non-isolated nodes.
    let n = graph.node_count();
    let mut pick = seed;
    for _ in 0..4 * n.max(16) {
        // splitmix64 step keeps this independent of the sampler stream
        pick = pick.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = pick;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^= z >> 31;
        let candidate = (z % n as u64) as usize;
        if graph.degree(candidate) > 0 {
            return Ok(candidate);
        }
    }
    Err(rankest::Error::Parameter(
        "no non-isolated start node found".into(),
    ))
}

fn evaluate(args: EvaluateArgs, seed: u64, quiet: bool) -> rankest::Result<()> {
    let graph = load_graph(&args.graph, quiet)?;
    let config = ExperimentConfig {
        methods: args.methods.iter().map(|&m| Method::from(m)).collect(),
        sample_frac: args.sample_frac,
        iterations: args.iterations,
        base_seed: seed,
        burn_in: args.burn_in,
        slope: args.slope,
        eval_nodes: match args.eval_nodes {
            EvalNodesArg::All => EvalNodes::All,
            EvalNodesArg::Stratified(count) => EvalNodes::StratifiedByRank(count),
        },
        graph_label: args.graph.display().to_string(),
    };
    let records = run_experiment(&graph, &config)?;
    let metadata = experiment_metadata(&graph, &config);
    let mut out = open_output(&args.output)?;
    emit_csv(&records, &config.methods, &metadata, &mut out)?;
    out.flush()?;
    if !quiet {
        eprintln!(
            "evaluated {} nodes x {} methods over {} iterations",
            records.len(),
            config.methods.len(),
            config.iterations
        );
    }
    Ok(())
}
