//! End-to-end tests running the compiled binary.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn rankest(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rankest"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

fn generate_ba(dir: &Path, n: usize) -> std::path::PathBuf {
    let path = dir.join("graph.txt");
    let out = rankest(&[
        "generate",
        "--model",
        "ba",
        "--n",
        &n.to_string(),
        "--m-attach",
        "5",
        "--seed",
        "42",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{out:?}");
    path
}

#[test]
fn generate_then_exact_rank_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let graph = generate_ba(dir.path(), 1000);

    let out = rankest(&[
        "exact-rank",
        "--graph",
        graph.to_str().unwrap(),
        "--metric",
        "degree",
        "--node",
        "0",
    ]);
    assert!(out.status.success());
    let line = stdout(&out);
    assert!(line.starts_with("node=0 method=exact-degree rank="), "{line}");
    let rank: usize = line.trim().rsplit('=').next().unwrap().parse().unwrap();
    assert!((1..=1000).contains(&rank));
}

#[test]
fn estimate_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let graph = generate_ba(dir.path(), 500);
    let args = [
        "estimate",
        "--method",
        "rw",
        "--graph",
        graph.to_str().unwrap(),
        "--node",
        "3",
        "--sample-frac",
        "0.05",
        "--seed",
        "11",
    ];
    let a = rankest(&args);
    let b = rankest(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("node=3 method=rw rank="));
}

#[test]
fn every_method_estimates_through_the_cli() {
    let dir = tempfile::tempdir().unwrap();
    let graph = generate_ba(dir.path(), 400);
    for method in ["pl", "us", "mh", "rw", "closeness-sigmoid"] {
        let out = rankest(&[
            "estimate",
            "--method",
            method,
            "--graph",
            graph.to_str().unwrap(),
            "--node",
            "17",
            "--seed",
            "5",
        ]);
        assert!(out.status.success(), "{method}: {out:?}");
        let line = stdout(&out);
        assert!(line.starts_with(&format!("node=17 method={method} rank=")), "{line}");
        let value: f64 = line.trim().rsplit('=').next().unwrap().parse().unwrap();
        assert!((1.0..=400.0).contains(&value), "{method}: {value}");
    }
}

#[test]
fn provided_parameters_override_ground_truth() {
    let dir = tempfile::tempdir().unwrap();
    let graph = generate_ba(dir.path(), 300);
    let base = [
        "estimate",
        "--method",
        "pl",
        "--graph",
        graph.to_str().unwrap(),
        "--node",
        "250",
    ];
    let truth = rankest(&base);
    let mut overridden_args = base.to_vec();
    overridden_args.extend(["--n", "10000"]);
    let overridden = rankest(&overridden_args);
    assert!(truth.status.success() && overridden.status.success());
    assert_ne!(truth.stdout, overridden.stdout);
}

#[test]
fn evaluate_writes_schema_compliant_csv() {
    let dir = tempfile::tempdir().unwrap();
    let graph = generate_ba(dir.path(), 400);
    let csv = dir.path().join("err.csv");
    let out = rankest(&[
        "evaluate",
        "--methods",
        "us,mh,rw",
        "--graph",
        graph.to_str().unwrap(),
        "--iterations",
        "3",
        "--sample-frac",
        "0.05",
        "--seed",
        "7",
        "--eval-nodes",
        "12",
        "-o",
        csv.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{out:?}");

    let text = fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines().peekable();
    while lines.peek().is_some_and(|l| l.starts_with('#')) {
        lines.next();
    }
    assert_eq!(
        lines.next().unwrap(),
        "node,actual_rank,us_mean_est,us_mae,us_std,mh_mean_est,mh_mae,mh_std,rw_mean_est,rw_mae,rw_std"
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 12);
    for row in rows {
        assert_eq!(row.split(',').count(), 11);
    }
}

#[test]
fn inputs_are_never_mutated() {
    let dir = tempfile::tempdir().unwrap();
    let graph = generate_ba(dir.path(), 300);
    let before = fs::read(&graph).unwrap();
    for args in [
        vec!["exact-rank", "--graph", graph.to_str().unwrap(), "--metric", "closeness", "--node", "1"],
        vec!["estimate", "--method", "us", "--graph", graph.to_str().unwrap(), "--node", "1"],
    ] {
        assert!(rankest(&args).status.success());
    }
    assert_eq!(before, fs::read(&graph).unwrap());
}

#[test]
fn usage_errors_exit_one() {
    let out = rankest(&["estimate", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!String::from_utf8(out.stderr).unwrap().is_empty());

    let out = rankest(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(1));

    // Out-of-range flag values are usage errors too.
    let out = rankest(&[
        "estimate", "--method", "us", "--graph", "x", "--node", "0", "--sample-frac", "1.5",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn domain_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();

    // Missing input file.
    let out = rankest(&[
        "exact-rank",
        "--graph",
        dir.path().join("missing.txt").to_str().unwrap(),
        "--metric",
        "degree",
        "--node",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(2));

    // Degenerate degree distribution: a cycle has d_avg == d_min.
    let cycle = dir.path().join("cycle.txt");
    fs::write(&cycle, "0 1\n1 2\n2 3\n3 0\n").unwrap();
    let out = rankest(&[
        "estimate", "--method", "pl", "--graph", cycle.to_str().unwrap(), "--node", "0",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("degenerate"));

    // Node outside the largest connected component.
    let split = dir.path().join("split.txt");
    fs::write(&split, "0 1\n1 2\n3 4\n").unwrap();
    let out = rankest(&[
        "exact-rank", "--graph", split.to_str().unwrap(), "--metric", "closeness", "--node", "3",
    ]);
    assert_eq!(out.status.code(), Some(2));

    // Unknown node label.
    let out = rankest(&[
        "exact-rank", "--graph", split.to_str().unwrap(), "--metric", "degree", "--node", "zz",
    ]);
    assert_eq!(out.status.code(), Some(2));

    // Generator parameter violation.
    let out = rankest(&["generate", "--model", "ba", "--n", "3", "--m-attach", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn help_lists_every_default() {
    let estimate = stdout(&rankest(&["estimate", "--help"]));
    for needle in ["0.01", "100", "13", "42"] {
        assert!(estimate.contains(needle), "estimate --help misses {needle}");
    }
    let evaluate = stdout(&rankest(&["evaluate", "--help"]));
    for needle in ["0.01", "20", "100", "13", "all"] {
        assert!(evaluate.contains(needle), "evaluate --help misses {needle}");
    }
    let generate = stdout(&rankest(&["generate", "--help"]));
    assert!(generate.contains('5'), "generate --help misses m-attach default");
}

#[test]
fn quiet_silences_progress_chatter() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.txt");
    let noisy = rankest(&[
        "generate", "--model", "er", "--n", "50", "--p-edge", "0.2", "-o", path.to_str().unwrap(),
    ]);
    assert!(!noisy.stderr.is_empty());
    let quiet = rankest(&[
        "generate", "--model", "er", "--n", "50", "--p-edge", "0.2", "--quiet", "-o",
        path.to_str().unwrap(),
    ]);
    assert!(quiet.stderr.is_empty());
    assert!(quiet.status.success());
}

#[test]
fn rank_threads_caps_workers() {
    let dir = tempfile::tempdir().unwrap();
    let graph = generate_ba(dir.path(), 200);
    let out = Command::new(env!("CARGO_BIN_EXE_rankest"))
        .env("RANK_THREADS", "1")
        .args([
            "evaluate", "--methods", "us", "--graph", graph.to_str().unwrap(), "--iterations",
            "2", "--eval-nodes", "5",
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{out:?}");

    let bad = Command::new(env!("CARGO_BIN_EXE_rankest"))
        .env("RANK_THREADS", "zero")
        .args(["generate", "--model", "er", "--n", "10"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
}
