//! Closeness-rank estimation from three BFS traversals.
//!
//! Sorted by rank, closeness values trace a sigmoid: plotting reverse rank
//! (highest closeness ↦ rank n) against closeness fits a four-parameter
//! logistic curve. Its two asymptotes are pinned by estimating the extreme
//! closeness values — the highest-degree node sits at or near the maximum,
//! and the node farthest from it sits at the minimum — which takes two BFS
//! traversals. One more BFS computes the queried node's closeness, and the
//! curve maps it to a rank. Total cost O(m) versus Θ(n·m) for the exact
//! ranking.

use crate::error::{Error, Result};
use crate::estimate::{clamp_rank, Method, RankEstimate};
use crate::exact::{bfs_distances, closeness_centrality, UNREACHED};
use crate::graph::{Graph, NodeId};

/// Default logistic slope at the midpoint.
pub const DEFAULT_SLOPE: f64 = 13.0;

/// Fitted logistic-curve parameters for one connected graph.
#[derive(Debug, Clone, Copy)]
pub struct SigmoidParams {
    /// Connected-component size the fit was made on.
    pub n: usize,
    /// Estimated closeness of the middle-ranked node.
    pub c_mid: f64,
    /// Slope of the logistic curve at the midpoint.
    pub p: f64,
    pub c_max_est: f64,
    pub c_min_est: f64,
}

/// The node of maximum degree, ties broken by smallest id. Its closeness is
/// at or near the maximum of the graph.
pub fn find_central_candidate(g: &Graph) -> NodeId {
    assert!(g.node_count() > 0, "empty graph has no central candidate");
    let mut best = 0;
    for u in 1..g.node_count() {
        if g.degree(u) > g.degree(best) {
            best = u;
        }
    }
    best
}

/// Estimates the extreme closeness values with exactly two BFS traversals.
///
/// BFS #1 from the central candidate yields its closeness (the maximum
/// estimate) and the farthest node (ties to the smallest id); BFS #2 from
/// that node yields the minimum estimate.
pub fn estimate_extremes(g: &Graph) -> Result<(f64, f64, NodeId)> {
    let n = g.node_count();
    if n < 2 {
        return Err(Error::Parameter(
            "extreme closeness estimation needs at least two nodes".into(),
        ));
    }
    let central = find_central_candidate(g);
    let dist = bfs_distances(g, central);

    let mut sum = 0usize;
    let mut farthest = central;
    let mut reachable = 0usize;
    for (v, &d) in dist.iter().enumerate() {
        if d == UNREACHED {
            return Err(Error::Disconnected {
                from: central,
                missing: v,
                reachable: dist.iter().filter(|&&x| x != UNREACHED).count(),
                total: n,
            });
        }
        reachable += 1;
        sum += d;
        if d > dist[farthest] {
            farthest = v;
        }
    }
    debug_assert_eq!(reachable, n);
    let c_max_est = (n - 1) as f64 / sum as f64;
    let c_min_est = closeness_centrality(g, farthest)?;
    Ok((c_max_est, c_min_est, farthest))
}

/// Midpoint of the estimated extremes, standing in for the closeness of the
/// middle-ranked node.
pub fn estimate_c_mid(c_max_est: f64, c_min_est: f64) -> f64 {
    (c_max_est + c_min_est) / 2.0
}

/// Reverse rank of a node with closeness `c_u`:
///
/// `ReverseRank(u) = n + (1 − n) / (1 + (c_u / c_mid)^p)`
///
/// The highest-closeness node has reverse rank near `n`, the lowest near 1.
pub fn reverse_rank(c_u: f64, params: &SigmoidParams) -> Result<f64> {
    if c_u <= 0.0 {
        return Err(Error::Parameter(format!(
            "closeness {c_u} must be positive"
        )));
    }
    if params.c_mid <= 0.0 || params.p <= 0.0 || params.n < 2 {
        return Err(Error::Parameter(
            "sigmoid parameters must have positive c_mid, positive slope and n >= 2".into(),
        ));
    }
    let n = params.n as f64;
    Ok(n + (1.0 - n) / (1.0 + (c_u / params.c_mid).powf(params.p)))
}

/// Converts a reverse rank into an actual rank: `n − reverse + 1`, clamped
/// into `[1, n]`.
pub fn actual_rank_from_reverse(reverse: f64, n: usize) -> f64 {
    clamp_rank(n as f64 - reverse + 1.0, n)
}

/// Fits the logistic parameters for a connected graph with two BFS
/// traversals. The result is immutable and may be shared across queries.
pub fn fit_sigmoid_params(g: &Graph, slope: f64) -> Result<SigmoidParams> {
    if slope <= 0.0 {
        return Err(Error::Parameter(format!("slope {slope} must be positive")));
    }
    let (c_max_est, c_min_est, _) = estimate_extremes(g)?;
    Ok(SigmoidParams {
        n: g.node_count(),
        c_mid: estimate_c_mid(c_max_est, c_min_est),
        p: slope,
        c_max_est,
        c_min_est,
    })
}

/// Closeness-rank estimate for `u` reusing already-fitted parameters; costs
/// one BFS.
pub fn estimate_closeness_rank_with_params(
    g: &Graph,
    params: &SigmoidParams,
    u: NodeId,
) -> Result<RankEstimate> {
    if params.n != g.node_count() {
        return Err(Error::Parameter(format!(
            "parameters fitted for n = {} but graph has n = {}",
            params.n,
            g.node_count()
        )));
    }
    let c_u = closeness_centrality(g, u)?;
    let reverse = reverse_rank(c_u, params)?;
    Ok(RankEstimate {
        node: u,
        value: actual_rank_from_reverse(reverse, params.n),
        method: Method::ClosenessSigmoid,
        sample_frac: None,
        seed: None,
    })
}

/// Full closeness-rank estimate for `u`: exactly three BFS traversals.
///
/// All computation happens on the largest connected component, with `n`
/// set to the component size; querying a node outside it is an error.
pub fn estimate_closeness_rank(g: &Graph, u: NodeId, slope: f64) -> Result<RankEstimate> {
    if u >= g.node_count() {
        return Err(Error::Parameter(format!("node {u} out of range")));
    }
    if g.is_connected() {
        let params = fit_sigmoid_params(g, slope)?;
        return estimate_closeness_rank_with_params(g, &params, u);
    }
    let (lcc, mapping) = g.largest_connected_component();
    let lu = mapping[u].ok_or(Error::OutsideLcc { node: u })?;
    let params = fit_sigmoid_params(&lcc, slope)?;
    let est = estimate_closeness_rank_with_params(&lcc, &params, lu)?;
    // The traversals ran on the component copy; attribute them to the
    // queried graph so the per-query budget stays observable.
    g.add_bfs_runs(lcc.bfs_count());
    Ok(RankEstimate { node: u, ..est })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{all_closeness, competition_ranks};
    use crate::generate::generate_ba;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (0..n - 1).map(|i| (i, i + 1)))
    }

    fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                edges.push((i, j));
            }
        }
        Graph::from_edges(n, edges)
    }

    fn params(n: usize, c_mid: f64, p: f64) -> SigmoidParams {
        SigmoidParams {
            n,
            c_mid,
            p,
            c_max_est: c_mid * 2.0,
            c_min_est: c_mid / 2.0,
        }
    }

    #[test]
    fn central_candidate_prefers_degree_then_id() {
        let star = Graph::from_edges(5, [(2, 0), (2, 1), (2, 3), (2, 4)]);
        assert_eq!(find_central_candidate(&star), 2);

        let c5 = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        assert_eq!(find_central_candidate(&c5), 0);

        let ba = generate_ba(1000, 5, 1).unwrap();
        let brute = (0..1000).max_by_key(|&u| (ba.degree(u), usize::MAX - u)).unwrap();
        assert_eq!(find_central_candidate(&ba), brute);
    }

    #[test]
    fn extremes_on_path_of_three() {
        let p3 = path(3);
        let (c_max, c_min, farthest) = estimate_extremes(&p3).unwrap();
        assert!((c_max - 1.0).abs() < 1e-12);
        assert_eq!(farthest, 0); // both ends tie at distance 1; smallest id
        assert!((c_min - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn extremes_on_complete_graph_coincide() {
        let k5 = complete(5);
        let (c_max, c_min, _) = estimate_extremes(&k5).unwrap();
        assert_eq!(c_max, 1.0);
        assert_eq!(c_min, 1.0);
    }

    #[test]
    fn extremes_cost_exactly_two_traversals() {
        let g = generate_ba(300, 3, 2).unwrap();
        let before = g.bfs_count();
        estimate_extremes(&g).unwrap();
        assert_eq!(g.bfs_count(), before + 2);
    }

    #[test]
    fn extremes_reject_disconnected_graphs() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]);
        assert!(matches!(
            estimate_extremes(&g),
            Err(Error::Disconnected { .. })
        ));
    }

    #[test]
    fn c_mid_is_the_midpoint() {
        assert!((estimate_c_mid(1.0, 2.0 / 3.0) - 5.0 / 6.0).abs() < 1e-12);
        assert_eq!(estimate_c_mid(0.4, 0.4), 0.4);
    }

    #[test]
    fn reverse_rank_examples() {
        // At the midpoint the logistic sits exactly halfway: (n + 1) / 2.
        let p = params(101, 0.5, 13.0);
        assert!((reverse_rank(0.5, &p).unwrap() - 51.0).abs() < 1e-9);

        // (1.0 / 0.5)^13 = 8192.
        let rev = reverse_rank(1.0, &p).unwrap();
        assert!((rev - (101.0 - 100.0 / 8193.0)).abs() < 1e-9);
        assert!((rev - 100.9878).abs() < 1e-4);

        // Far above the midpoint the curve saturates toward n.
        let rev = reverse_rank(50.0, &p).unwrap();
        assert!(rev > 100.999_999);
        assert!(rev <= 101.0);

        assert!(matches!(
            reverse_rank(0.0, &p),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn actual_rank_conversion() {
        assert_eq!(actual_rank_from_reverse(51.0, 101), 51.0);
        assert_eq!(actual_rank_from_reverse(101.0, 101), 1.0);
        assert_eq!(actual_rank_from_reverse(1.0, 101), 101.0);
    }

    #[test]
    fn midpoint_estimate_is_self_dual() {
        let p = params(2001, 0.37, 13.0);
        let rev = reverse_rank(0.37, &p).unwrap();
        assert_eq!(actual_rank_from_reverse(rev, 2001), 1001.0);
    }

    #[test]
    fn estimate_saturates_at_the_extremes() {
        let g = generate_ba(2000, 5, 1).unwrap();
        let central = find_central_candidate(&g);
        let (_, _, farthest) = estimate_extremes(&g).unwrap();

        // The curve saturates toward rank 1 and rank n at the asymptotes; on
        // a generated graph the extreme closeness values sit close enough to
        // the midpoint that "near" means the outer fifths of the range.
        let top = estimate_closeness_rank(&g, central, DEFAULT_SLOPE).unwrap();
        assert!(top.value < 0.2 * 2000.0, "central estimate {}", top.value);

        let bottom = estimate_closeness_rank(&g, farthest, DEFAULT_SLOPE).unwrap();
        assert!(
            bottom.value > 0.8 * 2000.0,
            "farthest estimate {}",
            bottom.value
        );
        assert!(top.value < bottom.value);
    }

    #[test]
    fn estimate_uses_exactly_three_traversals() {
        let g = generate_ba(500, 4, 9).unwrap();
        for u in [0, 17, 499] {
            let before = g.bfs_count();
            estimate_closeness_rank(&g, u, DEFAULT_SLOPE).unwrap();
            assert_eq!(g.bfs_count(), before + 3);
        }
    }

    #[test]
    fn estimate_filters_to_lcc_and_counts_traversals() {
        // Path of five plus an isolated edge.
        let g = Graph::from_edges(7, [(0, 1), (1, 2), (2, 3), (3, 4), (5, 6)]);
        let before = g.bfs_count();
        let est = estimate_closeness_rank(&g, 2, DEFAULT_SLOPE).unwrap();
        assert_eq!(g.bfs_count(), before + 3);
        assert_eq!(est.node, 2);
        assert!((1.0..=5.0).contains(&est.value));

        assert!(matches!(
            estimate_closeness_rank(&g, 5, DEFAULT_SLOPE),
            Err(Error::OutsideLcc { node: 5 })
        ));
    }

    #[test]
    fn estimates_are_anti_monotone_in_closeness() {
        let g = generate_ba(800, 4, 14).unwrap();
        let params = fit_sigmoid_params(&g, DEFAULT_SLOPE).unwrap();
        let values = all_closeness(&g).unwrap();
        let mut pairs: Vec<(f64, f64)> = (0..g.node_count())
            .step_by(37)
            .map(|u| {
                let est = estimate_closeness_rank_with_params(&g, &params, u).unwrap();
                (values.values[u], est.value)
            })
            .collect();
        pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        for w in pairs.windows(2) {
            assert!(w[1].1 <= w[0].1 + 1e-9, "{w:?}");
        }
    }

    #[test]
    fn sorted_closeness_is_monotone_against_reverse_rank() {
        // Reverse rank k corresponds to the k-th smallest closeness value,
        // so sorting the exact values ascending must never decrease.
        let g = generate_ba(600, 3, 4).unwrap();
        let mut values = all_closeness(&g).unwrap().values;
        values.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for w in values.windows(2) {
            assert!(w[1] >= w[0]);
        }
    }

    #[test]
    fn estimates_track_exact_ranks() {
        let g = generate_ba(500, 5, 3).unwrap();
        let exact = competition_ranks(&all_closeness(&g).unwrap());
        let params = fit_sigmoid_params(&g, DEFAULT_SLOPE).unwrap();
        // Coarse fidelity check: top-decile nodes estimated well above
        // bottom-decile nodes.
        let mut order: Vec<usize> = (0..500).collect();
        order.sort_by_key(|&u| exact[u]);
        let top_mean: f64 = order[..50]
            .iter()
            .map(|&u| {
                estimate_closeness_rank_with_params(&g, &params, u)
                    .unwrap()
                    .value
            })
            .sum::<f64>()
            / 50.0;
        let bottom_mean: f64 = order[450..]
            .iter()
            .map(|&u| {
                estimate_closeness_rank_with_params(&g, &params, u)
                    .unwrap()
                    .value
            })
            .sum::<f64>()
            / 50.0;
        assert!(
            top_mean < bottom_mean,
            "top decile {top_mean} not above bottom decile {bottom_mean}"
        );
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(128))]

            #[test]
            fn conversion_is_anti_monotone_and_in_range(
                n in 2usize..10_000,
                c_mid in 0.01f64..1.0,
                p in 1.0f64..20.0,
                c_a in 0.001f64..2.0,
                c_b in 0.001f64..2.0,
            ) {
                let sp = params(n, c_mid, p);
                let ra = actual_rank_from_reverse(reverse_rank(c_a, &sp).unwrap(), n);
                let rb = actual_rank_from_reverse(reverse_rank(c_b, &sp).unwrap(), n);
                prop_assert!((1.0..=n as f64).contains(&ra));
                if c_a >= c_b {
                    prop_assert!(ra <= rb + 1e-9);
                }
            }
        }
    }
}
