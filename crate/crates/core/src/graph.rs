//! Immutable simple undirected graph with dense node ids.
//!
//! Every other module consumes graphs only through this representation:
//! adjacency lists sorted ascending, external labels remapped to dense ids
//! in `[0, n)`, no self-loops, no duplicate edges. Graphs are immutable
//! after construction and safe to share across threads.

use std::collections::{HashMap, HashSet, VecDeque};
use std::io::{BufRead, Write};
use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};

/// Dense internal node id in `[0, n)`.
pub type NodeId = usize;

/// Minimum, maximum and average degree of a graph.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DegreeStats {
    pub d_min: usize,
    pub d_max: usize,
    /// Always `2m / n`.
    pub d_avg: f64,
}

/// Counts of input lines dropped while loading an edge list.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LoadStats {
    pub self_loops_dropped: usize,
    pub duplicate_edges_dropped: usize,
}

/// Simple undirected graph.
///
/// Invariants, enforced on construction:
/// - `v ∈ adj(u)` ⟺ `u ∈ adj(v)`;
/// - no self-loops, no duplicate neighbors;
/// - `m = Σ deg(u) / 2`;
/// - adjacency lists sorted ascending.
#[derive(Debug)]
pub struct Graph {
    adjacency: Vec<Vec<NodeId>>,
    m: usize,
    labels: Vec<String>,
    label_index: HashMap<String, NodeId>,
    // Counts full BFS traversals run over this graph (see `exact`).
    bfs_runs: AtomicU64,
}

impl Graph {
    /// Builds a graph over `n` nodes from an edge iterator.
    ///
    /// Self-loops and duplicate edges are dropped; labels default to the
    /// decimal form of each id. Node ids must be `< n`.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (NodeId, NodeId)>) -> Graph {
        let mut adjacency: Vec<Vec<NodeId>> = vec![Vec::new(); n];
        for (u, v) in edges {
            assert!(u < n && v < n, "edge ({u}, {v}) out of range for n = {n}");
            if u == v {
                continue;
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        let labels = (0..n).map(|i| i.to_string()).collect();
        Graph::finish(adjacency, labels)
    }

    fn finish(mut adjacency: Vec<Vec<NodeId>>, labels: Vec<String>) -> Graph {
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        let m = adjacency.iter().map(Vec::len).sum::<usize>() / 2;
        let label_index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        let g = Graph {
            adjacency,
            m,
            labels,
            label_index,
            bfs_runs: AtomicU64::new(0),
        };
        debug_assert!(g.validate().is_ok());
        g
    }

    /// Parses a whitespace-separated edge list.
    ///
    /// One edge per line, two labels per line; lines starting with `#` and
    /// blank lines are ignored. Labels are remapped to dense ids in
    /// first-appearance order. Self-loops and duplicate edges are dropped.
    pub fn load_edge_list<R: BufRead>(reader: R) -> Result<Graph> {
        Self::load_edge_list_with_stats(reader).map(|(g, _)| g)
    }

    /// Like [`Graph::load_edge_list`] but also reports dropped-line counts.
    pub fn load_edge_list_with_stats<R: BufRead>(reader: R) -> Result<(Graph, LoadStats)> {
        let mut labels: Vec<String> = Vec::new();
        let mut label_index: HashMap<String, NodeId> = HashMap::new();
        let mut adjacency: Vec<Vec<NodeId>> = Vec::new();
        let mut seen: HashSet<(NodeId, NodeId)> = HashSet::new();
        let mut stats = LoadStats::default();

        let intern = |label: &str,
                          labels: &mut Vec<String>,
                          adjacency: &mut Vec<Vec<NodeId>>,
                          label_index: &mut HashMap<String, NodeId>|
         -> NodeId {
            if let Some(&id) = label_index.get(label) {
                return id;
            }
            let id = labels.len();
            labels.push(label.to_string());
            label_index.insert(label.to_string(), id);
            adjacency.push(Vec::new());
            id
        };

        for (idx, line) in reader.lines().enumerate() {
            let line = line?;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = trimmed.split_whitespace().collect();
            if tokens.len() != 2 {
                return Err(Error::Parse {
                    line: idx + 1,
                    message: format!("expected two labels, found {}", tokens.len()),
                });
            }
            let u = intern(tokens[0], &mut labels, &mut adjacency, &mut label_index);
            let v = intern(tokens[1], &mut labels, &mut adjacency, &mut label_index);
            if u == v {
                stats.self_loops_dropped += 1;
                continue;
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                stats.duplicate_edges_dropped += 1;
                continue;
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }

        if labels.is_empty() {
            return Err(Error::EmptyEdgeList);
        }
        Ok((Graph::finish(adjacency, labels), stats))
    }

    /// Writes the graph back out as an edge list, one `label label` pair per
    /// line, each edge once with `u < v`, in ascending id order.
    ///
    /// Isolated nodes have no incident edge and are not representable.
    pub fn write_edge_list<W: Write>(&self, writer: &mut W) -> std::io::Result<()> {
        for u in 0..self.node_count() {
            for &v in &self.adjacency[u] {
                if v > u {
                    writeln!(writer, "{} {}", self.labels[u], self.labels[v])?;
                }
            }
        }
        Ok(())
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn degree(&self, u: NodeId) -> usize {
        self.adjacency[u].len()
    }

    /// Neighbors of `u`, sorted ascending.
    pub fn neighbors(&self, u: NodeId) -> &[NodeId] {
        &self.adjacency[u]
    }

    /// Degree of every node, indexed by id.
    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    /// External label of `u`.
    pub fn label(&self, u: NodeId) -> &str {
        &self.labels[u]
    }

    /// Internal id behind an external label, if present.
    pub fn node_by_label(&self, label: &str) -> Option<NodeId> {
        self.label_index.get(label).copied()
    }

    /// Exact degree statistics over all nodes.
    pub fn degree_stats(&self) -> Result<DegreeStats> {
        let n = self.node_count();
        if n == 0 {
            return Err(Error::Parameter(
                "degree statistics need at least one node".into(),
            ));
        }
        let mut d_min = usize::MAX;
        let mut d_max = 0;
        for list in &self.adjacency {
            d_min = d_min.min(list.len());
            d_max = d_max.max(list.len());
        }
        Ok(DegreeStats {
            d_min,
            d_max,
            d_avg: 2.0 * self.m as f64 / n as f64,
        })
    }

    /// Number of BFS traversals run over this graph so far.
    pub fn bfs_count(&self) -> u64 {
        self.bfs_runs.load(Ordering::Relaxed)
    }

    pub(crate) fn record_bfs(&self) {
        self.bfs_runs.fetch_add(1, Ordering::Relaxed);
    }

    pub(crate) fn add_bfs_runs(&self, runs: u64) {
        self.bfs_runs.fetch_add(runs, Ordering::Relaxed);
    }

    /// Component label per node, in discovery order, plus component count.
    fn component_labels(&self) -> (Vec<usize>, usize) {
        let n = self.node_count();
        let mut labels = vec![usize::MAX; n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for start in 0..n {
            if labels[start] != usize::MAX {
                continue;
            }
            labels[start] = count;
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adjacency[u] {
                    if labels[v] == usize::MAX {
                        labels[v] = count;
                        queue.push_back(v);
                    }
                }
            }
            count += 1;
        }
        (labels, count)
    }

    pub fn is_connected(&self) -> bool {
        self.node_count() <= 1 || self.component_labels().1 == 1
    }

    /// Induced subgraph on the largest connected component, plus the
    /// old-id → new-id mapping (`None` for dropped nodes).
    ///
    /// Size ties go to the component containing the smallest internal id.
    pub fn largest_connected_component(&self) -> (Graph, Vec<Option<NodeId>>) {
        let n = self.node_count();
        if n == 0 {
            return (Graph::from_edges(0, []), Vec::new());
        }
        let (labels, count) = self.component_labels();
        let mut sizes = vec![0usize; count];
        for &c in &labels {
            sizes[c] += 1;
        }
        // Components are discovered in ascending order of their smallest id,
        // so the first maximum wins ties.
        let best = sizes
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
            .map(|(c, _)| c)
            .unwrap();

        let mut mapping = vec![None; n];
        let mut kept = Vec::with_capacity(sizes[best]);
        for u in 0..n {
            if labels[u] == best {
                mapping[u] = Some(kept.len());
                kept.push(u);
            }
        }
        let mut adjacency = vec![Vec::new(); kept.len()];
        for (new_u, &old_u) in kept.iter().enumerate() {
            adjacency[new_u] = self.adjacency[old_u]
                .iter()
                .map(|&v| mapping[v].expect("neighbor in same component"))
                .collect();
        }
        let new_labels = kept.iter().map(|&u| self.labels[u].clone()).collect();
        (Graph::finish(adjacency, new_labels), mapping)
    }

    /// Checks the structural invariants; used by tests and debug builds.
    pub fn validate(&self) -> Result<()> {
        let n = self.node_count();
        let mut degree_total = 0;
        for u in 0..n {
            let list = &self.adjacency[u];
            degree_total += list.len();
            for window in list.windows(2) {
                if window[0] >= window[1] {
                    return Err(Error::Parameter(format!(
                        "adjacency of {u} not strictly ascending"
                    )));
                }
            }
            for &v in list {
                if v == u {
                    return Err(Error::Parameter(format!("self-loop at {u}")));
                }
                if v >= n {
                    return Err(Error::Parameter(format!("neighbor {v} out of range")));
                }
                if self.adjacency[v].binary_search(&u).is_err() {
                    return Err(Error::Parameter(format!("edge ({u}, {v}) not symmetric")));
                }
            }
        }
        if degree_total != 2 * self.m {
            return Err(Error::Parameter(format!(
                "edge count {} inconsistent with degree sum {degree_total}",
                self.m
            )));
        }
        Ok(())
    }
}
