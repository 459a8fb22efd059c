//! Graph and dataset data model, TUDataset text-format parsing and
//! serialization, one-hot node features, the symmetrically normalized
//! self-looped adjacency, and seeded dataset splitting.

use std::collections::BTreeMap;
use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;

/// A single undirected graph from a dataset.
///
/// Edges are stored once per unordered pair with `a < b`, node indices
/// are 0-based and local to the graph. `id` keeps the 1-based position
/// the graph had in the dataset files.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    pub id: usize,
    pub num_nodes: usize,
    pub edges: Vec<(usize, usize)>,
    pub label: usize,
    pub node_labels: Option<Vec<usize>>,
}

impl Graph {
    /// Builds a graph, normalizing and validating the edge list: pairs
    /// are stored with the smaller endpoint first, duplicates are
    /// rejected, self-loops and out-of-range endpoints are errors.
    pub fn new(
        id: usize,
        num_nodes: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
        label: usize,
        node_labels: Option<Vec<usize>>,
    ) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut normalized = Vec::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::MalformedDataset(format!(
                    "self-loop at node {a} in graph {id}"
                )));
            }
            if a >= num_nodes || b >= num_nodes {
                return Err(Error::MalformedDataset(format!(
                    "edge ({a}, {b}) out of range in graph {id} with {num_nodes} nodes"
                )));
            }
            let e = (a.min(b), a.max(b));
            if seen.insert(e) {
                normalized.push(e);
            } else {
                return Err(Error::MalformedDataset(format!(
                    "duplicate edge ({}, {}) in graph {id}",
                    e.0, e.1
                )));
            }
        }
        normalized.sort_unstable();
        if let Some(labels) = &node_labels {
            if labels.len() != num_nodes {
                return Err(Error::MalformedDataset(format!(
                    "graph {id} has {num_nodes} nodes but {} node labels",
                    labels.len()
                )));
            }
        }
        Ok(Self {
            id,
            num_nodes,
            edges: normalized,
            label,
            node_labels,
        })
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.num_nodes];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    pub fn adjacency_sets(&self) -> Vec<HashSet<usize>> {
        let mut adj = vec![HashSet::new(); self.num_nodes];
        for &(a, b) in &self.edges {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        adj
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        let e = (a.min(b), a.max(b));
        self.edges.binary_search(&e).is_ok()
    }

    /// Returns a copy of the graph with nodes relabeled by `perm`,
    /// where old node `n` becomes `perm[n]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Graph> {
        assert_eq!(perm.len(), self.num_nodes);
        let edges = self
            .edges
            .iter()
            .map(|&(a, b)| (perm[a], perm[b]))
            .collect::<Vec<_>>();
        let node_labels = self.node_labels.as_ref().map(|labels| {
            let mut out = vec![0usize; self.num_nodes];
            for (n, &l) in labels.iter().enumerate() {
                out[perm[n]] = l;
            }
            out
        });
        Graph::new(self.id, self.num_nodes, edges, self.label, node_labels)
    }
}

/// An ordered collection of graphs parsed from one TUDataset directory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dataset {
    pub name: String,
    pub graphs: Vec<Graph>,
    /// Size F of the one-hot node feature space (0 when the dataset has
    /// no node labels).
    pub node_label_alphabet: usize,
    pub num_classes: usize,
}

impl Dataset {
    pub fn new(name: impl Into<String>, graphs: Vec<Graph>) -> Result<Self> {
        let mut alphabet = 0usize;
        let mut max_class = 0usize;
        let mut any_labels = false;
        for (pos, g) in graphs.iter().enumerate() {
            if g.id != pos + 1 {
                return Err(Error::MalformedDataset(format!(
                    "graph ids must be 1..T contiguous, found id {} at position {}",
                    g.id,
                    pos + 1
                )));
            }
            max_class = max_class.max(g.label);
            if let Some(labels) = &g.node_labels {
                any_labels = true;
                for &l in labels {
                    alphabet = alphabet.max(l + 1);
                }
            }
        }
        if any_labels {
            for g in &graphs {
                if g.node_labels.is_none() {
                    return Err(Error::MalformedDataset(format!(
                        "graph {} lacks node labels while others have them",
                        g.id
                    )));
                }
            }
        }
        Ok(Self {
            name: name.into(),
            graphs,
            node_label_alphabet: alphabet,
            num_classes: max_class + 1,
        })
    }

    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    /// 1-based lookup matching `Graph::id`.
    pub fn graph(&self, id: usize) -> &Graph {
        &self.graphs[id - 1]
    }

    pub fn total_nodes(&self) -> usize {
        self.graphs.iter().map(|g| g.num_nodes).sum()
    }
}

fn read_lines(path: &Path) -> Result<Vec<String>> {
    if !path.exists() {
        return Err(Error::MissingFile(path.to_path_buf()));
    }
    let text = fs::read_to_string(path).map_err(|source| Error::UnreadableFile {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(text
        .lines()
        .map(|l| l.trim().to_string())
        .filter(|l| !l.is_empty())
        .collect())
}

fn parse_int(token: &str, what: &str) -> Result<i64> {
    token
        .trim()
        .parse::<i64>()
        .map_err(|_| Error::MalformedDataset(format!("non-integer {what} token: `{token}`")))
}

/// Parses the TUDataset text format from `dir`, expecting files named
/// `{name}_A.txt`, `{name}_graph_indicator.txt`, `{name}_graph_labels.txt`
/// and optionally `{name}_node_labels.txt`.
///
/// Edge files list each undirected edge in both directions; the edge is
/// stored once. A direction listed without its reverse is accepted with
/// a logged warning. Graph labels are remapped to 0-based contiguous
/// classes in ascending order of their raw values.
pub fn parse_tudataset(dir: &Path, name: &str) -> Result<Dataset> {
    let file = |suffix: &str| -> PathBuf { dir.join(format!("{name}_{suffix}.txt")) };

    let indicator_lines = read_lines(&file("graph_indicator"))?;
    let graph_label_lines = read_lines(&file("graph_labels"))?;
    let edge_lines = read_lines(&file("A"))?;
    let node_label_path = file("node_labels");
    let node_label_lines = if node_label_path.exists() {
        Some(read_lines(&node_label_path)?)
    } else {
        None
    };

    let num_nodes_total = indicator_lines.len();
    let num_graphs = graph_label_lines.len();

    // node -> graph assignment (both 1-based in the file)
    let mut node_graph = Vec::with_capacity(num_nodes_total);
    for line in &indicator_lines {
        let gid = parse_int(line, "graph indicator")?;
        if gid < 1 || gid as usize > num_graphs {
            return Err(Error::MalformedDataset(format!(
                "graph indicator {gid} outside 1..{num_graphs}"
            )));
        }
        node_graph.push(gid as usize);
    }

    let mut node_counts = vec![0usize; num_graphs];
    let mut local_index = Vec::with_capacity(num_nodes_total);
    for &gid in &node_graph {
        local_index.push(node_counts[gid - 1]);
        node_counts[gid - 1] += 1;
    }
    if node_counts.contains(&0) {
        return Err(Error::MalformedDataset(
            "a graph listed in graph_labels has no nodes".into(),
        ));
    }

    // raw graph labels, remapped to contiguous 0-based classes
    let raw_labels = graph_label_lines
        .iter()
        .map(|l| parse_int(l, "graph label"))
        .collect::<Result<Vec<_>>>()?;
    let class_map: BTreeMap<i64, usize> = raw_labels
        .iter()
        .copied()
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .enumerate()
        .map(|(i, raw)| (raw, i))
        .collect();

    let node_labels_raw = match &node_label_lines {
        Some(lines) => {
            if lines.len() != num_nodes_total {
                return Err(Error::MalformedDataset(format!(
                    "{} node labels for {} nodes",
                    lines.len(),
                    num_nodes_total
                )));
            }
            let mut labels = Vec::with_capacity(num_nodes_total);
            for line in lines {
                // Some datasets prefix node labels with an attribute
                // count; the label is the last comma-separated token.
                let token = line.rsplit(',').next().unwrap_or(line);
                let l = parse_int(token, "node label")?;
                if l < 0 {
                    return Err(Error::MalformedDataset(format!("negative node label {l}")));
                }
                labels.push(l as usize);
            }
            Some(labels)
        }
        None => None,
    };

    // Collect directed edge listings, then pair them up.
    let mut directed = HashSet::new();
    for line in &edge_lines {
        let mut parts = line.split(',');
        let a = parse_int(parts.next().unwrap_or(""), "edge endpoint")?;
        let b = match parts.next() {
            Some(t) => parse_int(t, "edge endpoint")?,
            None => {
                return Err(Error::MalformedDataset(format!(
                    "edge line `{line}` lacks a second endpoint"
                )))
            }
        };
        for v in [a, b] {
            if v < 1 || v as usize > num_nodes_total {
                return Err(Error::MalformedDataset(format!(
                    "edge endpoint {v} outside 1..{num_nodes_total}"
                )));
            }
        }
        let (a, b) = (a as usize, b as usize);
        if node_graph[a - 1] != node_graph[b - 1] {
            return Err(Error::MalformedDataset(format!(
                "edge ({a}, {b}) crosses graphs {} and {}",
                node_graph[a - 1],
                node_graph[b - 1]
            )));
        }
        if a == b {
            log::warn!("dropping self-loop at global node {a}");
            continue;
        }
        directed.insert((a, b));
    }

    let mut per_graph_edges: Vec<Vec<(usize, usize)>> = vec![Vec::new(); num_graphs];
    for &(a, b) in &directed {
        if a < b {
            if !directed.contains(&(b, a)) {
                log::warn!("edge ({a}, {b}) listed in one direction only; accepting");
            }
            let gid = node_graph[a - 1];
            per_graph_edges[gid - 1].push((local_index[a - 1], local_index[b - 1]));
        } else if !directed.contains(&(b, a)) {
            // reverse-only listing, keep it
            log::warn!("edge ({b}, {a}) listed in one direction only; accepting");
            let gid = node_graph[a - 1];
            per_graph_edges[gid - 1].push((local_index[b - 1], local_index[a - 1]));
        }
    }

    let mut per_graph_node_labels: Vec<Option<Vec<usize>>> = match &node_labels_raw {
        Some(_) => (0..num_graphs)
            .map(|g| Some(Vec::with_capacity(node_counts[g])))
            .collect(),
        None => vec![None; num_graphs],
    };
    if let Some(labels) = &node_labels_raw {
        for (node, &l) in labels.iter().enumerate() {
            let gid = node_graph[node];
            per_graph_node_labels[gid - 1].as_mut().unwrap().push(l);
        }
    }

    let mut graphs = Vec::with_capacity(num_graphs);
    for (g, edges) in per_graph_edges.into_iter().enumerate() {
        graphs.push(Graph::new(
            g + 1,
            node_counts[g],
            edges,
            class_map[&raw_labels[g]],
            per_graph_node_labels[g].take(),
        )?);
    }
    Dataset::new(name, graphs)
}

/// Writes a dataset back to the TUDataset text format (both edge
/// directions, 1-based ids). Inverse of [`parse_tudataset`] up to
/// whitespace.
pub fn write_tudataset(dataset: &Dataset, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)?;
    let name = &dataset.name;
    let mut indicator = String::new();
    let mut labels = String::new();
    let mut edges = String::new();
    let mut node_labels = String::new();
    let mut offset = 0usize;
    let has_node_labels = dataset.graphs.iter().all(|g| g.node_labels.is_some());
    for g in &dataset.graphs {
        for _ in 0..g.num_nodes {
            indicator.push_str(&format!("{}\n", g.id));
        }
        labels.push_str(&format!("{}\n", g.label));
        for &(a, b) in &g.edges {
            edges.push_str(&format!("{}, {}\n", offset + a + 1, offset + b + 1));
            edges.push_str(&format!("{}, {}\n", offset + b + 1, offset + a + 1));
        }
        if let Some(nl) = &g.node_labels {
            for l in nl {
                node_labels.push_str(&format!("{l}\n"));
            }
        }
        offset += g.num_nodes;
    }
    fs::write(dir.join(format!("{name}_A.txt")), edges)?;
    fs::write(dir.join(format!("{name}_graph_indicator.txt")), indicator)?;
    fs::write(dir.join(format!("{name}_graph_labels.txt")), labels)?;
    if has_node_labels {
        fs::write(dir.join(format!("{name}_node_labels.txt")), node_labels)?;
    }
    Ok(())
}

/// One-hot node label features X for every graph, each N_i x F.
pub fn one_hot_features(dataset: &Dataset) -> Result<Vec<DenseMatrix>> {
    let f = dataset.node_label_alphabet;
    if f == 0 {
        return Err(Error::NoNodeLabels);
    }
    dataset
        .graphs
        .iter()
        .map(|g| {
            let labels = g.node_labels.as_ref().ok_or(Error::NoNodeLabels)?;
            let mut x = DenseMatrix::zeros(g.num_nodes, f);
            for (n, &l) in labels.iter().enumerate() {
                x.set(n, l, 1.0);
            }
            Ok(x)
        })
        .collect()
}

/// The symmetrically normalized self-looped adjacency
/// D^{-1/2} (A + I) D^{-1/2} with D = diag((A + I) 1).
pub fn normalized_adjacency(graph: &Graph) -> DenseMatrix {
    let n = graph.num_nodes;
    let deg = graph.degrees();
    let inv_sqrt: Vec<f64> = deg
        .iter()
        .map(|&d| 1.0 / ((d as f64 + 1.0).sqrt()))
        .collect();
    let mut out = DenseMatrix::zeros(n, n);
    for (i, &v) in inv_sqrt.iter().enumerate() {
        out.set(i, i, v * v);
    }
    for &(a, b) in &graph.edges {
        let v = inv_sqrt[a] * inv_sqrt[b];
        out.set(a, b, v);
        out.set(b, a, v);
    }
    out
}

/// Split ratios for validation / test / fully-observed / missing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitRatios {
    pub val: f64,
    pub test: f64,
    pub full: f64,
    pub miss: f64,
}

impl SplitRatios {
    pub const DEFAULT: SplitRatios = SplitRatios {
        val: 0.1,
        test: 0.1,
        full: 0.3,
        miss: 0.5,
    };

    pub fn validate(&self) -> Result<()> {
        let parts = [self.val, self.test, self.full, self.miss];
        if parts.iter().any(|&r| r <= 0.0) {
            return Err(Error::InvalidValue {
                key: "ratios".into(),
                reason: "all split ratios must be positive".into(),
            });
        }
        let sum: f64 = parts.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidValue {
                key: "ratios".into(),
                reason: format!("split ratios must sum to 1, got {sum}"),
            });
        }
        Ok(())
    }
}

/// A seeded partition of the 1-based graph ids into the four roles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitPlan {
    pub seed: u64,
    pub val_ids: Vec<usize>,
    pub test_ids: Vec<usize>,
    pub full_ids: Vec<usize>,
    pub miss_ids: Vec<usize>,
}

/// Partitions `{1..T}` by a seeded uniform permutation. Sizes are
/// `floor(ratio * T)` for val, test and full; the remainder goes to
/// miss, keeping it the largest set.
pub fn split_dataset(dataset: &Dataset, ratios: SplitRatios, seed: u64) -> Result<SplitPlan> {
    ratios.validate()?;
    let t = dataset.len();
    let mut ids: Vec<usize> = (1..=t).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    ids.shuffle(&mut rng);

    let n_val = (ratios.val * t as f64).floor() as usize;
    let n_test = (ratios.test * t as f64).floor() as usize;
    let n_full = (ratios.full * t as f64).floor() as usize;
    let n_miss = t.saturating_sub(n_val + n_test + n_full);

    for (name, n) in [
        ("val", n_val),
        ("test", n_test),
        ("full", n_full),
        ("miss", n_miss),
    ] {
        if n == 0 {
            return Err(Error::EmptyPartition(name.into()));
        }
    }

    let take = |n: usize, rest: &mut std::vec::IntoIter<usize>| -> Vec<usize> {
        let mut part: Vec<usize> = rest.by_ref().take(n).collect();
        part.sort_unstable();
        part
    };
    let mut it = ids.into_iter();
    let val_ids = take(n_val, &mut it);
    let test_ids = take(n_test, &mut it);
    let full_ids = take(n_full, &mut it);
    let miss_ids = take(n_miss, &mut it);

    Ok(SplitPlan {
        seed,
        val_ids,
        test_ids,
        full_ids,
        miss_ids,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;
    use tempfile::TempDir;

    fn write_fixture(dir: &Path, name: &str, files: &[(&str, &str)]) {
        for (suffix, content) in files {
            let mut f = fs::File::create(dir.join(format!("{name}_{suffix}.txt"))).unwrap();
            f.write_all(content.as_bytes()).unwrap();
        }
    }

    #[test]
    fn parse_synthetic_fixture() {
        let tmp = TempDir::new().unwrap();
        write_fixture(
            tmp.path(),
            "TOY",
            &[
                ("A", "1, 2\n2, 1\n2, 3\n3, 2\n1, 3\n3, 1\n4, 5\n5, 4\n"),
                ("graph_indicator", "1\n1\n1\n2\n2\n"),
                ("graph_labels", "1\n2\n"),
                ("node_labels", "0\n1\n2\n0\n1\n"),
            ],
        );
        let ds = parse_tudataset(tmp.path(), "TOY").unwrap();
        assert_eq!(ds.len(), 2);
        // graph 1 is a triangle
        assert_eq!(ds.graph(1).num_nodes, 3);
        assert_eq!(ds.graph(1).edges, vec![(0, 1), (0, 2), (1, 2)]);
        // graph 2 is a single edge
        assert_eq!(ds.graph(2).num_nodes, 2);
        assert_eq!(ds.graph(2).edges, vec![(0, 1)]);
        assert_eq!(ds.num_classes, 2);
        assert_eq!(ds.node_label_alphabet, 3);
    }

    #[test]
    fn parse_rejects_out_of_range_edge() {
        let tmp = TempDir::new().unwrap();
        write_fixture(
            tmp.path(),
            "BAD",
            &[
                ("A", "6, 1\n1, 6\n"),
                ("graph_indicator", "1\n1\n1\n2\n2\n"),
                ("graph_labels", "0\n1\n"),
            ],
        );
        let err = parse_tudataset(tmp.path(), "BAD").unwrap_err();
        assert_eq!(err.category(), "MalformedDataset");
    }

    #[test]
    fn parse_rejects_cross_graph_edge() {
        let tmp = TempDir::new().unwrap();
        write_fixture(
            tmp.path(),
            "BAD",
            &[
                ("A", "1, 4\n4, 1\n"),
                ("graph_indicator", "1\n1\n1\n2\n2\n"),
                ("graph_labels", "0\n1\n"),
            ],
        );
        let err = parse_tudataset(tmp.path(), "BAD").unwrap_err();
        assert_eq!(err.category(), "MalformedDataset");
    }

    #[test]
    fn parse_rejects_non_integer_token() {
        let tmp = TempDir::new().unwrap();
        write_fixture(
            tmp.path(),
            "BAD",
            &[
                ("A", "1, x\n"),
                ("graph_indicator", "1\n1\n"),
                ("graph_labels", "0\n"),
            ],
        );
        let err = parse_tudataset(tmp.path(), "BAD").unwrap_err();
        assert_eq!(err.category(), "MalformedDataset");
    }

    #[test]
    fn missing_required_file() {
        let tmp = TempDir::new().unwrap();
        let err = parse_tudataset(tmp.path(), "NONE").unwrap_err();
        assert_eq!(err.category(), "MissingFile");
    }

    #[test]
    fn roundtrip_serialization() {
        let tmp = TempDir::new().unwrap();
        write_fixture(
            tmp.path(),
            "TOY",
            &[
                ("A", "1, 2\n2, 1\n2, 3\n3, 2\n1, 3\n3, 1\n4, 5\n5, 4\n"),
                ("graph_indicator", "1\n1\n1\n2\n2\n"),
                ("graph_labels", "1\n2\n"),
                ("node_labels", "0\n1\n2\n0\n1\n"),
            ],
        );
        let ds = parse_tudataset(tmp.path(), "TOY").unwrap();
        let out = TempDir::new().unwrap();
        write_tudataset(&ds, out.path()).unwrap();
        let reparsed = parse_tudataset(out.path(), "TOY").unwrap();
        assert_eq!(ds, reparsed);
    }

    #[test]
    fn one_hot_basic() {
        let g = Graph::new(1, 3, [(0, 1)], 0, Some(vec![0, 2, 1])).unwrap();
        let ds = Dataset::new("x", vec![g]).unwrap();
        let x = one_hot_features(&ds).unwrap();
        assert_eq!(x[0].row(0), &[1.0, 0.0, 0.0]);
        assert_eq!(x[0].row(1), &[0.0, 0.0, 1.0]);
        assert_eq!(x[0].row(2), &[0.0, 1.0, 0.0]);
    }

    #[test]
    fn one_hot_requires_labels() {
        let g = Graph::new(1, 2, [(0, 1)], 0, None).unwrap();
        let ds = Dataset::new("x", vec![g]).unwrap();
        assert_eq!(
            one_hot_features(&ds).unwrap_err().category(),
            "NoNodeLabels"
        );
    }

    #[test]
    fn normalized_adjacency_single_edge() {
        let g = Graph::new(1, 2, [(0, 1)], 0, None).unwrap();
        let a = normalized_adjacency(&g);
        for v in a.values() {
            assert!((v - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn normalized_adjacency_isolated_node() {
        let g = Graph::new(1, 1, [], 0, None).unwrap();
        let a = normalized_adjacency(&g);
        assert_eq!(a.values(), &[1.0]);
    }

    #[test]
    fn normalized_adjacency_triangle() {
        let g = Graph::new(1, 3, [(0, 1), (1, 2), (0, 2)], 0, None).unwrap();
        let a = normalized_adjacency(&g);
        for v in a.values() {
            assert!((v - 1.0 / 3.0).abs() < 1e-15);
        }
    }

    #[test]
    fn normalized_adjacency_eigenvector_property() {
        // A_norm * sqrt(d + 1) = sqrt(d + 1)
        let g = Graph::new(
            1,
            5,
            [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (1, 3)],
            0,
            None,
        )
        .unwrap();
        let a = normalized_adjacency(&g);
        let d = g.degrees();
        let v = DenseMatrix::from_vec(5, 1, d.iter().map(|&x| ((x + 1) as f64).sqrt()).collect());
        let av = a.matmul(&v).unwrap();
        assert!(av.max_abs_diff(&v) < 1e-12);
    }

    #[test]
    fn split_sizes_and_determinism() {
        let graphs = (1..=100)
            .map(|i| Graph::new(i, 2, [(0, 1)], i % 2, None).unwrap())
            .collect();
        let ds = Dataset::new("x", graphs).unwrap();
        let plan = split_dataset(&ds, SplitRatios::DEFAULT, 0).unwrap();
        assert_eq!(plan.val_ids.len(), 10);
        assert_eq!(plan.test_ids.len(), 10);
        assert_eq!(plan.full_ids.len(), 30);
        assert_eq!(plan.miss_ids.len(), 50);
        let plan2 = split_dataset(&ds, SplitRatios::DEFAULT, 0).unwrap();
        assert_eq!(plan, plan2);
    }

    #[test]
    fn split_mutag_sizes() {
        let graphs = (1..=188)
            .map(|i| Graph::new(i, 2, [(0, 1)], i % 2, None).unwrap())
            .collect();
        let ds = Dataset::new("x", graphs).unwrap();
        let plan = split_dataset(&ds, SplitRatios::DEFAULT, 7).unwrap();
        assert_eq!(
            (
                plan.val_ids.len(),
                plan.test_ids.len(),
                plan.full_ids.len(),
                plan.miss_ids.len()
            ),
            (18, 18, 56, 96)
        );
    }

    #[test]
    fn split_partition_property() {
        let graphs = (1..=57)
            .map(|i| Graph::new(i, 2, [(0, 1)], 0, None).unwrap())
            .collect();
        let ds = Dataset::new("x", graphs).unwrap();
        let plan = split_dataset(&ds, SplitRatios::DEFAULT, 3).unwrap();
        let mut all: Vec<usize> = plan
            .val_ids
            .iter()
            .chain(&plan.test_ids)
            .chain(&plan.full_ids)
            .chain(&plan.miss_ids)
            .copied()
            .collect();
        all.sort_unstable();
        assert_eq!(all, (1..=57).collect::<Vec<_>>());
    }

    #[test]
    fn split_rejects_tiny_dataset() {
        let graphs = (1..=3)
            .map(|i| Graph::new(i, 2, [(0, 1)], 0, None).unwrap())
            .collect();
        let ds = Dataset::new("x", graphs).unwrap();
        let err = split_dataset(&ds, SplitRatios::DEFAULT, 0).unwrap_err();
        assert_eq!(err.category(), "EmptyPartition");
    }
}
