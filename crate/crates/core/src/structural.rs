//! Per-node local structural features used as the autoencoder input,
//! plus their dataset-wide z-score normalization.
//!
//! Nine columns in fixed order: degree, clustering coefficient,
//! triangle count, neighbor-degree mean, neighbor-degree min,
//! neighbor-degree max, neighbor-degree std, egonet internal edge
//! count, egonet boundary edge count. Neighbor statistics of an
//! isolated node are 0 by convention.

use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::DenseMatrix;

pub const NUM_STRUCTURAL_FEATURES: usize = 9;

#[derive(Debug, Clone, PartialEq)]
pub struct StructuralFeatureMatrix {
    pub graph_id: usize,
    pub values: DenseMatrix,
}

/// Per-node triangle counts (triangles through each node).
pub fn triangle_counts(graph: &Graph) -> Vec<usize> {
    let adj = graph.adjacency_sets();
    let mut tri = vec![0usize; graph.num_nodes];
    for &(a, b) in &graph.edges {
        // common neighbors of the edge's endpoints close a triangle
        let (small, large) = if adj[a].len() <= adj[b].len() {
            (a, b)
        } else {
            (b, a)
        };
        for &c in &adj[small] {
            if c != large && adj[large].contains(&c) {
                // each triangle is seen once per edge, i.e. 3 times,
                // and contributes to the opposite node here
                tri[c] += 1;
            }
        }
    }
    tri
}

/// Local clustering coefficient: 2 tri(n) / (deg(n) (deg(n) - 1)),
/// with 0 for nodes of degree <= 1.
pub fn clustering_coefficient(graph: &Graph) -> Vec<f64> {
    let deg = graph.degrees();
    let tri = triangle_counts(graph);
    deg.iter()
        .zip(&tri)
        .map(|(&d, &t)| {
            if d >= 2 {
                2.0 * t as f64 / (d as f64 * (d as f64 - 1.0))
            } else {
                0.0
            }
        })
        .collect()
}

/// Edge counts of the closed one-hop egonet of `node`: edges with both
/// endpoints inside the egonet, and edges with exactly one endpoint
/// inside.
pub fn egonet_edge_counts(graph: &Graph, node: usize) -> Result<(usize, usize)> {
    if node >= graph.num_nodes {
        return Err(Error::IndexOutOfRange {
            index: node,
            num_nodes: graph.num_nodes,
        });
    }
    let adj = graph.adjacency_sets();
    let mut internal = 0usize;
    let mut boundary = 0usize;
    let inside = |v: usize| v == node || adj[node].contains(&v);
    for &(a, b) in &graph.edges {
        match (inside(a), inside(b)) {
            (true, true) => internal += 1,
            (true, false) | (false, true) => boundary += 1,
            (false, false) => {}
        }
    }
    Ok((internal, boundary))
}

/// The full nine-column structural feature matrix for one graph.
pub fn structural_feature_matrix(graph: &Graph) -> StructuralFeatureMatrix {
    let n = graph.num_nodes;
    let deg = graph.degrees();
    let tri = triangle_counts(graph);
    let cc = clustering_coefficient(graph);
    let adj = graph.adjacency_sets();

    let mut values = DenseMatrix::zeros(n, NUM_STRUCTURAL_FEATURES);
    for v in 0..n {
        let neigh_degs: Vec<f64> = adj[v].iter().map(|&u| deg[u] as f64).collect();
        let (nd_mean, nd_min, nd_max, nd_std) = if neigh_degs.is_empty() {
            (0.0, 0.0, 0.0, 0.0)
        } else {
            let mean = neigh_degs.iter().sum::<f64>() / neigh_degs.len() as f64;
            let min = neigh_degs.iter().copied().fold(f64::INFINITY, f64::min);
            let max = neigh_degs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let var = neigh_degs
                .iter()
                .map(|d| (d - mean) * (d - mean))
                .sum::<f64>()
                / neigh_degs.len() as f64;
            (mean, min, max, var.sqrt())
        };
        let (ego_internal, ego_boundary) = egonet_edge_counts(graph, v).expect("node in range");
        let row = [
            deg[v] as f64,
            cc[v],
            tri[v] as f64,
            nd_mean,
            nd_min,
            nd_max,
            nd_std,
            ego_internal as f64,
            ego_boundary as f64,
        ];
        for (c, &x) in row.iter().enumerate() {
            values.set(v, c, x);
        }
    }
    StructuralFeatureMatrix {
        graph_id: graph.id,
        values,
    }
}

/// Z-score normalization with per-column mean and population standard
/// deviation computed jointly over all nodes of all graphs. Columns
/// with zero variance map to all zeros.
pub fn zscore_normalize(
    features: &[StructuralFeatureMatrix],
) -> Result<Vec<StructuralFeatureMatrix>> {
    let total_nodes: usize = features.iter().map(|f| f.values.rows()).sum();
    if total_nodes == 0 {
        return Err(Error::EmptyInput);
    }
    let cols = features[0].values.cols();

    let mut mean = vec![0.0; cols];
    for f in features {
        for r in 0..f.values.rows() {
            for (c, m) in mean.iter_mut().enumerate() {
                *m += f.values.get(r, c);
            }
        }
    }
    for m in &mut mean {
        *m /= total_nodes as f64;
    }

    let mut var = vec![0.0; cols];
    for f in features {
        for r in 0..f.values.rows() {
            for c in 0..cols {
                let d = f.values.get(r, c) - mean[c];
                var[c] += d * d;
            }
        }
    }
    let std: Vec<f64> = var
        .iter()
        .map(|v| (v / total_nodes as f64).sqrt())
        .collect();

    Ok(features
        .iter()
        .map(|f| {
            let mut out = f.values.clone();
            for r in 0..out.rows() {
                for c in 0..cols {
                    let v = if std[c] > 0.0 {
                        (f.values.get(r, c) - mean[c]) / std[c]
                    } else {
                        0.0
                    };
                    out.set(r, c, v);
                }
            }
            StructuralFeatureMatrix {
                graph_id: f.graph_id,
                values: out,
            }
        })
        .collect())
}

/// CSV dump: one row per node, `graph_id,node_id,f1..f9`.
pub fn write_features_csv(features: &[StructuralFeatureMatrix], path: &Path) -> Result<()> {
    let mut out = std::fs::File::create(path)?;
    let headers: Vec<String> = (1..=NUM_STRUCTURAL_FEATURES)
        .map(|i| format!("f{i}"))
        .collect();
    writeln!(out, "graph_id,node_id,{}", headers.join(","))?;
    for f in features {
        for r in 0..f.values.rows() {
            let row: Vec<String> = f.values.row(r).iter().map(|v| format!("{v}")).collect();
            writeln!(out, "{},{},{}", f.graph_id, r, row.join(","))?;
        }
    }
    Ok(())
}
