//! Computes the nine per-node structural features for a small
//! hand-built graph and prints them next to their column names.
//!
//! The graph is a triangle with a pendant node:
//!
//! ```text
//!   0 --- 1
//!   | \   |
//!   |  \  |
//!   3   \ |
//!         2
//! ```

use graphfill::graph::Graph;
use graphfill::structural::{structural_feature_matrix, zscore_normalize};

const COLUMNS: [&str; 9] = [
    "degree",
    "clustering",
    "triangles",
    "nbr_deg_mean",
    "nbr_deg_min",
    "nbr_deg_max",
    "nbr_deg_std",
    "ego_internal",
    "ego_boundary",
];

fn main() -> graphfill::Result<()> {
    let graph = Graph::new(1, 4, [(0, 1), (1, 2), (0, 2), (0, 3)], 0, None)?;
    let features = structural_feature_matrix(&graph);

    println!(
        "{:>14} {}",
        "node",
        COLUMNS.map(|c| format!("{c:>13}")).join(" ")
    );
    for v in 0..graph.num_nodes {
        let row: Vec<String> = features
            .values
            .row(v)
            .iter()
            .map(|x| format!("{x:>13.4}"))
            .collect();
        println!("{v:>14} {}", row.join(" "));
    }

    // normalization is dataset-global: columns get zero mean, unit
    // variance over all nodes of all graphs together
    let normalized = zscore_normalize(std::slice::from_ref(&features))?;
    println!("\nafter dataset-global z-scoring:");
    for v in 0..graph.num_nodes {
        let row: Vec<String> = normalized[0]
            .values
            .row(v)
            .iter()
            .map(|x| format!("{x:>13.4}"))
            .collect();
        println!("{v:>14} {}", row.join(" "));
    }
    Ok(())
}
