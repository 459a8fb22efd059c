//! Builds the donor plan for one graph whose features are treated as
//! missing: the nearest same-class graphs in embedding space, and for
//! each of the recipient's nodes the nearest donor nodes that will
//! supply its features.

use graphfill::gae::{train_gae, EmbeddingSet};
use graphfill::graph::{split_dataset, SplitRatios};
use graphfill::recovery::{build_neighbor_plan, format_neighbor_plan};
use graphfill::structural::{structural_feature_matrix, zscore_normalize};
use graphfill::synth::generate_dataset;

fn main() -> graphfill::Result<()> {
    let dataset = generate_dataset("DEMO", 30, 1)?;
    let raw: Vec<_> = dataset
        .graphs
        .iter()
        .map(structural_feature_matrix)
        .collect();
    let features = zscore_normalize(&raw)?;
    let (model, _) = train_gae(&features, &dataset, &Default::default(), 1)?;
    let embeddings = EmbeddingSet::compute(&model, &dataset, &features)?;

    let split = split_dataset(&dataset, SplitRatios::DEFAULT, 1)?;
    let labels: Vec<usize> = dataset.graphs.iter().map(|g| g.label).collect();

    // donors are drawn only from the fully observed split
    let recipient = split.miss_ids[0];
    let plan = build_neighbor_plan(recipient, &embeddings, &labels, &split.full_ids, 2, 3)?;

    println!(
        "recipient graph {recipient} (class {}), donors drawn from {} fully observed graphs",
        labels[recipient - 1],
        split.full_ids.len()
    );
    print!("{}", format_neighbor_plan(&plan, &embeddings));

    for &donor in &plan.donors {
        assert_eq!(labels[donor - 1], labels[recipient - 1]);
    }
    println!("all donors share the recipient's class");
    Ok(())
}
