//! Projects trained node embeddings to 2D with PCA and shows that the
//! two classes separate: their projected centroids sit apart.

use graphfill::gae::{train_gae, write_projection_csv, EmbeddingSet};
use graphfill::structural::{structural_feature_matrix, zscore_normalize};
use graphfill::synth::generate_dataset;

fn main() -> graphfill::Result<()> {
    let dataset = generate_dataset("DEMO", 30, 2)?;
    let raw: Vec<_> = dataset
        .graphs
        .iter()
        .map(structural_feature_matrix)
        .collect();
    let features = zscore_normalize(&raw)?;
    let (model, _) = train_gae(&features, &dataset, &Default::default(), 2)?;
    let embeddings = EmbeddingSet::compute(&model, &dataset, &features)?;

    let path = std::env::temp_dir().join("graphfill-demo-embeddings-2d.csv");
    write_projection_csv(&embeddings, &dataset, &path)?;

    // read the projection back and compute class centroids
    let text = std::fs::read_to_string(&path)?;
    let mut sums = [[0.0f64; 2]; 2];
    let mut counts = [0usize; 2];
    for line in text.lines().skip(1) {
        let cols: Vec<&str> = line.split(',').collect();
        let (x, y): (f64, f64) = (cols[2].parse().unwrap(), cols[3].parse().unwrap());
        let class: usize = cols[4].parse().unwrap();
        sums[class][0] += x;
        sums[class][1] += y;
        counts[class] += 1;
    }
    let centroid = |c: usize| [sums[c][0] / counts[c] as f64, sums[c][1] / counts[c] as f64];
    let (a, b) = (centroid(0), centroid(1));
    let dist = ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt();

    println!(
        "wrote {} projected nodes to {}",
        counts[0] + counts[1],
        path.display()
    );
    println!(
        "class 0 centroid ({:.3}, {:.3}), {} nodes",
        a[0], a[1], counts[0]
    );
    println!(
        "class 1 centroid ({:.3}, {:.3}), {} nodes",
        b[0], b[1], counts[1]
    );
    println!("centroid distance {dist:.3} (classes shift apart in embedding space)");
    Ok(())
}
