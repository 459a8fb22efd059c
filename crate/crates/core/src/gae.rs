//! Graph autoencoder: GCN encoder over structural features, MLP
//! decoder reconstructing them. Produces node embeddings per graph,
//! graph embeddings by mean pooling, and 2D projections of the
//! embedding cloud.

use std::collections::HashMap;
use std::io::Write as _;
use std::path::Path;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::graph::{normalized_adjacency, Dataset, Graph};
use crate::matrix::DenseMatrix;
use crate::nn::{adam_step, glorot_uniform, mlp_forward, seeded_rng, AdamState, ParamSet, Tape};
use crate::structural::StructuralFeatureMatrix;

#[derive(Debug, Clone, PartialEq)]
pub struct GaeConfig {
    /// Encoder widths including input and embedding dims, e.g.
    /// [9, 64, 16]: two GCN layers, relu between, linear last layer.
    pub encoder_widths: Vec<usize>,
    /// Decoder widths including the embedding input and the
    /// reconstruction output, e.g. [16, 64, 9].
    pub decoder_widths: Vec<usize>,
    pub learning_rate: f64,
    pub epochs: usize,
}

impl Default for GaeConfig {
    fn default() -> Self {
        Self {
            encoder_widths: vec![crate::structural::NUM_STRUCTURAL_FEATURES, 64, 16],
            decoder_widths: vec![16, 64, crate::structural::NUM_STRUCTURAL_FEATURES],
            learning_rate: 1e-2,
            epochs: 300,
        }
    }
}

impl GaeConfig {
    pub fn embedding_dim(&self) -> usize {
        *self.encoder_widths.last().unwrap()
    }

    pub fn validate(&self) -> Result<()> {
        if self.encoder_widths.len() < 2 || self.decoder_widths.len() < 2 {
            return Err(Error::InvalidValue {
                key: "gae widths".into(),
                reason: "encoder and decoder need at least one layer each".into(),
            });
        }
        if self.encoder_widths.last() != self.decoder_widths.first() {
            return Err(Error::InvalidValue {
                key: "gae widths".into(),
                reason: "decoder input width must equal the embedding dim".into(),
            });
        }
        if self.learning_rate <= 0.0 || self.epochs == 0 {
            return Err(Error::InvalidValue {
                key: "gae training".into(),
                reason: "learning rate and epochs must be positive".into(),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GaeModel {
    pub config: GaeConfig,
    /// Encoder weights `enc.w{l}` and decoder affine layers
    /// `dec.w{l}` / `dec.b{l}` in one set.
    pub params: ParamSet,
}

impl GaeModel {
    /// Glorot-initialized model. Draw order: encoder layers in order,
    /// then decoder layers (weight then bias untouched at zero),
    /// entries row-major.
    pub fn init(config: GaeConfig, seed: u64) -> Result<Self> {
        config.validate()?;
        let mut rng = seeded_rng(seed);
        let mut params = ParamSet::new();
        for l in 0..config.encoder_widths.len() - 1 {
            let (fan_in, fan_out) = (config.encoder_widths[l], config.encoder_widths[l + 1]);
            params.insert(
                format!("enc.w{l}"),
                glorot_uniform(&mut rng, fan_in, fan_out),
            );
        }
        for l in 0..config.decoder_widths.len() - 1 {
            let (fan_in, fan_out) = (config.decoder_widths[l], config.decoder_widths[l + 1]);
            params.insert(
                format!("dec.w{l}"),
                glorot_uniform(&mut rng, fan_in, fan_out),
            );
            params.insert(format!("dec.b{l}"), DenseMatrix::zeros(1, fan_out));
        }
        Ok(Self { config, params })
    }

    /// Encoder output Z (N x P): relu after every GCN layer except the
    /// last, which is linear.
    pub fn encode(&self, graph: &Graph, features: &DenseMatrix) -> Result<DenseMatrix> {
        if features.cols() != self.config.encoder_widths[0] {
            return Err(Error::ShapeMismatch(format!(
                "encoder expects {} input features, got {}",
                self.config.encoder_widths[0],
                features.cols()
            )));
        }
        let a = normalized_adjacency(graph);
        let layers = self.config.encoder_widths.len() - 1;
        let mut h = features.clone();
        for l in 0..layers {
            let w = self.params.get(&format!("enc.w{l}"));
            h = a.matmul(&h)?.matmul(w)?;
            if l + 1 < layers {
                h = h.map(|v| v.max(0.0));
            }
        }
        Ok(h)
    }

    /// Full reconstruction MLP(GNN(F, G)).
    pub fn reconstruct(&self, graph: &Graph, features: &DenseMatrix) -> Result<DenseMatrix> {
        let z = self.encode(graph, features)?;
        mlp_forward(&z, &self.params, "dec")
    }

    /// Recorded forward pass for one graph, returning the per-graph
    /// reconstruction MSE node.
    pub fn record_loss(
        &self,
        tape: &mut Tape,
        ids: &HashMap<String, crate::nn::VarId>,
        graph: &Graph,
        features: &DenseMatrix,
    ) -> Result<crate::nn::VarId> {
        let a = tape.constant(normalized_adjacency(graph));
        let mut h = tape.constant(features.clone());
        let enc_layers = self.config.encoder_widths.len() - 1;
        for l in 0..enc_layers {
            let ah = tape.matmul(a, h)?;
            h = tape.matmul(ah, ids[&format!("enc.w{l}")])?;
            if l + 1 < enc_layers {
                h = tape.relu(h);
            }
        }
        let dec_layers = self.config.decoder_widths.len() - 1;
        for l in 0..dec_layers {
            let hw = tape.matmul(h, ids[&format!("dec.w{l}")])?;
            h = tape.add_row_bias(hw, ids[&format!("dec.b{l}")])?;
            if l + 1 < dec_layers {
                h = tape.relu(h);
            }
        }
        tape.mse(h, features)
    }
}

/// Full-batch training: each epoch takes one Adam step on the mean
/// over graphs of the per-graph reconstruction MSE. Returns the model
/// and the per-epoch loss history.
pub fn train_gae(
    features: &[StructuralFeatureMatrix],
    dataset: &Dataset,
    config: &GaeConfig,
    seed: u64,
) -> Result<(GaeModel, Vec<f64>)> {
    assert_eq!(features.len(), dataset.len());
    let mut model = GaeModel::init(config.clone(), seed)?;
    let mut state = AdamState::new(config.learning_rate);
    let t = dataset.len() as f64;
    let mut history = Vec::with_capacity(config.epochs);

    for epoch in 0..config.epochs {
        let mut total_loss = 0.0;
        let mut accum: HashMap<String, DenseMatrix> = HashMap::new();
        for (graph, feat) in dataset.graphs.iter().zip(features) {
            let mut tape = Tape::new();
            let ids = tape.params(&model.params);
            let loss = model.record_loss(&mut tape, &ids, graph, &feat.values)?;
            total_loss += tape.value(loss).get(0, 0);
            let grads = tape.backward(loss)?;
            for (name, g) in grads {
                match accum.get_mut(&name) {
                    Some(existing) => *existing = existing.add(&g)?,
                    None => {
                        accum.insert(name, g);
                    }
                }
            }
        }
        let mean_loss = total_loss / t;
        if !mean_loss.is_finite() {
            return Err(Error::DivergedTraining(format!(
                "loss {mean_loss} at epoch {epoch}"
            )));
        }
        for g in accum.values_mut() {
            *g = g.scale(1.0 / t);
        }
        adam_step(&mut model.params, &accum, &mut state)?;
        history.push(mean_loss);
    }
    Ok((model, history))
}

/// Node and graph embeddings for every graph of a dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingSet {
    /// Per-graph N_i x P node embedding matrices, dataset order.
    pub node_embeddings: Vec<DenseMatrix>,
    /// Per-graph length-P graph embeddings (1 x P row matrices).
    pub graph_embeddings: Vec<DenseMatrix>,
    pub dim: usize,
}

impl EmbeddingSet {
    pub fn compute(
        model: &GaeModel,
        dataset: &Dataset,
        features: &[StructuralFeatureMatrix],
    ) -> Result<Self> {
        let mut node_embeddings = Vec::with_capacity(dataset.len());
        let mut graph_embeddings = Vec::with_capacity(dataset.len());
        for (graph, feat) in dataset.graphs.iter().zip(features) {
            let z = model.encode(graph, &feat.values)?;
            graph_embeddings.push(graph_embedding(&z)?);
            node_embeddings.push(z);
        }
        Ok(Self {
            node_embeddings,
            graph_embeddings,
            dim: model.config.embedding_dim(),
        })
    }

    /// 1-based graph id accessors matching `Graph::id`.
    pub fn nodes(&self, graph_id: usize) -> &DenseMatrix {
        &self.node_embeddings[graph_id - 1]
    }

    pub fn graph(&self, graph_id: usize) -> &DenseMatrix {
        &self.graph_embeddings[graph_id - 1]
    }

    /// CSV dump: `graph_id,node_id,z1..zP`.
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut out = std::fs::File::create(path)?;
        let headers: Vec<String> = (1..=self.dim).map(|i| format!("z{i}")).collect();
        writeln!(out, "graph_id,node_id,{}", headers.join(","))?;
        for (g, z) in self.node_embeddings.iter().enumerate() {
            for r in 0..z.rows() {
                let row: Vec<String> = z.row(r).iter().map(|v| format!("{v}")).collect();
                writeln!(out, "{},{},{}", g + 1, r, row.join(","))?;
            }
        }
        Ok(())
    }
}

/// Graph embedding: column-wise mean of the node embedding matrix.
pub fn graph_embedding(z: &DenseMatrix) -> Result<DenseMatrix> {
    z.column_mean()
}

/// Euclidean distance between two row vectors.
pub fn embedding_distance(a: &DenseMatrix, b: &DenseMatrix) -> f64 {
    a.values()
        .iter()
        .zip(b.values())
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// PCA projection of a point cloud onto its top two principal
/// components.
///
/// Sign convention: within each component the entry of largest
/// magnitude is made positive. Eigenvalue ties break by component
/// index.
pub fn project_2d(points: &DenseMatrix, labels: &[usize]) -> Result<Vec<(f64, f64, usize)>> {
    let n = points.rows();
    let p = points.cols();
    if n < 2 || p < 2 {
        return Err(Error::ShapeMismatch(format!(
            "project_2d needs >= 2 points of dim >= 2, got {n} x {p}"
        )));
    }
    assert_eq!(labels.len(), n);
    let mean = points.column_mean()?;
    let mut centered = points.clone();
    for r in 0..n {
        for c in 0..p {
            centered.set(r, c, points.get(r, c) - mean.get(0, c));
        }
    }
    if centered.values().iter().all(|&v| v.abs() < 1e-15) {
        return Err(Error::DegenerateCloud);
    }

    // covariance of the centered cloud
    let mut cov = DMatrix::<f64>::zeros(p, p);
    for r in 0..n {
        for i in 0..p {
            let vi = centered.get(r, i);
            for j in 0..p {
                cov[(i, j)] += vi * centered.get(r, j);
            }
        }
    }
    cov /= n as f64;

    let eig = cov.symmetric_eigen();
    let mut order: Vec<usize> = (0..p).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[b]
            .partial_cmp(&eig.eigenvalues[a])
            .unwrap()
            .then(a.cmp(&b))
    });
    let mut components = Vec::with_capacity(2);
    for &k in order.iter().take(2) {
        let mut comp: Vec<f64> = eig.eigenvectors.column(k).iter().copied().collect();
        let (mut max_abs, mut max_val) = (0.0f64, 0.0f64);
        for &v in &comp {
            if v.abs() > max_abs {
                max_abs = v.abs();
                max_val = v;
            }
        }
        if max_val < 0.0 {
            for v in &mut comp {
                *v = -*v;
            }
        }
        components.push(comp);
    }

    Ok((0..n)
        .map(|r| {
            let proj = |comp: &[f64]| -> f64 {
                comp.iter()
                    .enumerate()
                    .map(|(c, w)| w * centered.get(r, c))
                    .sum()
            };
            (proj(&components[0]), proj(&components[1]), labels[r])
        })
        .collect())
}

/// `embeddings_2d.csv` rows: `graph_id,node_id,x,y,class`.
pub fn write_projection_csv(
    embeddings: &EmbeddingSet,
    dataset: &Dataset,
    path: &Path,
) -> Result<()> {
    let total: usize = embeddings.node_embeddings.iter().map(|z| z.rows()).sum();
    let mut points = DenseMatrix::zeros(total, embeddings.dim);
    let mut labels = Vec::with_capacity(total);
    let mut owners = Vec::with_capacity(total);
    let mut row = 0;
    for (g, z) in embeddings.node_embeddings.iter().enumerate() {
        let class = dataset.graphs[g].label;
        for r in 0..z.rows() {
            for c in 0..z.cols() {
                points.set(row, c, z.get(r, c));
            }
            labels.push(class);
            owners.push((g + 1, r));
            row += 1;
        }
    }
    let projected = project_2d(&points, &labels)?;
    let mut out = std::fs::File::create(path)?;
    writeln!(out, "graph_id,node_id,x,y,class")?;
    for ((gid, node), (x, y, class)) in owners.into_iter().zip(projected) {
        writeln!(out, "{gid},{node},{x},{y},{class}")?;
    }
    Ok(())
}
