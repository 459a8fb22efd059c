//! Graph Isomorphism Network classifier used to measure the
//! downstream value of recovered node features.
//!
//! Each layer computes MLP((1 + eps) h_v + sum of neighbor h_u),
//! expressed as the matrix product (A + (1 + eps) I) H followed by a
//! two-layer MLP. Readout is the mean over nodes, then a linear head
//! to class logits.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::DenseMatrix;
use crate::nn::{
    adam_step, cross_entropy_loss, glorot_uniform, seeded_rng, AdamState, ParamSet, Tape,
};

#[derive(Debug, Clone, PartialEq)]
pub struct GinConfig {
    pub num_layers: usize,
    pub hidden_dim: usize,
    pub epsilon: f64,
    pub learning_rate: f64,
    pub epochs: usize,
}

impl Default for GinConfig {
    fn default() -> Self {
        Self {
            num_layers: 2,
            hidden_dim: 64,
            epsilon: 0.0,
            learning_rate: 1e-2,
            epochs: 100,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GinModel {
    pub config: GinConfig,
    pub input_dim: usize,
    pub num_classes: usize,
    /// Layer MLPs `gin{l}.w0/b0/w1/b1` plus the head `head.w` / `head.b`.
    pub params: ParamSet,
}

impl GinModel {
    /// Glorot-initialized model; draw order is layer order, weight
    /// before next weight, biases start at zero.
    pub fn init(config: GinConfig, input_dim: usize, num_classes: usize, seed: u64) -> Self {
        let mut rng = seeded_rng(seed);
        let mut params = ParamSet::new();
        let mut width = input_dim;
        for l in 0..config.num_layers {
            params.insert(
                format!("gin{l}.w0"),
                glorot_uniform(&mut rng, width, config.hidden_dim),
            );
            params.insert(
                format!("gin{l}.b0"),
                DenseMatrix::zeros(1, config.hidden_dim),
            );
            params.insert(
                format!("gin{l}.w1"),
                glorot_uniform(&mut rng, config.hidden_dim, config.hidden_dim),
            );
            params.insert(
                format!("gin{l}.b1"),
                DenseMatrix::zeros(1, config.hidden_dim),
            );
            width = config.hidden_dim;
        }
        params.insert("head.w", glorot_uniform(&mut rng, width, num_classes));
        params.insert("head.b", DenseMatrix::zeros(1, num_classes));
        Self {
            config,
            input_dim,
            num_classes,
            params,
        }
    }

    /// Dense aggregation matrix A + (1 + eps) I.
    fn aggregation(&self, graph: &Graph) -> DenseMatrix {
        let n = graph.num_nodes;
        let mut m = DenseMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1.0 + self.config.epsilon);
        }
        for &(a, b) in &graph.edges {
            m.set(a, b, 1.0);
            m.set(b, a, 1.0);
        }
        m
    }

    pub fn forward(&self, graph: &Graph, x: &DenseMatrix) -> Result<DenseMatrix> {
        if x.cols() != self.input_dim {
            return Err(Error::ShapeMismatch(format!(
                "GIN expects {} input features, got {}",
                self.input_dim,
                x.cols()
            )));
        }
        let agg = self.aggregation(graph);
        let mut h = x.clone();
        for l in 0..self.config.num_layers {
            let pre = agg.matmul(&h)?;
            let w0 = self.params.get(&format!("gin{l}.w0"));
            let b0 = self.params.get(&format!("gin{l}.b0"));
            let w1 = self.params.get(&format!("gin{l}.w1"));
            let b1 = self.params.get(&format!("gin{l}.b1"));
            h = pre
                .matmul(w0)?
                .add_row_bias(b0)?
                .map(|v| v.max(0.0))
                .matmul(w1)?
                .add_row_bias(b1)?;
        }
        let readout = h.column_mean()?;
        readout
            .matmul(self.params.get("head.w"))?
            .add_row_bias(self.params.get("head.b"))
    }

    /// Recorded forward returning the logits node.
    fn record_logits(
        &self,
        tape: &mut Tape,
        ids: &HashMap<String, crate::nn::VarId>,
        graph: &Graph,
        x: &DenseMatrix,
    ) -> Result<crate::nn::VarId> {
        let agg = tape.constant(self.aggregation(graph));
        let mut h = tape.constant(x.clone());
        for l in 0..self.config.num_layers {
            let pre = tape.matmul(agg, h)?;
            let a0 = tape.matmul(pre, ids[&format!("gin{l}.w0")])?;
            let a0 = tape.add_row_bias(a0, ids[&format!("gin{l}.b0")])?;
            let r = tape.relu(a0);
            let a1 = tape.matmul(r, ids[&format!("gin{l}.w1")])?;
            h = tape.add_row_bias(a1, ids[&format!("gin{l}.b1")])?;
        }
        let n = x.rows();
        let mean_row = tape.constant(DenseMatrix::filled(1, n, 1.0 / n as f64));
        let readout = tape.matmul(mean_row, h)?;
        let logits = tape.matmul(readout, ids["head.w"])?;
        tape.add_row_bias(logits, ids["head.b"])
    }

    /// Argmax class with ties resolved to the lowest class index.
    pub fn predict(&self, graph: &Graph, x: &DenseMatrix) -> Result<usize> {
        let logits = self.forward(graph, x)?;
        let row = logits.row(0);
        let mut best = 0usize;
        for (c, &v) in row.iter().enumerate() {
            if v > row[best] {
                best = c;
            }
        }
        Ok(best)
    }
}

/// A labeled graph with its (true or recovered) feature matrix.
pub type Example<'a> = (&'a Graph, &'a DenseMatrix, usize);

/// Epoch selection outcome of one training run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrainReport {
    /// Epoch (0-based) whose snapshot was returned.
    pub best_epoch: usize,
    /// Validation accuracy of that snapshot.
    pub val_accuracy: f64,
}

/// Full-batch cross-entropy training with Adam; after each epoch the
/// validation accuracy is evaluated and the best snapshot (ties to the
/// earlier epoch) is returned.
pub fn train_gin(
    train: &[Example],
    val: &[Example],
    config: &GinConfig,
    input_dim: usize,
    num_classes: usize,
    seed: u64,
) -> Result<(GinModel, TrainReport)> {
    if train.is_empty() || val.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut model = GinModel::init(config.clone(), input_dim, num_classes, seed);
    let mut state = AdamState::new(config.learning_rate);
    let t = train.len() as f64;
    let mut best: Option<(usize, f64, ParamSet)> = None;

    for epoch in 0..config.epochs {
        let mut total_loss = 0.0;
        let mut accum: HashMap<String, DenseMatrix> = HashMap::new();
        for &(graph, x, label) in train {
            let mut tape = Tape::new();
            let ids = tape.params(&model.params);
            let logits = model.record_logits(&mut tape, &ids, graph, x)?;
            let loss = tape.softmax_cross_entropy(logits, &[label])?;
            total_loss += tape.value(loss).get(0, 0);
            for (name, g) in tape.backward(loss)? {
                match accum.get_mut(&name) {
                    Some(existing) => *existing = existing.add(&g)?,
                    None => {
                        accum.insert(name, g);
                    }
                }
            }
        }
        if !total_loss.is_finite() {
            return Err(Error::DivergedTraining(format!(
                "loss {total_loss} at epoch {epoch}"
            )));
        }
        for g in accum.values_mut() {
            *g = g.scale(1.0 / t);
        }
        adam_step(&mut model.params, &accum, &mut state)?;

        let val_acc = evaluate_accuracy(&model, val)?;
        let better = match &best {
            Some((_, acc, _)) => val_acc > *acc,
            None => true,
        };
        if better {
            best = Some((epoch, val_acc, model.params.clone()));
        }
    }
    let (best_epoch, val_accuracy, params) = best.unwrap();
    model.params = params;
    Ok((
        model,
        TrainReport {
            best_epoch,
            val_accuracy,
        },
    ))
}

/// Fraction of correctly classified graphs.
pub fn evaluate_accuracy(model: &GinModel, set: &[Example]) -> Result<f64> {
    if set.is_empty() {
        return Err(Error::EmptyTestSet);
    }
    let mut correct = 0usize;
    for &(graph, x, label) in set {
        if model.predict(graph, x)? == label {
            correct += 1;
        }
    }
    Ok(correct as f64 / set.len() as f64)
}

/// Mean cross-entropy of a model over a set, exposed for sanity
/// reporting.
pub fn mean_loss(model: &GinModel, set: &[Example]) -> Result<f64> {
    let mut total = 0.0;
    for &(graph, x, label) in set {
        let logits = model.forward(graph, x)?;
        total += cross_entropy_loss(&logits, &[label])?;
    }
    Ok(total / set.len() as f64)
}
