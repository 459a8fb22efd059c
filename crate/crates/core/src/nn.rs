//! Minimal dense differentiable-computation core: a recording tape
//! over matrix primitives with exact reverse-mode gradients, Glorot
//! initialization, the Adam optimizer, parameter checkpoints, and a
//! finite-difference gradient check.
//!
//! Everything is f64 and deterministic: identical inputs produce
//! bitwise identical outputs.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;

/// Elementwise activation for GCN layers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Activation {
    Relu,
    Identity,
}

/// Ordered set of named parameters. Shapes are fixed at insertion.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamSet {
    entries: Vec<(String, DenseMatrix)>,
    index: HashMap<String, usize>,
}

impl Default for ParamSet {
    fn default() -> Self {
        Self::new()
    }
}

impl ParamSet {
    pub fn new() -> Self {
        Self {
            entries: Vec::new(),
            index: HashMap::new(),
        }
    }

    pub fn insert(&mut self, name: impl Into<String>, value: DenseMatrix) {
        let name = name.into();
        assert!(
            !self.index.contains_key(&name),
            "duplicate parameter name {name}"
        );
        self.index.insert(name.clone(), self.entries.len());
        self.entries.push((name, value));
    }

    pub fn get(&self, name: &str) -> &DenseMatrix {
        &self.entries[self.index[name]].1
    }

    pub fn get_mut(&mut self, name: &str) -> &mut DenseMatrix {
        let i = self.index[name];
        &mut self.entries[i].1
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &DenseMatrix)> {
        self.entries.iter().map(|(n, m)| (n.as_str(), m))
    }

    pub fn names(&self) -> Vec<String> {
        self.entries.iter().map(|(n, _)| n.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Merges parameter sets with a name prefix, used to combine
    /// encoder/decoder sets into one optimizer view.
    pub fn merged(sets: &[(&str, &ParamSet)]) -> ParamSet {
        let mut out = ParamSet::new();
        for (prefix, set) in sets {
            for (name, value) in set.iter() {
                out.insert(format!("{prefix}.{name}"), value.clone());
            }
        }
        out
    }
}

/// Glorot (uniform) initialization on +-sqrt(6 / (fan_in + fan_out)).
///
/// Draw order is documented and fixed: entries are drawn row-major per
/// matrix, matrices in the order the caller requests them from one
/// seeded generator.
pub fn glorot_uniform(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> DenseMatrix {
    let limit = (6.0 / (rows + cols) as f64).sqrt();
    let values = (0..rows * cols)
        .map(|_| rng.random_range(-limit..limit))
        .collect();
    DenseMatrix::from_vec(rows, cols, values)
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VarId(usize);

enum Op {
    /// Constant or parameter leaf.
    Leaf,
    MatMul(VarId, VarId),
    AddRowBias(VarId, VarId),
    Add(VarId, VarId),
    Sub(VarId, VarId),
    Scale(VarId, f64),
    Relu(VarId),
    /// Mean of squared entry differences against a constant target;
    /// produces a 1x1 value.
    Mse(VarId, DenseMatrix),
    /// Row-wise stabilized softmax cross-entropy against class
    /// indices, averaged over rows; produces a 1x1 value.
    SoftmaxCrossEntropy(VarId, Vec<usize>),
}

struct Node {
    value: DenseMatrix,
    op: Op,
    /// Present iff this leaf is a trainable parameter.
    param_name: Option<String>,
    needs_grad: bool,
}

/// A forward computation recorded for reverse-mode differentiation.
pub struct Tape {
    nodes: Vec<Node>,
}

impl Default for Tape {
    fn default() -> Self {
        Self::new()
    }
}

impl Tape {
    pub fn new() -> Self {
        Self { nodes: Vec::new() }
    }

    fn push(&mut self, value: DenseMatrix, op: Op, needs_grad: bool) -> VarId {
        self.nodes.push(Node {
            value,
            op,
            param_name: None,
            needs_grad,
        });
        VarId(self.nodes.len() - 1)
    }

    pub fn constant(&mut self, value: DenseMatrix) -> VarId {
        self.push(value, Op::Leaf, false)
    }

    pub fn param(&mut self, name: &str, value: DenseMatrix) -> VarId {
        let id = self.push(value, Op::Leaf, true);
        self.nodes[id.0].param_name = Some(name.to_string());
        id
    }

    /// Records every parameter of `params`; returned ids are in
    /// insertion order.
    pub fn params(&mut self, params: &ParamSet) -> HashMap<String, VarId> {
        params
            .iter()
            .map(|(name, value)| (name.to_string(), self.param(name, value.clone())))
            .collect()
    }

    pub fn value(&self, id: VarId) -> &DenseMatrix {
        &self.nodes[id.0].value
    }

    fn needs(&self, id: VarId) -> bool {
        self.nodes[id.0].needs_grad
    }

    pub fn matmul(&mut self, a: VarId, b: VarId) -> Result<VarId> {
        let value = self.value(a).matmul(self.value(b))?;
        let needs = self.needs(a) || self.needs(b);
        Ok(self.push(value, Op::MatMul(a, b), needs))
    }

    pub fn add_row_bias(&mut self, m: VarId, bias: VarId) -> Result<VarId> {
        let value = self.value(m).add_row_bias(self.value(bias))?;
        let needs = self.needs(m) || self.needs(bias);
        Ok(self.push(value, Op::AddRowBias(m, bias), needs))
    }

    pub fn add(&mut self, a: VarId, b: VarId) -> Result<VarId> {
        let value = self.value(a).add(self.value(b))?;
        let needs = self.needs(a) || self.needs(b);
        Ok(self.push(value, Op::Add(a, b), needs))
    }

    pub fn sub(&mut self, a: VarId, b: VarId) -> Result<VarId> {
        let value = self.value(a).sub(self.value(b))?;
        let needs = self.needs(a) || self.needs(b);
        Ok(self.push(value, Op::Sub(a, b), needs))
    }

    pub fn scale(&mut self, a: VarId, s: f64) -> VarId {
        let value = self.value(a).scale(s);
        let needs = self.needs(a);
        self.push(value, Op::Scale(a, s), needs)
    }

    pub fn relu(&mut self, a: VarId) -> VarId {
        let value = self.value(a).map(|v| v.max(0.0));
        let needs = self.needs(a);
        self.push(value, Op::Relu(a), needs)
    }

    pub fn activation(&mut self, a: VarId, act: Activation) -> VarId {
        match act {
            Activation::Relu => self.relu(a),
            Activation::Identity => a,
        }
    }

    /// Mean squared error against a constant target.
    pub fn mse(&mut self, pred: VarId, target: &DenseMatrix) -> Result<VarId> {
        if self.value(pred).shape() != target.shape() {
            return Err(Error::ShapeMismatch(format!(
                "mse {:?} against {:?}",
                self.value(pred).shape(),
                target.shape()
            )));
        }
        let diff = self.value(pred).sub(target)?;
        let n = (diff.rows() * diff.cols()) as f64;
        let loss = diff.values().iter().map(|v| v * v).sum::<f64>() / n;
        let needs = self.needs(pred);
        Ok(self.push(
            DenseMatrix::from_vec(1, 1, vec![loss]),
            Op::Mse(pred, target.clone()),
            needs,
        ))
    }

    /// Mean negative log-probability of the true class under a
    /// row-max-stabilized softmax.
    pub fn softmax_cross_entropy(&mut self, logits: VarId, labels: &[usize]) -> Result<VarId> {
        let m = self.value(logits);
        if m.rows() != labels.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} logit rows against {} labels",
                m.rows(),
                labels.len()
            )));
        }
        let mut total = 0.0;
        for (r, &label) in labels.iter().enumerate() {
            let row = m.row(r);
            let max = row.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let logsum = row.iter().map(|v| (v - max).exp()).sum::<f64>().ln();
            total += logsum - (row[label] - max);
        }
        let loss = total / labels.len() as f64;
        let needs = self.needs(logits);
        Ok(self.push(
            DenseMatrix::from_vec(1, 1, vec![loss]),
            Op::SoftmaxCrossEntropy(logits, labels.to_vec()),
            needs,
        ))
    }

    /// Reverse-mode gradients of the scalar `loss` node with respect to
    /// every recorded parameter.
    pub fn backward(&self, loss: VarId) -> Result<HashMap<String, DenseMatrix>> {
        let lv = self.value(loss);
        if lv.shape() != (1, 1) {
            return Err(Error::ShapeMismatch(format!(
                "backward requires a 1x1 loss node, got {:?}",
                lv.shape()
            )));
        }
        let mut grads: Vec<Option<DenseMatrix>> = vec![None; self.nodes.len()];
        grads[loss.0] = Some(DenseMatrix::from_vec(1, 1, vec![1.0]));

        for idx in (0..=loss.0).rev() {
            let Some(grad) = grads[idx].clone() else {
                continue;
            };
            if !self.nodes[idx].needs_grad {
                continue;
            }
            match &self.nodes[idx].op {
                Op::Leaf => {}
                Op::MatMul(a, b) => {
                    if self.needs(*a) {
                        let da = grad.matmul(&self.value(*b).transpose())?;
                        accumulate(&mut grads[a.0], da)?;
                    }
                    if self.needs(*b) {
                        let db = self.value(*a).transpose().matmul(&grad)?;
                        accumulate(&mut grads[b.0], db)?;
                    }
                }
                Op::AddRowBias(m, bias) => {
                    if self.needs(*m) {
                        accumulate(&mut grads[m.0], grad.clone())?;
                    }
                    if self.needs(*bias) {
                        let mut db = DenseMatrix::zeros(1, grad.cols());
                        for r in 0..grad.rows() {
                            for c in 0..grad.cols() {
                                db.set(0, c, db.get(0, c) + grad.get(r, c));
                            }
                        }
                        accumulate(&mut grads[bias.0], db)?;
                    }
                }
                Op::Add(a, b) => {
                    if self.needs(*a) {
                        accumulate(&mut grads[a.0], grad.clone())?;
                    }
                    if self.needs(*b) {
                        accumulate(&mut grads[b.0], grad.clone())?;
                    }
                }
                Op::Sub(a, b) => {
                    if self.needs(*a) {
                        accumulate(&mut grads[a.0], grad.clone())?;
                    }
                    if self.needs(*b) {
                        accumulate(&mut grads[b.0], grad.scale(-1.0))?;
                    }
                }
                Op::Scale(a, s) => {
                    if self.needs(*a) {
                        accumulate(&mut grads[a.0], grad.scale(*s))?;
                    }
                }
                Op::Relu(a) => {
                    if self.needs(*a) {
                        let mut da = grad.clone();
                        for (g, &x) in da.values_mut().iter_mut().zip(self.value(*a).values()) {
                            if x <= 0.0 {
                                *g = 0.0;
                            }
                        }
                        accumulate(&mut grads[a.0], da)?;
                    }
                }
                Op::Mse(pred, target) => {
                    if self.needs(*pred) {
                        let p = self.value(*pred);
                        let n = (p.rows() * p.cols()) as f64;
                        let scale = 2.0 * grad.get(0, 0) / n;
                        let da = p.sub(target)?.scale(scale);
                        accumulate(&mut grads[pred.0], da)?;
                    }
                }
                Op::SoftmaxCrossEntropy(logits, labels) => {
                    if self.needs(*logits) {
                        let m = self.value(*logits);
                        let mut da = DenseMatrix::zeros(m.rows(), m.cols());
                        let scale = grad.get(0, 0) / labels.len() as f64;
                        for (r, &label) in labels.iter().enumerate() {
                            let row = m.row(r);
                            let max = row.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                            let exps: Vec<f64> = row.iter().map(|v| (v - max).exp()).collect();
                            let sum: f64 = exps.iter().sum();
                            for (c, e) in exps.iter().enumerate() {
                                let softmax = e / sum;
                                let indicator = if c == label { 1.0 } else { 0.0 };
                                da.set(r, c, scale * (softmax - indicator));
                            }
                        }
                        accumulate(&mut grads[logits.0], da)?;
                    }
                }
            }
        }

        let mut out = HashMap::new();
        for (idx, node) in self.nodes.iter().enumerate() {
            if let Some(name) = &node.param_name {
                let g = grads[idx]
                    .take()
                    .unwrap_or_else(|| DenseMatrix::zeros(node.value.rows(), node.value.cols()));
                out.insert(name.clone(), g);
            }
        }
        Ok(out)
    }
}

fn accumulate(slot: &mut Option<DenseMatrix>, grad: DenseMatrix) -> Result<()> {
    match slot {
        Some(existing) => *existing = existing.add(&grad)?,
        None => *slot = Some(grad),
    }
    Ok(())
}

/// One GCN propagation step: activation(A_norm * H * W).
pub fn gcn_layer_forward(
    a_norm: &DenseMatrix,
    h: &DenseMatrix,
    w: &DenseMatrix,
    activation: Activation,
) -> Result<DenseMatrix> {
    let out = a_norm.matmul(h)?.matmul(w)?;
    Ok(match activation {
        Activation::Relu => out.map(|v| v.max(0.0)),
        Activation::Identity => out,
    })
}

/// Affine MLP layers (`{prefix}.w{i}` / `{prefix}.b{i}`) with relu on
/// hidden layers and a linear output layer.
pub fn mlp_forward(h: &DenseMatrix, params: &ParamSet, prefix: &str) -> Result<DenseMatrix> {
    let mut layers = 0;
    while params
        .iter()
        .any(|(n, _)| n == format!("{prefix}.w{layers}"))
    {
        layers += 1;
    }
    let mut h = h.clone();
    for l in 0..layers {
        let w = params.get(&format!("{prefix}.w{l}"));
        let b = params.get(&format!("{prefix}.b{l}"));
        h = h.matmul(w)?.add_row_bias(b)?;
        if l + 1 < layers {
            h = h.map(|v| v.max(0.0));
        }
    }
    Ok(h)
}

/// Plain (non-recorded) loss evaluation.
pub fn mse_loss(pred: &DenseMatrix, target: &DenseMatrix) -> Result<f64> {
    if pred.shape() != target.shape() {
        return Err(Error::ShapeMismatch(format!(
            "mse {:?} against {:?}",
            pred.shape(),
            target.shape()
        )));
    }
    let n = (pred.rows() * pred.cols()) as f64;
    Ok(pred
        .values()
        .iter()
        .zip(target.values())
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        / n)
}

pub fn cross_entropy_loss(logits: &DenseMatrix, labels: &[usize]) -> Result<f64> {
    let mut tape = Tape::new();
    let l = tape.constant(logits.clone());
    let loss = tape.softmax_cross_entropy(l, labels)?;
    Ok(tape.value(loss).get(0, 0))
}

/// Adam optimizer state with bias correction.
#[derive(Debug, Clone)]
pub struct AdamState {
    pub lr: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub epsilon: f64,
    pub t: u64,
    first_moment: HashMap<String, DenseMatrix>,
    second_moment: HashMap<String, DenseMatrix>,
}

impl AdamState {
    pub fn new(lr: f64) -> Self {
        Self {
            lr,
            beta1: 0.9,
            beta2: 0.999,
            epsilon: 1e-8,
            t: 0,
            first_moment: HashMap::new(),
            second_moment: HashMap::new(),
        }
    }
}

/// One Adam update over every parameter with a gradient entry.
pub fn adam_step(
    params: &mut ParamSet,
    grads: &HashMap<String, DenseMatrix>,
    state: &mut AdamState,
) -> Result<()> {
    state.t += 1;
    let t = state.t as f64;
    let bias1 = 1.0 - state.beta1.powf(t);
    let bias2 = 1.0 - state.beta2.powf(t);
    for name in params.names() {
        let Some(g) = grads.get(&name) else { continue };
        let p = params.get(&name);
        if p.shape() != g.shape() {
            return Err(Error::ShapeMismatch(format!(
                "gradient {:?} for parameter {name} of shape {:?}",
                g.shape(),
                p.shape()
            )));
        }
        let m = state
            .first_moment
            .entry(name.clone())
            .or_insert_with(|| DenseMatrix::zeros(p.rows(), p.cols()));
        for (mv, gv) in m.values_mut().iter_mut().zip(g.values()) {
            *mv = state.beta1 * *mv + (1.0 - state.beta1) * gv;
        }
        let v = state
            .second_moment
            .entry(name.clone())
            .or_insert_with(|| DenseMatrix::zeros(p.rows(), p.cols()));
        for (vv, gv) in v.values_mut().iter_mut().zip(g.values()) {
            *vv = state.beta2 * *vv + (1.0 - state.beta2) * gv * gv;
        }
        let m = state.first_moment[&name].clone();
        let v = state.second_moment[&name].clone();
        let p = params.get_mut(&name);
        for ((pv, mv), vv) in p.values_mut().iter_mut().zip(m.values()).zip(v.values()) {
            let m_hat = mv / bias1;
            let v_hat = vv / bias2;
            *pv -= state.lr * m_hat / (v_hat.sqrt() + state.epsilon);
        }
    }
    Ok(())
}

/// Versioned text checkpoint: parameter names, shapes, and row-major
/// values with round-trip-exact decimal formatting.
pub fn save_checkpoint(params: &ParamSet, path: &Path) -> Result<()> {
    let mut out = String::new();
    writeln!(out, "graphfill-paramset v1 {}", params.len()).unwrap();
    for (name, m) in params.iter() {
        writeln!(out, "{name} {} {}", m.rows(), m.cols()).unwrap();
        for r in 0..m.rows() {
            let row: Vec<String> = m.row(r).iter().map(|v| format!("{v}")).collect();
            writeln!(out, "{}", row.join(" ")).unwrap();
        }
    }
    std::fs::write(path, out)?;
    Ok(())
}

pub fn load_checkpoint(path: &Path) -> Result<ParamSet> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::UnreadableFile {
        path: path.to_path_buf(),
        source,
    })?;
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::BadCheckpoint("empty checkpoint file".into()))?;
    let mut parts = header.split_whitespace();
    if parts.next() != Some("graphfill-paramset") || parts.next() != Some("v1") {
        return Err(Error::BadCheckpoint(format!("bad header: `{header}`")));
    }
    let count: usize = parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::BadCheckpoint("bad parameter count".into()))?;
    let mut params = ParamSet::new();
    for _ in 0..count {
        let meta = lines
            .next()
            .ok_or_else(|| Error::BadCheckpoint("truncated checkpoint".into()))?;
        let mut parts = meta.split_whitespace();
        let name = parts
            .next()
            .ok_or_else(|| Error::BadCheckpoint("missing parameter name".into()))?;
        let rows: usize = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::BadCheckpoint(format!("bad shape for {name}")))?;
        let cols: usize = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::BadCheckpoint(format!("bad shape for {name}")))?;
        let mut values = Vec::with_capacity(rows * cols);
        for _ in 0..rows {
            let line = lines
                .next()
                .ok_or_else(|| Error::BadCheckpoint(format!("truncated rows for {name}")))?;
            for token in line.split_whitespace() {
                let v: f64 = token
                    .parse()
                    .map_err(|_| Error::BadCheckpoint(format!("bad value `{token}` in {name}")))?;
                values.push(v);
            }
        }
        if values.len() != rows * cols {
            return Err(Error::BadCheckpoint(format!(
                "{name} has {} values for shape {rows}x{cols}",
                values.len()
            )));
        }
        params.insert(name, DenseMatrix::from_vec(rows, cols, values));
    }
    Ok(params)
}

/// Central finite-difference check of `loss_fn` gradients at `params`.
///
/// Perturbs up to `max_entries` entries per parameter (all entries if
/// the parameter is small) and returns the maximum relative error with
/// denominator max(|analytic|, |numeric|, 1e-8).
pub fn finite_difference_check(
    params: &ParamSet,
    step: f64,
    max_entries: usize,
    loss_fn: impl Fn(&ParamSet) -> Result<f64>,
    grad_fn: impl Fn(&ParamSet) -> Result<HashMap<String, DenseMatrix>>,
) -> Result<f64> {
    if step <= 0.0 {
        return Err(Error::InvalidValue {
            key: "step".into(),
            reason: "finite-difference step must be positive".into(),
        });
    }
    let analytic = grad_fn(params)?;
    let mut max_rel = 0.0f64;
    for (name, value) in params.iter() {
        let total = value.rows() * value.cols();
        let stride = (total / max_entries).max(1);
        for flat in (0..total).step_by(stride) {
            let mut plus = params.clone();
            plus.get_mut(name).values_mut()[flat] += step;
            let mut minus = params.clone();
            minus.get_mut(name).values_mut()[flat] -= step;
            let numeric = (loss_fn(&plus)? - loss_fn(&minus)?) / (2.0 * step);
            let a = analytic.get(name).map(|g| g.values()[flat]).unwrap_or(0.0);
            let denom = a.abs().max(numeric.abs()).max(1e-8);
            max_rel = max_rel.max((a - numeric).abs() / denom);
        }
    }
    Ok(max_rel)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcn_layer_single_edge() {
        let g = crate::graph::Graph::new(1, 2, [(0, 1)], 0, None).unwrap();
        let a = crate::graph::normalized_adjacency(&g);
        let h = DenseMatrix::from_vec(2, 1, vec![1.0, 3.0]);
        let w = DenseMatrix::from_vec(1, 1, vec![1.0]);
        let out = gcn_layer_forward(&a, &h, &w, Activation::Identity).unwrap();
        assert!(out.max_abs_diff(&DenseMatrix::from_vec(2, 1, vec![2.0, 2.0])) < 1e-12);
        let w_neg = DenseMatrix::from_vec(1, 1, vec![-1.0]);
        let out = gcn_layer_forward(&a, &h, &w_neg, Activation::Relu).unwrap();
        assert_eq!(out.values(), &[0.0, 0.0]);
        let w_zero = DenseMatrix::from_vec(1, 1, vec![0.0]);
        let out = gcn_layer_forward(&a, &h, &w_zero, Activation::Identity).unwrap();
        assert_eq!(out.values(), &[0.0, 0.0]);
    }

    #[test]
    fn mlp_identity_and_affine() {
        let mut params = ParamSet::new();
        params.insert("dec.w0", DenseMatrix::identity(2));
        params.insert("dec.b0", DenseMatrix::zeros(1, 2));
        let h = DenseMatrix::from_vec(1, 2, vec![3.0, -4.0]);
        let out = mlp_forward(&h, &params, "dec").unwrap();
        assert_eq!(out.values(), h.values());

        let mut params = ParamSet::new();
        params.insert("dec.w0", DenseMatrix::from_vec(1, 1, vec![2.0]));
        params.insert("dec.b0", DenseMatrix::from_vec(1, 1, vec![1.0]));
        let out = mlp_forward(&DenseMatrix::from_vec(1, 1, vec![3.0]), &params, "dec").unwrap();
        assert_eq!(out.values(), &[7.0]);
    }

    #[test]
    fn mlp_two_layers_with_relu() {
        let mut params = ParamSet::new();
        params.insert("dec.w0", DenseMatrix::from_vec(1, 1, vec![-1.0]));
        params.insert("dec.b0", DenseMatrix::zeros(1, 1));
        params.insert("dec.w1", DenseMatrix::from_vec(1, 1, vec![1.0]));
        params.insert("dec.b1", DenseMatrix::zeros(1, 1));
        let out = mlp_forward(&DenseMatrix::from_vec(1, 1, vec![3.0]), &params, "dec").unwrap();
        assert_eq!(out.values(), &[0.0]);
    }

    #[test]
    fn losses_basic() {
        let a = DenseMatrix::from_vec(1, 2, vec![0.0, 0.0]);
        let b = DenseMatrix::from_vec(1, 2, vec![1.0, 1.0]);
        assert_eq!(mse_loss(&a, &a).unwrap(), 0.0);
        assert_eq!(mse_loss(&a, &b).unwrap(), 1.0);
        let logits = DenseMatrix::from_vec(1, 2, vec![0.3, 0.3]);
        let ce = cross_entropy_loss(&logits, &[0]).unwrap();
        assert!((ce - std::f64::consts::LN_2).abs() < 1e-12);
    }

    #[test]
    fn mse_gradient_analytic() {
        // d/dx mean((x - t)^2) at x = 3, t = 1 is 2 (x - t) = 4
        let mut tape = Tape::new();
        let x = tape.param("x", DenseMatrix::from_vec(1, 1, vec![3.0]));
        let target = DenseMatrix::from_vec(1, 1, vec![1.0]);
        let loss = tape.mse(x, &target).unwrap();
        let grads = tape.backward(loss).unwrap();
        assert_eq!(grads["x"].values(), &[4.0]);
    }

    fn linear_model_loss(params: &ParamSet, x: &DenseMatrix, t: &DenseMatrix) -> Result<f64> {
        let pred = x.matmul(params.get("w"))?.add_row_bias(params.get("b"))?;
        mse_loss(&pred, t)
    }

    fn linear_model_grads(
        params: &ParamSet,
        x: &DenseMatrix,
        t: &DenseMatrix,
    ) -> Result<HashMap<String, DenseMatrix>> {
        let mut tape = Tape::new();
        let ids = tape.params(params);
        let xc = tape.constant(x.clone());
        let h = tape.matmul(xc, ids["w"])?;
        let pred = tape.add_row_bias(h, ids["b"])?;
        let loss = tape.mse(pred, t)?;
        tape.backward(loss)
    }

    #[test]
    fn linear_layer_matches_finite_differences() {
        let mut rng = seeded_rng(11);
        let x = glorot_uniform(&mut rng, 4, 3);
        let t = glorot_uniform(&mut rng, 4, 2);
        let mut params = ParamSet::new();
        params.insert("w", glorot_uniform(&mut rng, 3, 2));
        params.insert("b", glorot_uniform(&mut rng, 1, 2));
        let err = finite_difference_check(
            &params,
            1e-5,
            64,
            |p| linear_model_loss(p, &x, &t),
            |p| linear_model_grads(p, &x, &t),
        )
        .unwrap();
        assert!(err < 1e-6, "max relative error {err}");
    }

    #[test]
    fn relu_gradient_matches_finite_differences() {
        // inputs bounded away from the kink by 0.1
        let x = DenseMatrix::from_vec(2, 2, vec![0.5, -0.7, 1.2, -0.3]);
        let t = DenseMatrix::zeros(2, 2);
        let mut params = ParamSet::new();
        params.insert("w", DenseMatrix::from_vec(2, 2, vec![0.8, -0.4, 0.6, 0.9]));
        let loss_fn = |p: &ParamSet| -> Result<f64> {
            let pred = x.matmul(p.get("w"))?.map(|v| v.max(0.0));
            mse_loss(&pred, &t)
        };
        let grad_fn = |p: &ParamSet| -> Result<HashMap<String, DenseMatrix>> {
            let mut tape = Tape::new();
            let ids = tape.params(p);
            let xc = tape.constant(x.clone());
            let h = tape.matmul(xc, ids["w"])?;
            let r = tape.relu(h);
            let loss = tape.mse(r, &t)?;
            tape.backward(loss)
        };
        let err = finite_difference_check(&params, 1e-5, 64, loss_fn, grad_fn).unwrap();
        assert!(err < 1e-6, "max relative error {err}");
    }

    #[test]
    fn cross_entropy_gradient_matches_finite_differences() {
        let labels = vec![1usize, 0, 2];
        let mut rng = seeded_rng(5);
        let x = glorot_uniform(&mut rng, 3, 4);
        let mut params = ParamSet::new();
        params.insert("w", glorot_uniform(&mut rng, 4, 3));
        let loss_fn =
            |p: &ParamSet| -> Result<f64> { cross_entropy_loss(&x.matmul(p.get("w"))?, &labels) };
        let grad_fn = |p: &ParamSet| -> Result<HashMap<String, DenseMatrix>> {
            let mut tape = Tape::new();
            let ids = tape.params(p);
            let xc = tape.constant(x.clone());
            let logits = tape.matmul(xc, ids["w"])?;
            let loss = tape.softmax_cross_entropy(logits, &labels)?;
            tape.backward(loss)
        };
        let err = finite_difference_check(&params, 1e-5, 64, loss_fn, grad_fn).unwrap();
        assert!(err < 1e-5, "max relative error {err}");
    }

    #[test]
    fn finite_difference_rejects_zero_step() {
        let params = ParamSet::new();
        let err = finite_difference_check(&params, 0.0, 10, |_| Ok(0.0), |_| Ok(HashMap::new()))
            .unwrap_err();
        assert_eq!(err.category(), "InvalidValue");
    }

    #[test]
    fn adam_zero_gradient_keeps_params() {
        let mut params = ParamSet::new();
        params.insert("w", DenseMatrix::from_vec(1, 2, vec![1.0, -2.0]));
        let before = params.get("w").clone();
        let mut grads = HashMap::new();
        grads.insert("w".to_string(), DenseMatrix::zeros(1, 2));
        let mut state = AdamState::new(0.1);
        adam_step(&mut params, &grads, &mut state).unwrap();
        assert_eq!(params.get("w"), &before);
    }

    #[test]
    fn adam_first_step_size() {
        // with g = 1 everywhere the bias-corrected first step is
        // lr * g / (|g| + eps) ~ lr
        let mut params = ParamSet::new();
        params.insert("w", DenseMatrix::from_vec(1, 2, vec![1.0, -2.0]));
        let mut grads = HashMap::new();
        grads.insert("w".to_string(), DenseMatrix::filled(1, 2, 1.0));
        let mut state = AdamState::new(0.1);
        adam_step(&mut params, &grads, &mut state).unwrap();
        assert!((params.get("w").get(0, 0) - 0.9).abs() < 1e-6);
        assert!((params.get("w").get(0, 1) + 2.1).abs() < 1e-6);
    }

    #[test]
    fn adam_trajectory_is_deterministic() {
        let run = || {
            let mut rng = seeded_rng(3);
            let mut params = ParamSet::new();
            params.insert("w", glorot_uniform(&mut rng, 2, 2));
            let mut state = AdamState::new(0.05);
            for step in 0..10 {
                let mut grads = HashMap::new();
                grads.insert(
                    "w".to_string(),
                    params.get("w").scale(0.5 + step as f64 * 0.1),
                );
                adam_step(&mut params, &grads, &mut state).unwrap();
            }
            params.get("w").values().to_vec()
        };
        assert_eq!(run(), run());
    }

    #[test]
    fn checkpoint_roundtrip_bit_exact() {
        let mut rng = seeded_rng(42);
        let mut params = ParamSet::new();
        params.insert("enc.w0", glorot_uniform(&mut rng, 3, 4));
        params.insert("dec.b1", glorot_uniform(&mut rng, 1, 4));
        let tmp = tempfile::TempDir::new().unwrap();
        let path = tmp.path().join("ckpt.txt");
        save_checkpoint(&params, &path).unwrap();
        let loaded = load_checkpoint(&path).unwrap();
        assert_eq!(params.names(), loaded.names());
        for (name, m) in params.iter() {
            let l = loaded.get(name);
            assert_eq!(m.values(), l.values());
        }
    }

    #[test]
    fn glorot_draws_are_seed_deterministic() {
        let a = glorot_uniform(&mut seeded_rng(9), 4, 5);
        let b = glorot_uniform(&mut seeded_rng(9), 4, 5);
        assert_eq!(a.values(), b.values());
        let limit = (6.0 / 9.0f64).sqrt();
        assert!(a.values().iter().all(|v| v.abs() < limit));
    }
}
