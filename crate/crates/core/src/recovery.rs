//! Feature recovery for graphs with completely missing node features:
//! nearest same-label donor graphs in graph-embedding space, nearest
//! donor nodes in node-embedding space, the row-stochastic transfer
//! matrix, the averaging estimator and its random-node variant, the
//! four constant baselines, and the relative Frobenius error metric.

use std::fmt::Write as _;

use rand::Rng;

use crate::error::{Error, Result};
use crate::gae::{embedding_distance, EmbeddingSet};
use crate::graph::Graph;
use crate::matrix::DenseMatrix;
use crate::nn::seeded_rng;

/// Donor selection for one recipient graph: ordered donor graph ids
/// and, per donor, the nearest-node set for each recipient node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborPlan {
    pub recipient: usize,
    /// Donor graph ids ordered by ascending graph-embedding distance.
    pub donors: Vec<usize>,
    /// `node_sets[d][n]` = donor-node indices assigned to recipient
    /// node `n` from donor `donors[d]`, ascending.
    pub node_sets: Vec<Vec<Vec<usize>>>,
    pub q_bar: usize,
    pub n_bar: usize,
}

/// The min(Q̄, available) same-label donors from `full_ids` with the
/// smallest Euclidean graph-embedding distance; ties break by
/// ascending graph id.
///
/// If `full_ids` holds no same-label graph, falls back to the nearest
/// graphs regardless of label with a logged warning rather than
/// failing outright.
pub fn nearest_graphs(
    recipient: usize,
    embeddings: &EmbeddingSet,
    labels: &[usize],
    full_ids: &[usize],
    q_bar: usize,
) -> Result<Vec<usize>> {
    let target = embeddings.graph(recipient);
    let label = labels[recipient - 1];
    let mut candidates: Vec<usize> = full_ids
        .iter()
        .copied()
        .filter(|&j| j != recipient && labels[j - 1] == label)
        .collect();
    if candidates.is_empty() {
        log::warn!(
            "no same-label donor in the fully-observed set for graph {recipient}; \
             falling back to label-agnostic nearest graphs"
        );
        candidates = full_ids
            .iter()
            .copied()
            .filter(|&j| j != recipient)
            .collect();
        if candidates.is_empty() {
            return Err(Error::NoDonorAvailable(recipient));
        }
    }
    candidates.sort_by(|&a, &b| {
        let da = embedding_distance(target, embeddings.graph(a));
        let db = embedding_distance(target, embeddings.graph(b));
        da.partial_cmp(&db).unwrap().then(a.cmp(&b))
    });
    if candidates.len() < q_bar {
        log::warn!(
            "only {} same-label donors available for graph {recipient} (Q̄ = {q_bar})",
            candidates.len()
        );
    }
    candidates.truncate(q_bar);
    Ok(candidates)
}

/// The min(N̄, N_j) donor nodes minimizing node-embedding distance to
/// recipient node `n`; ties break by ascending node index. Returned
/// sorted ascending.
pub fn nearest_nodes(
    n: usize,
    z_recipient: &DenseMatrix,
    z_donor: &DenseMatrix,
    n_bar: usize,
) -> Vec<usize> {
    let target = z_recipient.row(n);
    let mut order: Vec<usize> = (0..z_donor.rows()).collect();
    order.sort_by(|&a, &b| {
        let da: f64 = z_donor
            .row(a)
            .iter()
            .zip(target)
            .map(|(x, y)| (x - y) * (x - y))
            .sum();
        let db: f64 = z_donor
            .row(b)
            .iter()
            .zip(target)
            .map(|(x, y)| (x - y) * (x - y))
            .sum();
        da.partial_cmp(&db).unwrap().then(a.cmp(&b))
    });
    order.truncate(n_bar.min(z_donor.rows()));
    order.sort_unstable();
    order
}

/// Builds the complete neighbor plan for one recipient graph.
pub fn build_neighbor_plan(
    recipient: usize,
    embeddings: &EmbeddingSet,
    labels: &[usize],
    full_ids: &[usize],
    q_bar: usize,
    n_bar: usize,
) -> Result<NeighborPlan> {
    let donors = nearest_graphs(recipient, embeddings, labels, full_ids, q_bar)?;
    let z_i = embeddings.nodes(recipient);
    let node_sets = donors
        .iter()
        .map(|&j| {
            let z_j = embeddings.nodes(j);
            (0..z_i.rows())
                .map(|n| nearest_nodes(n, z_i, z_j, n_bar))
                .collect()
        })
        .collect();
    Ok(NeighborPlan {
        recipient,
        donors,
        node_sets,
        q_bar,
        n_bar,
    })
}

/// The row-stochastic transfer matrix: entry (n, l) is
/// 1/|N_n| when donor node l belongs to the neighbor set of recipient
/// node n, 0 otherwise.
pub fn transfer_matrix(node_sets: &[Vec<usize>], donor_num_nodes: usize) -> Result<DenseMatrix> {
    let mut c = DenseMatrix::zeros(node_sets.len(), donor_num_nodes);
    for (n, set) in node_sets.iter().enumerate() {
        if set.is_empty() {
            return Err(Error::EmptyNeighborSet(n));
        }
        let w = 1.0 / set.len() as f64;
        for &l in set {
            c.set(n, l, w);
        }
    }
    Ok(c)
}

/// Nearest-node estimator: the mean over donors of C X, divided by the
/// actual number of donors used.
pub fn lse_nn_estimate(
    plan: &NeighborPlan,
    donor_features: &[&DenseMatrix],
) -> Result<DenseMatrix> {
    assert_eq!(donor_features.len(), plan.donors.len());
    let mut sum: Option<DenseMatrix> = None;
    for (node_sets, x) in plan.node_sets.iter().zip(donor_features) {
        let c = transfer_matrix(node_sets, x.rows())?;
        let contrib = c.matmul(x)?;
        sum = Some(match sum {
            Some(s) => s.add(&contrib)?,
            None => contrib,
        });
    }
    let count = plan.donors.len() as f64;
    sum.map(|s| s.scale(1.0 / count))
        .ok_or(Error::NoDonorAvailable(plan.recipient))
}

/// Random-node variant: each donor contributes a selection matrix with
/// one uniformly drawn 1 per recipient row (with replacement across
/// rows), averaged over donors. Seeded and reproducible.
pub fn lse_ng_estimate(
    recipient_num_nodes: usize,
    donors: &[usize],
    donor_features: &[&DenseMatrix],
    seed: u64,
) -> Result<DenseMatrix> {
    assert_eq!(donor_features.len(), donors.len());
    if donors.is_empty() {
        return Err(Error::NoDonorAvailable(0));
    }
    let mut rng = seeded_rng(seed);
    let mut sum: Option<DenseMatrix> = None;
    for x in donor_features {
        let mut contrib = DenseMatrix::zeros(recipient_num_nodes, x.cols());
        for n in 0..recipient_num_nodes {
            let pick = rng.random_range(0..x.rows());
            for c in 0..x.cols() {
                contrib.set(n, c, x.get(pick, c));
            }
        }
        sum = Some(match sum {
            Some(s) => s.add(&contrib)?,
            None => contrib,
        });
    }
    Ok(sum.unwrap().scale(1.0 / donors.len() as f64))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaselineKind {
    Zeros,
    Ones,
    Random,
    Degree,
}

/// Constant baseline feature matrices. `Random` is i.i.d. Uniform[0,1]
/// from the given seed; `Degree` one-hot encodes min(deg(n), F - 1).
pub fn baseline_features(
    kind: BaselineKind,
    graph: &Graph,
    num_features: usize,
    seed: u64,
) -> DenseMatrix {
    let n = graph.num_nodes;
    match kind {
        BaselineKind::Zeros => DenseMatrix::zeros(n, num_features),
        BaselineKind::Ones => DenseMatrix::filled(n, num_features, 1.0),
        BaselineKind::Random => {
            let mut rng = seeded_rng(seed);
            let values = (0..n * num_features)
                .map(|_| rng.random_range(0.0..1.0))
                .collect();
            DenseMatrix::from_vec(n, num_features, values)
        }
        BaselineKind::Degree => {
            let mut x = DenseMatrix::zeros(n, num_features);
            for (v, d) in graph.degrees().into_iter().enumerate() {
                x.set(v, d.min(num_features - 1), 1.0);
            }
            x
        }
    }
}

/// Relative Frobenius error ||X - X̂||_F / ||X||_F.
pub fn recovery_error(truth: &DenseMatrix, estimate: &DenseMatrix) -> Result<f64> {
    if truth.shape() != estimate.shape() {
        return Err(Error::ShapeMismatch(format!(
            "recovery_error {:?} against {:?}",
            truth.shape(),
            estimate.shape()
        )));
    }
    let ref_norm = truth.frobenius_norm();
    if ref_norm == 0.0 {
        return Err(Error::ZeroReference);
    }
    Ok(truth.sub(estimate)?.frobenius_norm() / ref_norm)
}

/// Human-readable debug dump of a neighbor plan.
pub fn format_neighbor_plan(plan: &NeighborPlan, embeddings: &EmbeddingSet) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "recipient graph {} (Q̄ = {}, N̄ = {})",
        plan.recipient, plan.q_bar, plan.n_bar
    );
    let target = embeddings.graph(plan.recipient);
    for (d, &j) in plan.donors.iter().enumerate() {
        let dist = embedding_distance(target, embeddings.graph(j));
        let _ = writeln!(out, "  donor {j} (distance {dist:.6})");
        for (n, set) in plan.node_sets[d].iter().enumerate() {
            let _ = writeln!(out, "    node {n} <- {set:?}");
        }
    }
    out
}
