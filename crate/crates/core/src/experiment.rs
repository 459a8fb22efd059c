//! Orchestration of the two experiment suites over seeded split
//! realizations: feature-recovery error and downstream graph
//! classification, plus result-table and embedding-plot emission.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;

use crate::config::ExperimentConfig;
use crate::error::{Error, Result};
use crate::gae::{train_gae, write_projection_csv, EmbeddingSet};
use crate::gin::{evaluate_accuracy, train_gin, Example};
use crate::graph::{one_hot_features, split_dataset, Dataset, SplitPlan};
use crate::matrix::{mean_std, DenseMatrix};
use crate::recovery::{
    baseline_features, build_neighbor_plan, lse_ng_estimate, lse_nn_estimate, recovery_error,
    BaselineKind,
};
use crate::structural::{structural_feature_matrix, zscore_normalize, StructuralFeatureMatrix};

/// Mean and standard deviation over the per-realization values of one
/// method.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub method: String,
    pub values: Vec<f64>,
    pub mean: f64,
    pub std: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResultsTable {
    pub dataset: String,
    pub seeds: Vec<u64>,
    pub rows: Vec<ResultRow>,
}

impl ResultsTable {
    fn from_runs(dataset: &str, seeds: Vec<u64>, per_seed: Vec<BTreeMap<String, f64>>) -> Self {
        let mut rows = Vec::new();
        if let Some(first) = per_seed.first() {
            for method in first.keys() {
                let values: Vec<f64> = per_seed.iter().map(|m| m[method]).collect();
                let (mean, std) = mean_std(&values);
                rows.push(ResultRow {
                    method: method.clone(),
                    values,
                    mean,
                    std,
                });
            }
        }
        Self {
            dataset: dataset.to_string(),
            seeds,
            rows,
        }
    }

    pub fn row(&self, method: &str) -> Option<&ResultRow> {
        self.rows.iter().find(|r| r.method == method)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let seeds: Vec<String> = self.seeds.iter().map(|s| s.to_string()).collect();
        let _ = writeln!(out, "# realization_seeds: {}", seeds.join(","));
        let headers: Vec<String> = (1..=self.seeds.len()).map(|i| format!("r{i}")).collect();
        let _ = writeln!(out, "method,dataset,mean,std,{}", headers.join(","));
        for row in &self.rows {
            let values: Vec<String> = row.values.iter().map(|v| format!("{v:.6}")).collect();
            let _ = writeln!(
                out,
                "{},{},{:.6},{:.6},{}",
                row.method,
                self.dataset,
                row.mean,
                row.std,
                values.join(",")
            );
        }
        out
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_csv())?;
        Ok(())
    }
}

fn mix_seed(seed: u64, graph_id: usize, salt: u64) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(graph_id as u64)
        .wrapping_add(salt.wrapping_mul(0x51_7C_C1_B7_27_22_0A_95))
}

/// Names of the recovery methods an experiment runs, with the learned
/// estimators expanded over the Q̄ list.
pub fn recovery_method_names(config: &ExperimentConfig) -> Vec<String> {
    let mut names = Vec::new();
    for base in ["zeros", "ones", "random", "degree"] {
        if config.runs_method(base) {
            names.push(base.to_string());
        }
    }
    for variant in ["lse-ng", "lse-nn"] {
        if config.runs_method(variant) {
            for &q in &config.q_bar_list {
                names.push(format!("{variant}-q{q}"));
            }
        }
    }
    names
}

/// Estimated feature matrix for one missing-features graph under one
/// method.
#[allow(clippy::too_many_arguments)]
pub fn estimate_features(
    method: &str,
    graph_id: usize,
    dataset: &Dataset,
    true_features: &[DenseMatrix],
    embeddings: &EmbeddingSet,
    split: &SplitPlan,
    n_bar: usize,
    realization_seed: u64,
) -> Result<DenseMatrix> {
    let graph = dataset.graph(graph_id);
    let num_features = dataset.node_label_alphabet;
    let labels: Vec<usize> = dataset.graphs.iter().map(|g| g.label).collect();
    match method {
        "zeros" => Ok(baseline_features(
            BaselineKind::Zeros,
            graph,
            num_features,
            0,
        )),
        "ones" => Ok(baseline_features(
            BaselineKind::Ones,
            graph,
            num_features,
            0,
        )),
        "random" => Ok(baseline_features(
            BaselineKind::Random,
            graph,
            num_features,
            mix_seed(realization_seed, graph_id, 1),
        )),
        "degree" => Ok(baseline_features(
            BaselineKind::Degree,
            graph,
            num_features,
            0,
        )),
        _ => {
            let (variant, q_bar) = method
                .rsplit_once("-q")
                .and_then(|(v, q)| q.parse::<usize>().ok().map(|q| (v, q)))
                .ok_or_else(|| Error::InvalidValue {
                    key: "method".into(),
                    reason: format!("unknown method `{method}`"),
                })?;
            let plan =
                build_neighbor_plan(graph_id, embeddings, &labels, &split.full_ids, q_bar, n_bar)?;
            let donor_features: Vec<&DenseMatrix> =
                plan.donors.iter().map(|&j| &true_features[j - 1]).collect();
            match variant {
                "lse-nn" => lse_nn_estimate(&plan, &donor_features),
                "lse-ng" => lse_ng_estimate(
                    graph.num_nodes,
                    &plan.donors,
                    &donor_features,
                    mix_seed(realization_seed, graph_id, 2),
                ),
                other => Err(Error::InvalidValue {
                    key: "method".into(),
                    reason: format!("unknown method `{other}`"),
                }),
            }
        }
    }
}

/// Structure-only inputs shared by every realization.
pub struct PreparedDataset {
    pub dataset: Dataset,
    pub normalized_features: Vec<StructuralFeatureMatrix>,
    pub true_features: Vec<DenseMatrix>,
}

impl PreparedDataset {
    pub fn prepare(dataset: Dataset) -> Result<Self> {
        let raw: Vec<_> = dataset
            .graphs
            .iter()
            .map(structural_feature_matrix)
            .collect();
        let normalized_features = zscore_normalize(&raw)?;
        let true_features = one_hot_features(&dataset)?;
        Ok(Self {
            dataset,
            normalized_features,
            true_features,
        })
    }
}

/// One realization of the recovery experiment: split, train the
/// autoencoder, estimate features for every missing-features graph
/// under every method, return per-method mean error.
fn recovery_realization(
    prepared: &PreparedDataset,
    config: &ExperimentConfig,
    seed: u64,
) -> Result<BTreeMap<String, f64>> {
    let split = split_dataset(&prepared.dataset, config.ratios, seed)?;
    let (model, _history) = train_gae(
        &prepared.normalized_features,
        &prepared.dataset,
        &config.gae,
        seed,
    )?;
    let embeddings =
        EmbeddingSet::compute(&model, &prepared.dataset, &prepared.normalized_features)?;

    let mut out = BTreeMap::new();
    for method in recovery_method_names(config) {
        let mut errors = Vec::with_capacity(split.miss_ids.len());
        for &i in &split.miss_ids {
            let estimate = estimate_features(
                &method,
                i,
                &prepared.dataset,
                &prepared.true_features,
                &embeddings,
                &split,
                config.n_bar,
                seed,
            )?;
            errors.push(recovery_error(&prepared.true_features[i - 1], &estimate)?);
        }
        let (mean, _) = mean_std(&errors);
        out.insert(method, mean);
    }
    Ok(out)
}

/// Table-1-style experiment: per-realization mean recovery error over
/// the missing set, aggregated to mean +- std per method.
pub fn run_recovery_experiment(
    prepared: &PreparedDataset,
    config: &ExperimentConfig,
) -> Result<ResultsTable> {
    config.validate()?;
    let seeds = config.realization_seeds();
    let per_seed: Vec<BTreeMap<String, f64>> = seeds
        .par_iter()
        .map(|&s| recovery_realization(prepared, config, s))
        .collect::<Result<Vec<_>>>()?;
    Ok(ResultsTable::from_runs(
        &prepared.dataset.name,
        seeds,
        per_seed,
    ))
}

fn classification_method_names(config: &ExperimentConfig) -> Vec<String> {
    let mut names = Vec::new();
    for base in [
        "true-features",
        "zeros",
        "ones",
        "random",
        "degree",
        "not-using-tmiss",
    ] {
        if config.runs_method(base) {
            names.push(base.to_string());
        }
    }
    for variant in ["lse-ng", "lse-nn"] {
        if config.runs_method(variant) {
            for &q in &config.q_bar_list {
                names.push(format!("{variant}-q{q}"));
            }
        }
    }
    names
}

fn classification_realization(
    prepared: &PreparedDataset,
    config: &ExperimentConfig,
    seed: u64,
) -> Result<BTreeMap<String, f64>> {
    let ds = &prepared.dataset;
    let split = split_dataset(ds, config.ratios, seed)?;
    let needs_embeddings = ["lse-ng", "lse-nn"].iter().any(|m| config.runs_method(m));
    let embeddings = if needs_embeddings {
        let (model, _) = train_gae(&prepared.normalized_features, ds, &config.gae, seed)?;
        Some(EmbeddingSet::compute(
            &model,
            ds,
            &prepared.normalized_features,
        )?)
    } else {
        None
    };

    let with_labels = |ids: &[usize]| -> Vec<(usize, usize)> {
        ids.iter().map(|&i| (i, ds.graph(i).label)).collect()
    };
    let val_ids = with_labels(&split.val_ids);
    let test_ids = with_labels(&split.test_ids);

    let mut out = BTreeMap::new();
    for method in classification_method_names(config) {
        // features per graph: true X everywhere except the missing
        // set, which carries the method's estimates
        let mut features: Vec<DenseMatrix> = prepared.true_features.clone();
        let mut train_ids: Vec<usize> = split.full_ids.clone();
        match method.as_str() {
            "true-features" => {
                train_ids.extend(&split.miss_ids);
            }
            "not-using-tmiss" => {}
            other => {
                for &i in &split.miss_ids {
                    features[i - 1] = estimate_features(
                        other,
                        i,
                        ds,
                        &prepared.true_features,
                        embeddings.as_ref().expect("embeddings trained"),
                        &split,
                        config.n_bar,
                        seed,
                    )?;
                }
                train_ids.extend(&split.miss_ids);
            }
        }
        train_ids.sort_unstable();

        let build = |ids: &[(usize, usize)]| -> Vec<Example> {
            ids.iter()
                .map(|&(i, y)| (ds.graph(i), &features[i - 1], y))
                .collect()
        };
        let train_set: Vec<Example> = train_ids
            .iter()
            .map(|&i| (ds.graph(i), &features[i - 1], ds.graph(i).label))
            .collect();
        let val_set = build(&val_ids);
        let test_set = build(&test_ids);

        let (model, _report) = train_gin(
            &train_set,
            &val_set,
            &config.gin,
            ds.node_label_alphabet,
            ds.num_classes,
            seed,
        )?;
        let acc = evaluate_accuracy(&model, &test_set)?;
        out.insert(method, acc * 100.0);
    }
    Ok(out)
}

/// Table-2-style experiment: per-realization test accuracy (in
/// percent) of a fresh classifier per method.
pub fn run_classification_experiment(
    prepared: &PreparedDataset,
    config: &ExperimentConfig,
) -> Result<ResultsTable> {
    config.validate()?;
    let seeds = config.realization_seeds();
    let per_seed: Vec<BTreeMap<String, f64>> = seeds
        .par_iter()
        .map(|&s| classification_realization(prepared, config, s))
        .collect::<Result<Vec<_>>>()?;
    Ok(ResultsTable::from_runs(
        &prepared.dataset.name,
        seeds,
        per_seed,
    ))
}

/// Writes `results.csv`, `embeddings_2d.csv` and (optionally) an SVG
/// scatter of the projected node embeddings colored by class.
pub fn emit_outputs(
    table: &ResultsTable,
    embeddings: &EmbeddingSet,
    dataset: &Dataset,
    out_dir: &Path,
    emit_plot: bool,
) -> Result<()> {
    std::fs::create_dir_all(out_dir)?;
    table.write_csv(&out_dir.join("results.csv"))?;
    write_projection_csv(embeddings, dataset, &out_dir.join("embeddings_2d.csv"))?;
    if emit_plot {
        let svg = scatter_svg(&out_dir.join("embeddings_2d.csv"))?;
        std::fs::write(out_dir.join("embeddings_2d.svg"), svg)?;
    }
    Ok(())
}

const SCATTER_COLORS: &[&str] = &[
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
];

/// Renders the `embeddings_2d.csv` points as a static SVG scatter.
pub fn scatter_svg(csv_path: &Path) -> Result<String> {
    let text = std::fs::read_to_string(csv_path).map_err(|source| Error::UnreadableFile {
        path: csv_path.to_path_buf(),
        source,
    })?;
    let mut points = Vec::new();
    for line in text.lines().skip(1) {
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() != 5 {
            continue;
        }
        let x: f64 = cols[2].parse().unwrap_or(0.0);
        let y: f64 = cols[3].parse().unwrap_or(0.0);
        let class: usize = cols[4].parse().unwrap_or(0);
        points.push((x, y, class));
    }
    let (mut min_x, mut max_x, mut min_y, mut max_y) = (
        f64::INFINITY,
        f64::NEG_INFINITY,
        f64::INFINITY,
        f64::NEG_INFINITY,
    );
    for &(x, y, _) in &points {
        min_x = min_x.min(x);
        max_x = max_x.max(x);
        min_y = min_y.min(y);
        max_y = max_y.max(y);
    }
    let (w, h, pad) = (640.0, 480.0, 24.0);
    let sx = |x: f64| pad + (x - min_x) / (max_x - min_x).max(1e-12) * (w - 2.0 * pad);
    let sy = |y: f64| h - pad - (y - min_y) / (max_y - min_y).max(1e-12) * (h - 2.0 * pad);
    let mut svg = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" \
         viewBox=\"0 0 {w} {h}\">\n<rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n"
    );
    for (x, y, class) in points {
        let color = SCATTER_COLORS[class % SCATTER_COLORS.len()];
        let _ = writeln!(
            svg,
            "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"2.5\" fill=\"{color}\" fill-opacity=\"0.7\"/>",
            sx(x),
            sy(y)
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
