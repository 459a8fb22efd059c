//! Acceptance gate: one check per criterion, each printing a single
//! PASS / FAIL / SKIP line. Criteria that quote numbers for the
//! published TUDataset benchmarks (MUTAG, AIDS, PROTEINS, ENZYMES)
//! need those files on disk; point `GRAPHFILL_DATA` at a directory of
//! TUDataset-format dataset directories (or put them under `data/` in
//! the workspace root). When they are absent, those criteria run a
//! synthetic analogue and report SKIP for the benchmark-specific part
//! instead of silently passing.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the
//! per-criterion lines.

use std::collections::HashMap;
use std::path::PathBuf;
use std::process::Command;

use rand::Rng;

use graphfill::config::ExperimentConfig;
use graphfill::error::Result;
use graphfill::experiment::{
    run_classification_experiment, run_recovery_experiment, PreparedDataset,
};
use graphfill::gae::{embedding_distance, graph_embedding, EmbeddingSet, GaeConfig, GaeModel};
use graphfill::gin::{GinConfig, GinModel};
use graphfill::graph::{one_hot_features, parse_tudataset, Dataset, Graph};
use graphfill::matrix::DenseMatrix;
use graphfill::nn::{finite_difference_check, mse_loss, seeded_rng, ParamSet, Tape};
use graphfill::recovery::{
    baseline_features, build_neighbor_plan, lse_nn_estimate, nearest_graphs, nearest_nodes,
    recovery_error, transfer_matrix, BaselineKind,
};
use graphfill::synth::generate_dataset;

enum Outcome {
    Pass(String),
    Skip(String),
    Fail(String),
}

fn data_root() -> Option<PathBuf> {
    if let Ok(dir) = std::env::var("GRAPHFILL_DATA") {
        return Some(PathBuf::from(dir));
    }
    let workspace = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data");
    workspace.is_dir().then_some(workspace)
}

fn real_dataset(name: &str) -> Option<Dataset> {
    let root = data_root()?;
    parse_tudataset(&root.join(name), name).ok()
}

/// Mean over all graphs of the relative error of one baseline,
/// optionally averaged over several random draws.
fn baseline_mean_error(dataset: &Dataset, kind: BaselineKind, seeds: &[u64]) -> Result<f64> {
    let truth = one_hot_features(dataset)?;
    let f = dataset.node_label_alphabet;
    let mut total = 0.0;
    for &seed in seeds {
        for (g, x) in dataset.graphs.iter().zip(&truth) {
            let est =
                baseline_features(kind, g, f, seed.wrapping_mul(31).wrapping_add(g.id as u64));
            total += recovery_error(x, &est)?;
        }
    }
    Ok(total / (seeds.len() * dataset.len()) as f64)
}

fn criterion_1() -> Outcome {
    let synth = generate_dataset("SYNTH", 30, 0).unwrap();
    let zeros = baseline_mean_error(&synth, BaselineKind::Zeros, &[0]).unwrap();
    let ones = baseline_mean_error(&synth, BaselineKind::Ones, &[0]).unwrap();
    let expect = ((synth.node_label_alphabet - 1) as f64).sqrt();
    if (zeros - 1.0).abs() > 1e-12 || (ones - expect).abs() > 1e-12 {
        return Outcome::Fail(format!(
            "synthetic anchors off: zeros {zeros}, ones {ones} (expected 1 and {expect})"
        ));
    }

    let mut verified = Vec::new();
    for name in ["MUTAG", "AIDS", "PROTEINS", "ENZYMES"] {
        let Some(ds) = real_dataset(name) else {
            continue;
        };
        let zeros = baseline_mean_error(&ds, BaselineKind::Zeros, &[0]).unwrap();
        let ones = baseline_mean_error(&ds, BaselineKind::Ones, &[0]).unwrap();
        let expect = ((ds.node_label_alphabet - 1) as f64).sqrt();
        if (zeros - 1.0).abs() > 1e-12 || (ones - expect).abs() > 0.005 {
            return Outcome::Fail(format!(
                "{name}: zeros {zeros}, ones {ones} (expected 1 and {expect})"
            ));
        }
        verified.push(format!("{name} ones {ones:.4}"));
    }
    if verified.is_empty() {
        Outcome::Skip(format!(
            "benchmark datasets unavailable; synthetic anchors exact (zeros 1, ones {expect:.4})"
        ))
    } else {
        Outcome::Pass(format!("zeros 1.000000 exactly; {}", verified.join(", ")))
    }
}

fn criterion_2() -> Outcome {
    let seeds: Vec<u64> = (0..15).collect();
    let check = |ds: &Dataset, published: Option<f64>| -> std::result::Result<f64, String> {
        let measured = baseline_mean_error(ds, BaselineKind::Random, &seeds).unwrap();
        let analytic = (ds.node_label_alphabet as f64 / 3.0).sqrt();
        if (measured - analytic).abs() / analytic > 0.05 {
            return Err(format!(
                "{}: random {measured:.4} vs analytic {analytic:.4}",
                ds.name
            ));
        }
        if let Some(p) = published {
            if (measured - p).abs() / p > 0.05 {
                return Err(format!(
                    "{}: random {measured:.4} vs published {p}",
                    ds.name
                ));
            }
        }
        Ok(measured)
    };

    let synth = generate_dataset("SYNTH", 30, 0).unwrap();
    if let Err(msg) = check(&synth, None) {
        return Outcome::Fail(msg);
    }
    let mut verified = Vec::new();
    for (name, published) in [("MUTAG", 1.510), ("AIDS", 3.550)] {
        let Some(ds) = real_dataset(name) else {
            continue;
        };
        match check(&ds, Some(published)) {
            Ok(m) => verified.push(format!("{name} {m:.4}")),
            Err(msg) => return Outcome::Fail(msg),
        }
    }
    if verified.is_empty() {
        Outcome::Skip("published values unavailable; synthetic within 5% of sqrt(F/3)".into())
    } else {
        Outcome::Pass(format!(
            "within 5% of analytic and published: {}",
            verified.join(", ")
        ))
    }
}

/// Per-realization ordering checks shared by the benchmark and
/// synthetic variants of criterion 3.
fn ordering_counts(table: &graphfill::ResultsTable) -> (usize, usize) {
    let v = |m: &str| &table.row(m).unwrap().values;
    let (nn, ng, ones, degree) = (v("lse-nn-q1"), v("lse-ng-q1"), v("ones"), v("degree"));
    let n = nn.len();
    let chain = (0..n).filter(|&r| nn[r] < ng[r] && ng[r] < ones[r]).count();
    let vs_degree = (0..n).filter(|&r| nn[r] < degree[r]).count();
    (chain, vs_degree)
}

fn criterion_3() -> Outcome {
    let methods = || {
        vec![
            "ones".into(),
            "degree".into(),
            "lse-ng".into(),
            "lse-nn".into(),
        ]
    };
    let synth = PreparedDataset::prepare(generate_dataset("SYNTH", 30, 0).unwrap()).unwrap();
    let config = ExperimentConfig {
        num_realizations: 5,
        q_bar_list: vec![1],
        methods: methods(),
        gae: GaeConfig {
            epochs: 120,
            ..GaeConfig::default()
        },
        ..ExperimentConfig::default()
    };
    let table = run_recovery_experiment(&synth, &config).unwrap();
    let (chain, vs_degree) = ordering_counts(&table);
    if chain < 4 || vs_degree < 4 {
        return Outcome::Fail(format!(
            "synthetic ordering: LSE-NN<LSE-NG<Ones in {chain}/5, LSE-NN<Degree in {vs_degree}/5"
        ));
    }

    let mut verified = Vec::new();
    for name in ["MUTAG", "AIDS"] {
        let Some(ds) = real_dataset(name) else {
            continue;
        };
        let prepared = PreparedDataset::prepare(ds).unwrap();
        let config = ExperimentConfig {
            q_bar_list: vec![1],
            methods: methods(),
            ..ExperimentConfig::default()
        };
        let table = run_recovery_experiment(&prepared, &config).unwrap();
        let (chain, vs_degree) = ordering_counts(&table);
        if chain < 12 || vs_degree < 12 {
            return Outcome::Fail(format!(
                "{name}: LSE-NN<LSE-NG<Ones in {chain}/15, LSE-NN<Degree in {vs_degree}/15"
            ));
        }
        let nn = table.row("lse-nn-q1").unwrap().mean;
        if name == "MUTAG" && nn > 0.35 {
            return Outcome::Fail(format!("MUTAG LSE-NN mean {nn:.3} > 0.35"));
        }
        verified.push(format!("{name} LSE-NN {nn:.3}"));
    }
    if verified.is_empty() {
        Outcome::Skip(format!(
            "benchmark trend unavailable; synthetic ordering held in {chain}/5 and {vs_degree}/5 realizations"
        ))
    } else {
        Outcome::Pass(format!("ordering held on {}", verified.join(", ")))
    }
}

fn criterion_4() -> Outcome {
    // full composite: 2 GCN layers + decoder MLP, random graph and target
    let config = GaeConfig {
        encoder_widths: vec![9, 8, 4],
        decoder_widths: vec![4, 8, 9],
        ..GaeConfig::default()
    };
    let graph = Graph::new(
        1,
        6,
        [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5), (1, 4)],
        0,
        None,
    )
    .unwrap();
    let mut worst = 0.0f64;
    for seed in 0..5 {
        let mut rng = seeded_rng(100 + seed);
        let mut x = DenseMatrix::zeros(6, 9);
        for r in 0..6 {
            for c in 0..9 {
                x.set(r, c, rng.random_range(-1.0..1.0));
            }
        }
        let model = GaeModel::init(config.clone(), seed).unwrap();
        let loss_fn = |p: &ParamSet| -> Result<f64> {
            let m = GaeModel {
                config: config.clone(),
                params: p.clone(),
            };
            mse_loss(&m.reconstruct(&graph, &x)?, &x)
        };
        let grad_fn = |p: &ParamSet| -> Result<HashMap<String, DenseMatrix>> {
            let m = GaeModel {
                config: config.clone(),
                params: p.clone(),
            };
            let mut tape = Tape::new();
            let ids = tape.params(p);
            let loss = m.record_loss(&mut tape, &ids, &graph, &x)?;
            tape.backward(loss)
        };
        let err = finite_difference_check(&model.params, 1e-5, 48, loss_fn, grad_fn).unwrap();
        worst = worst.max(err);
    }
    if worst >= 1e-4 {
        return Outcome::Fail(format!("composite max relative error {worst:.2e}"));
    }

    // affine + MSE primitive
    let mut rng = seeded_rng(7);
    let x = {
        let mut m = DenseMatrix::zeros(4, 3);
        for r in 0..4 {
            for c in 0..3 {
                m.set(r, c, rng.random_range(-1.0..1.0));
            }
        }
        m
    };
    let t = DenseMatrix::zeros(4, 2);
    let mut params = ParamSet::new();
    params.insert("w", graphfill::nn::glorot_uniform(&mut rng, 3, 2));
    params.insert("b", DenseMatrix::zeros(1, 2));
    let loss_fn = |p: &ParamSet| -> Result<f64> {
        mse_loss(&x.matmul(p.get("w"))?.add_row_bias(p.get("b"))?, &t)
    };
    let grad_fn = |p: &ParamSet| -> Result<HashMap<String, DenseMatrix>> {
        let mut tape = Tape::new();
        let ids = tape.params(p);
        let xc = tape.constant(x.clone());
        let h = tape.matmul(xc, ids["w"])?;
        let h = tape.add_row_bias(h, ids["b"])?;
        let loss = tape.mse(h, &t)?;
        tape.backward(loss)
    };
    let affine = finite_difference_check(&params, 1e-5, 48, loss_fn, grad_fn).unwrap();
    if affine >= 1e-6 {
        return Outcome::Fail(format!("affine/MSE max relative error {affine:.2e}"));
    }
    Outcome::Pass(format!(
        "composite {worst:.2e} < 1e-4 over 5 seeds, affine/MSE {affine:.2e} < 1e-6"
    ))
}

fn criterion_5() -> Outcome {
    let gae = GaeModel::init(
        GaeConfig {
            encoder_widths: vec![9, 8, 4],
            decoder_widths: vec![4, 8, 9],
            ..GaeConfig::default()
        },
        0,
    )
    .unwrap();
    let gin = GinModel::init(
        GinConfig {
            hidden_dim: 8,
            ..GinConfig::default()
        },
        9,
        3,
        0,
    );
    let mut worst = 0.0f64;
    let mut rng = seeded_rng(50);
    for _ in 0..50 {
        let n = rng.random_range(4..10);
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if rng.random_range(0.0..1.0) < 0.4 {
                    edges.push((a, b));
                }
            }
        }
        // keep connected enough: chain fallback
        for v in 1..n {
            if !edges.iter().any(|&(a, b)| a == v || b == v) {
                edges.push((v - 1, v));
            }
        }
        let g = Graph::new(1, n, edges, 0, None).unwrap();
        let mut x = DenseMatrix::zeros(n, 9);
        for r in 0..n {
            for c in 0..9 {
                x.set(r, c, rng.random_range(-1.0..1.0));
            }
        }
        // a random permutation of the node ids
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            perm.swap(i, rng.random_range(0..=i));
        }
        let pg = g.permuted(&perm).unwrap();
        let mut px = DenseMatrix::zeros(n, 9);
        for (r, &pr) in perm.iter().enumerate() {
            for c in 0..9 {
                px.set(pr, c, x.get(r, c));
            }
        }

        let z = gae.encode(&g, &x).unwrap();
        let pz = gae.encode(&pg, &px).unwrap();
        for (r, &pr) in perm.iter().enumerate() {
            for c in 0..z.cols() {
                worst = worst.max((z.get(r, c) - pz.get(pr, c)).abs());
            }
        }
        let zg = graph_embedding(&z).unwrap();
        let pzg = graph_embedding(&pz).unwrap();
        worst = worst.max(zg.max_abs_diff(&pzg));
        let logits = gin.forward(&g, &x).unwrap();
        let plogits = gin.forward(&pg, &px).unwrap();
        worst = worst.max(logits.max_abs_diff(&plogits));
    }
    if worst > 1e-9 {
        Outcome::Fail(format!("max deviation {worst:.2e} > 1e-9"))
    } else {
        Outcome::Pass(format!("50 graphs, max deviation {worst:.2e} <= 1e-9"))
    }
}

fn criterion_6() -> Outcome {
    let mut rng = seeded_rng(60);
    for trial in 0..40 {
        let num_graphs = rng.random_range(2..=5usize);
        let dim = 3;
        let sizes: Vec<usize> = (0..num_graphs).map(|_| rng.random_range(1..=6)).collect();
        let node_embeddings: Vec<DenseMatrix> = sizes
            .iter()
            .map(|&n| {
                let mut m = DenseMatrix::zeros(n, dim);
                for r in 0..n {
                    for c in 0..dim {
                        m.set(r, c, rng.random_range(-1.0..1.0));
                    }
                }
                m
            })
            .collect();
        let graph_embeddings: Vec<DenseMatrix> = node_embeddings
            .iter()
            .map(|z| graph_embedding(z).unwrap())
            .collect();
        let embeddings = EmbeddingSet {
            node_embeddings,
            graph_embeddings,
            dim,
        };
        let labels: Vec<usize> = (0..num_graphs).map(|_| rng.random_range(0..2)).collect();
        let recipient = 1;
        let full_ids: Vec<usize> = (2..=num_graphs).collect();
        if full_ids.is_empty() {
            continue;
        }
        let q_bar = rng.random_range(1..=3);
        let n_bar = rng.random_range(1..=3);

        // donor selection against a brute-force reference
        let donors = nearest_graphs(recipient, &embeddings, &labels, &full_ids, q_bar).unwrap();
        let same: Vec<usize> = full_ids
            .iter()
            .copied()
            .filter(|&j| labels[j - 1] == labels[recipient - 1])
            .collect();
        let pool = if same.is_empty() {
            full_ids.clone()
        } else {
            same
        };
        let mut expected = pool;
        expected.sort_by(|&a, &b| {
            let da = embedding_distance(embeddings.graph(recipient), embeddings.graph(a));
            let db = embedding_distance(embeddings.graph(recipient), embeddings.graph(b));
            da.partial_cmp(&db).unwrap().then(a.cmp(&b))
        });
        expected.truncate(q_bar.min(expected.len()));
        if donors != expected {
            return Outcome::Fail(format!(
                "trial {trial}: donors {donors:?} != brute force {expected:?}"
            ));
        }

        let plan =
            build_neighbor_plan(recipient, &embeddings, &labels, &full_ids, q_bar, n_bar).unwrap();
        let truth: Vec<DenseMatrix> = sizes
            .iter()
            .map(|&n| {
                let mut m = DenseMatrix::zeros(n, 4);
                for r in 0..n {
                    m.set(r, rng.random_range(0..4), 1.0);
                }
                m
            })
            .collect();
        for (d, &j) in plan.donors.iter().enumerate() {
            // node matching against brute force
            let z_i = embeddings.nodes(recipient);
            let z_j = embeddings.nodes(j);
            for n in 0..z_i.rows() {
                let got = nearest_nodes(n, z_i, z_j, n_bar);
                let mut order: Vec<usize> = (0..z_j.rows()).collect();
                order.sort_by(|&a, &b| {
                    let da: f64 = (0..dim)
                        .map(|c| (z_i.get(n, c) - z_j.get(a, c)).powi(2))
                        .sum();
                    let db: f64 = (0..dim)
                        .map(|c| (z_i.get(n, c) - z_j.get(b, c)).powi(2))
                        .sum();
                    da.partial_cmp(&db).unwrap().then(a.cmp(&b))
                });
                order.truncate(n_bar.min(order.len()));
                order.sort_unstable();
                if got != order {
                    return Outcome::Fail(format!(
                        "trial {trial}: node sets {got:?} != brute force {order:?}"
                    ));
                }
            }
            // transfer matrix rows sum to exactly 1
            let c = transfer_matrix(&plan.node_sets[d], z_j.rows()).unwrap();
            for r in 0..c.rows() {
                let sum: f64 = c.row(r).iter().sum();
                if sum != 1.0 {
                    return Outcome::Fail(format!("trial {trial}: C row sum {sum} != 1"));
                }
            }
        }
        // one-hot donors give row-stochastic estimates with entries in [0,1]
        let donor_features: Vec<&DenseMatrix> =
            plan.donors.iter().map(|&j| &truth[j - 1]).collect();
        let est = lse_nn_estimate(&plan, &donor_features).unwrap();
        for r in 0..est.rows() {
            let sum: f64 = est.row(r).iter().sum();
            if (sum - 1.0).abs() > 1e-12 || est.row(r).iter().any(|&v| !(0.0..=1.0).contains(&v)) {
                return Outcome::Fail(format!("trial {trial}: estimate row {r} sum {sum}"));
            }
        }
    }
    Outcome::Pass("40 randomized instances match brute force; all row sums exact".into())
}

fn criterion_7() -> Outcome {
    let synth = PreparedDataset::prepare(generate_dataset("SYNTH", 40, 0).unwrap()).unwrap();
    let config = ExperimentConfig {
        num_realizations: 3,
        q_bar_list: vec![1],
        methods: vec!["true-features".into()],
        gae: GaeConfig {
            epochs: 60,
            ..GaeConfig::default()
        },
        gin: GinConfig {
            hidden_dim: 16,
            epochs: 30,
            ..GinConfig::default()
        },
        ..ExperimentConfig::default()
    };
    let table = run_classification_experiment(&synth, &config).unwrap();
    let true_acc = table.row("true-features").unwrap().mean;
    if true_acc < 70.0 {
        return Outcome::Fail(format!(
            "synthetic true-features accuracy {true_acc:.1}% < 70%"
        ));
    }

    let mut verified = Vec::new();
    for (name, floor) in [("MUTAG", 70.0), ("AIDS", 90.0)] {
        let Some(ds) = real_dataset(name) else {
            continue;
        };
        let prepared = PreparedDataset::prepare(ds).unwrap();
        let config = ExperimentConfig {
            q_bar_list: vec![1],
            methods: vec!["true-features".into(), "degree".into(), "lse-nn".into()],
            ..ExperimentConfig::default()
        };
        let table = run_classification_experiment(&prepared, &config).unwrap();
        let true_acc = table.row("true-features").unwrap().mean;
        if true_acc < floor {
            return Outcome::Fail(format!("{name} true-features {true_acc:.1}% < {floor}%"));
        }
        if name == "AIDS" {
            let nn = table.row("lse-nn-q1").unwrap().mean;
            let degree = table.row("degree").unwrap().mean;
            if nn - degree < 2.0 {
                return Outcome::Fail(format!(
                    "AIDS LSE-NN {nn:.1}% does not beat degree {degree:.1}% by 2 points"
                ));
            }
        }
        verified.push(format!("{name} {true_acc:.1}%"));
    }
    if verified.is_empty() {
        Outcome::Skip(format!(
            "benchmark accuracy unavailable; synthetic true-features {true_acc:.1}% >= 70%"
        ))
    } else {
        Outcome::Pass(format!("true-feature accuracy {}", verified.join(", ")))
    }
}

fn criterion_8() -> Outcome {
    // parser fidelity on a written-and-reparsed synthetic dataset
    let synth = generate_dataset("SYNTH", 25, 4).unwrap();
    let dir = tempfile::tempdir().unwrap();
    graphfill::graph::write_tudataset(&synth, dir.path()).unwrap();
    let reparsed = parse_tudataset(dir.path(), "SYNTH").unwrap();
    if reparsed != synth {
        return Outcome::Fail("synthetic dataset did not survive a write/parse round trip".into());
    }

    let mut verified: Vec<String> = Vec::new();
    if let Some(mutag) = real_dataset("MUTAG") {
        if mutag.len() != 188 || mutag.node_label_alphabet != 7 || mutag.num_classes != 2 {
            return Outcome::Fail(format!(
                "MUTAG parsed to {} graphs, F={}, {} classes",
                mutag.len(),
                mutag.node_label_alphabet,
                mutag.num_classes
            ));
        }
        verified.push("MUTAG 188 graphs, F=7, 2 classes".into());
    }
    if let Some(aids) = real_dataset("AIDS") {
        if aids.node_label_alphabet != 38 {
            return Outcome::Fail(format!("AIDS F={}", aids.node_label_alphabet));
        }
        verified.push("AIDS F=38".into());
    }
    if verified.is_empty() {
        Outcome::Skip("benchmark files unavailable; synthetic round trip exact".into())
    } else {
        Outcome::Pass(verified.join("; "))
    }
}

fn criterion_9() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_graphfill");
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("data");
    let conf = dir.path().join("exp.conf");
    std::fs::write(
        &conf,
        format!(
            "dataset = SYNTH\ndata_dir = {}\nrealizations = 2\nseed = 11\nqbar = 1\ngae_epochs = 40\n",
            data.display()
        ),
    )
    .unwrap();
    let run = |out: &str| -> Vec<u8> {
        let out_dir = dir.path().join(out);
        let status = Command::new(bin)
            .args(["--config"])
            .arg(&conf)
            .args(["--out"])
            .arg(&out_dir)
            .args(["experiment", "recovery"])
            .status()
            .unwrap();
        assert!(status.success(), "experiment run failed");
        std::fs::read(out_dir.join("results.csv")).unwrap()
    };
    let status = Command::new(bin)
        .args(["--config"])
        .arg(&conf)
        .args(["synth", "--graphs", "24"])
        .status()
        .unwrap();
    if !status.success() {
        return Outcome::Fail("synth generation via the binary failed".into());
    }
    let first = run("out1");
    let second = run("out2");
    if first != second {
        return Outcome::Fail("two same-seed runs produced different results.csv bytes".into());
    }
    Outcome::Pass(format!(
        "two full `experiment recovery` runs byte-identical ({} bytes)",
        first.len()
    ))
}

#[test]
fn acceptance() {
    type Criterion = (usize, &'static str, fn() -> Outcome);
    let criteria: Vec<Criterion> = vec![
        (1, "analytic recovery anchors (zeros, ones)", criterion_1),
        (2, "random baseline near sqrt(F/3)", criterion_2),
        (3, "learned-method ordering", criterion_3),
        (4, "gradient correctness vs finite differences", criterion_4),
        (5, "permutation equivariance and invariance", criterion_5),
        (6, "transfer-matrix and matching properties", criterion_6),
        (7, "downstream classification sanity", criterion_7),
        (8, "parser fidelity", criterion_8),
        (9, "end-to-end determinism", criterion_9),
    ];
    let mut failures = Vec::new();
    for (num, name, f) in criteria {
        match f() {
            Outcome::Pass(detail) => println!("criterion {num} ({name}): PASS — {detail}"),
            Outcome::Skip(detail) => println!("criterion {num} ({name}): SKIP — {detail}"),
            Outcome::Fail(detail) => {
                println!("criterion {num} ({name}): FAIL — {detail}");
                failures.push(num);
            }
        }
    }
    assert!(failures.is_empty(), "criteria failed: {failures:?}");
}
