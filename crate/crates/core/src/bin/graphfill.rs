//! Thin CLI over the graphfill library. Each subcommand maps onto one
//! library capability; the heavy lifting lives in the crate so the
//! same paths are exercised by the examples and tests.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use graphfill::config::{load_config, ExperimentConfig};
use graphfill::error::Result;
use graphfill::experiment::{
    emit_outputs, estimate_features, recovery_method_names, run_classification_experiment,
    run_recovery_experiment, scatter_svg, PreparedDataset,
};
use graphfill::gae::{train_gae, write_projection_csv, EmbeddingSet, GaeModel};
use graphfill::gin::{evaluate_accuracy, train_gin, Example};
use graphfill::graph::{parse_tudataset, split_dataset, write_tudataset, Dataset};
use graphfill::nn::{load_checkpoint, save_checkpoint};
use graphfill::recovery::{build_neighbor_plan, format_neighbor_plan, recovery_error};
use graphfill::structural::write_features_csv;
use graphfill::synth::generate_dataset;

#[derive(Parser)]
#[command(
    name = "graphfill",
    about = "Recover missing node features for graphs via embedding-based transfer"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalArgs {
    /// Experiment config file (flat `key = value` format).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Dataset name (directory under the data dir).
    #[arg(long, global = true)]
    dataset: Option<String>,
    /// Directory holding TUDataset-format dataset directories.
    #[arg(long, global = true)]
    data_dir: Option<PathBuf>,
    /// Master seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for parallel realizations (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a dataset and print a summary.
    Parse,
    /// Generate a seeded synthetic benchmark dataset on disk.
    Synth {
        /// Number of graphs to generate.
        #[arg(long, default_value_t = 60)]
        graphs: usize,
    },
    /// Compute per-node structural features and dump them as CSV.
    Features,
    /// Train the graph autoencoder; writes a checkpoint and the loss history.
    TrainGae,
    /// Compute node embeddings from a checkpoint (training one if absent).
    Embed,
    /// Estimate missing features for one split realization, per method.
    Recover {
        /// Restrict to one method (e.g. `lse-nn-q3`, `zeros`).
        #[arg(long)]
        method: Option<String>,
        /// Also dump the neighbor plans of the learned estimators.
        #[arg(long)]
        dump_plans: bool,
    },
    /// Train and evaluate the downstream classifier for one realization.
    Classify {
        /// Method supplying the missing features (default `true-features`).
        #[arg(long, default_value = "true-features")]
        method: String,
    },
    /// Run a full multi-realization experiment suite.
    Experiment {
        #[command(subcommand)]
        suite: Suite,
    },
    /// Project node embeddings to 2D and emit CSV (and SVG) scatter data.
    PlotEmbeddings,
}

#[derive(Subcommand)]
enum Suite {
    /// Feature-recovery error per method, mean +- std over realizations.
    Recovery,
    /// Downstream test accuracy per method, mean +- std over realizations.
    Classification,
}

fn effective_config(global: &GlobalArgs) -> Result<ExperimentConfig> {
    let mut config = match &global.config {
        Some(path) => load_config(path)?,
        None => ExperimentConfig::default(),
    };
    if let Some(name) = &global.dataset {
        config.dataset = name.clone();
    }
    if let Some(dir) = &global.data_dir {
        config.data_dir = dir.clone();
    }
    if let Some(seed) = global.seed {
        config.master_seed = seed;
    }
    if let Some(out) = &global.out {
        config.out_dir = out.clone();
    }
    config.validate()?;
    Ok(config)
}

fn load_dataset(config: &ExperimentConfig) -> Result<Dataset> {
    parse_tudataset(&config.data_dir.join(&config.dataset), &config.dataset)
}

fn run(cli: Cli) -> Result<()> {
    let config = effective_config(&cli.global)?;
    if let Some(jobs) = cli.global.jobs {
        // ignore failure: the global pool can only be set once
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    let out_dir = &config.out_dir;

    match cli.command {
        Command::Parse => {
            let ds = load_dataset(&config)?;
            println!(
                "{}: {} graphs, {} nodes, {} classes, node label alphabet {}",
                ds.name,
                ds.len(),
                ds.total_nodes(),
                ds.num_classes,
                ds.node_label_alphabet
            );
        }
        Command::Synth { graphs } => {
            let ds = generate_dataset(&config.dataset, graphs, config.master_seed)?;
            let dir = config.data_dir.join(&ds.name);
            std::fs::create_dir_all(&dir)?;
            write_tudataset(&ds, &dir)?;
            println!("wrote {} graphs to {}", ds.len(), dir.display());
        }
        Command::Features => {
            let ds = load_dataset(&config)?;
            let prepared = PreparedDataset::prepare(ds)?;
            std::fs::create_dir_all(out_dir)?;
            let raw: Vec<_> = prepared
                .dataset
                .graphs
                .iter()
                .map(graphfill::structural::structural_feature_matrix)
                .collect();
            write_features_csv(&raw, &out_dir.join("features_raw.csv"))?;
            write_features_csv(
                &prepared.normalized_features,
                &out_dir.join("features_normalized.csv"),
            )?;
            println!(
                "wrote features for {} nodes to {}",
                prepared.dataset.total_nodes(),
                out_dir.display()
            );
        }
        Command::TrainGae => {
            let ds = load_dataset(&config)?;
            let prepared = PreparedDataset::prepare(ds)?;
            let (model, history) = train_gae(
                &prepared.normalized_features,
                &prepared.dataset,
                &config.gae,
                config.master_seed,
            )?;
            std::fs::create_dir_all(out_dir)?;
            save_checkpoint(&model.params, &out_dir.join("gae.ckpt"))?;
            let lines: Vec<String> = history
                .iter()
                .enumerate()
                .map(|(e, l)| format!("{e},{l}"))
                .collect();
            std::fs::write(
                out_dir.join("gae_loss.csv"),
                format!("epoch,loss\n{}\n", lines.join("\n")),
            )?;
            println!(
                "trained {} epochs, final loss {:.6}, checkpoint at {}",
                history.len(),
                history.last().unwrap(),
                out_dir.join("gae.ckpt").display()
            );
        }
        Command::Embed => {
            let ds = load_dataset(&config)?;
            let prepared = PreparedDataset::prepare(ds)?;
            let embeddings = embeddings_for(&prepared, &config)?;
            std::fs::create_dir_all(out_dir)?;
            embeddings.write_csv(&out_dir.join("embeddings.csv"))?;
            println!("wrote {}", out_dir.join("embeddings.csv").display());
        }
        Command::Recover { method, dump_plans } => {
            let ds = load_dataset(&config)?;
            let prepared = PreparedDataset::prepare(ds)?;
            let seed = config.master_seed;
            let split = split_dataset(&prepared.dataset, config.ratios, seed)?;
            let embeddings = embeddings_for(&prepared, &config)?;
            std::fs::create_dir_all(out_dir)?;

            let methods = match method {
                Some(m) => vec![m],
                None => recovery_method_names(&config),
            };
            let labels: Vec<usize> = prepared.dataset.graphs.iter().map(|g| g.label).collect();
            for method in &methods {
                let mut errors = Vec::with_capacity(split.miss_ids.len());
                let mut csv = String::from("graph_id,node_id,");
                let headers: Vec<String> = (1..=prepared.dataset.node_label_alphabet)
                    .map(|i| format!("x{i}"))
                    .collect();
                csv.push_str(&headers.join(","));
                csv.push('\n');
                for &i in &split.miss_ids {
                    let estimate = estimate_features(
                        method,
                        i,
                        &prepared.dataset,
                        &prepared.true_features,
                        &embeddings,
                        &split,
                        config.n_bar,
                        seed,
                    )?;
                    errors.push(recovery_error(&prepared.true_features[i - 1], &estimate)?);
                    for r in 0..estimate.rows() {
                        let row: Vec<String> =
                            estimate.row(r).iter().map(|v| format!("{v}")).collect();
                        csv.push_str(&format!("{i},{r},{}\n", row.join(",")));
                    }
                }
                std::fs::write(out_dir.join(format!("recovered_{method}.csv")), csv)?;
                let mean = errors.iter().sum::<f64>() / errors.len() as f64;
                println!(
                    "{method}: mean recovery error {mean:.6} over {} graphs",
                    errors.len()
                );

                if dump_plans && method.starts_with("lse-") {
                    if let Some(q) = method.rsplit_once("-q").and_then(|(_, q)| q.parse().ok()) {
                        let mut text = String::new();
                        for &i in &split.miss_ids {
                            let plan = build_neighbor_plan(
                                i,
                                &embeddings,
                                &labels,
                                &split.full_ids,
                                q,
                                config.n_bar,
                            )?;
                            text.push_str(&format_neighbor_plan(&plan, &embeddings));
                        }
                        std::fs::write(out_dir.join(format!("plans_{method}.txt")), text)?;
                    }
                }
            }
        }
        Command::Classify { method } => {
            let ds = load_dataset(&config)?;
            let prepared = PreparedDataset::prepare(ds)?;
            let ds = &prepared.dataset;
            let seed = config.master_seed;
            let split = split_dataset(ds, config.ratios, seed)?;

            let mut features = prepared.true_features.clone();
            let mut train_ids = split.full_ids.clone();
            match method.as_str() {
                "true-features" => train_ids.extend(&split.miss_ids),
                "not-using-tmiss" => {}
                other => {
                    let embeddings = embeddings_for(&prepared, &config)?;
                    for &i in &split.miss_ids {
                        features[i - 1] = estimate_features(
                            other,
                            i,
                            ds,
                            &prepared.true_features,
                            &embeddings,
                            &split,
                            config.n_bar,
                            seed,
                        )?;
                    }
                    train_ids.extend(&split.miss_ids);
                }
            }
            train_ids.sort_unstable();
            let build = |ids: &[usize]| -> Vec<Example> {
                ids.iter()
                    .map(|&i| (ds.graph(i), &features[i - 1], ds.graph(i).label))
                    .collect()
            };
            let train_set = build(&train_ids);
            let val_set = build(&split.val_ids);
            let test_set = build(&split.test_ids);
            let (model, report) = train_gin(
                &train_set,
                &val_set,
                &config.gin,
                ds.node_label_alphabet,
                ds.num_classes,
                seed,
            )?;
            let test_acc = evaluate_accuracy(&model, &test_set)?;

            std::fs::create_dir_all(out_dir)?;
            let record_path = out_dir.join("classification_runs.csv");
            let mut record = if record_path.exists() {
                std::fs::read_to_string(&record_path)?
            } else {
                "method,dataset,seed,best_epoch,val_accuracy,test_accuracy\n".to_string()
            };
            record.push_str(&format!(
                "{method},{},{seed},{},{:.6},{:.6}\n",
                ds.name,
                report.best_epoch,
                report.val_accuracy * 100.0,
                test_acc * 100.0,
            ));
            std::fs::write(&record_path, record)?;
            println!(
                "{method}: test accuracy {:.2}% (best epoch {}, val {:.2}%)",
                test_acc * 100.0,
                report.best_epoch,
                report.val_accuracy * 100.0
            );
        }
        Command::Experiment { suite } => {
            let ds = load_dataset(&config)?;
            let prepared = PreparedDataset::prepare(ds)?;
            let table = match suite {
                Suite::Recovery => run_recovery_experiment(&prepared, &config)?,
                Suite::Classification => run_classification_experiment(&prepared, &config)?,
            };
            let embeddings = embeddings_for(&prepared, &config)?;
            emit_outputs(
                &table,
                &embeddings,
                &prepared.dataset,
                out_dir,
                config.emit_plot,
            )?;
            print!("{}", table.to_csv());
            println!("wrote {}", out_dir.join("results.csv").display());
        }
        Command::PlotEmbeddings => {
            let ds = load_dataset(&config)?;
            let prepared = PreparedDataset::prepare(ds)?;
            let embeddings = embeddings_for(&prepared, &config)?;
            std::fs::create_dir_all(out_dir)?;
            let csv_path = out_dir.join("embeddings_2d.csv");
            write_projection_csv(&embeddings, &prepared.dataset, &csv_path)?;
            let svg = scatter_svg(&csv_path)?;
            std::fs::write(out_dir.join("embeddings_2d.svg"), svg)?;
            println!(
                "wrote {} and {}",
                csv_path.display(),
                out_dir.join("embeddings_2d.svg").display()
            );
        }
    }
    Ok(())
}

/// Embeddings from an existing checkpoint in the output directory, or
/// from a fresh seeded training run when none is present.
fn embeddings_for(prepared: &PreparedDataset, config: &ExperimentConfig) -> Result<EmbeddingSet> {
    let ckpt = config.out_dir.join("gae.ckpt");
    let model = if ckpt.exists() {
        GaeModel {
            config: config.gae.clone(),
            params: load_checkpoint(&ckpt)?,
        }
    } else {
        train_gae(
            &prepared.normalized_features,
            &prepared.dataset,
            &config.gae,
            config.master_seed,
        )?
        .0
    };
    EmbeddingSet::compute(&model, &prepared.dataset, &prepared.normalized_features)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error[{}]: {e}", e.category());
            ExitCode::FAILURE
        }
    }
}
