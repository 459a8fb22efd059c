//! graphfill recovers completely missing node feature matrices for
//! graphs in a dataset. It learns structure-preserving node embeddings
//! with a graph autoencoder, transfers known features from the nearest
//! same-label graphs' nearest nodes, and evaluates both the recovery
//! error and the downstream graph-classification utility of the
//! recovered features.
//!
//! See the `examples/` directory for one runnable example per major
//! capability, and the `graphfill` binary for the CLI.

pub mod config;
pub mod error;
pub mod experiment;
pub mod gae;
pub mod gin;
pub mod graph;
pub mod matrix;
pub mod nn;
pub mod recovery;
pub mod structural;
pub mod synth;

pub use config::{load_config, parse_config, ExperimentConfig};
pub use error::{Error, Result};
pub use experiment::{
    run_classification_experiment, run_recovery_experiment, PreparedDataset, ResultsTable,
};
pub use gae::{train_gae, EmbeddingSet, GaeConfig, GaeModel};
pub use gin::{evaluate_accuracy, train_gin, GinConfig, GinModel};
pub use graph::{
    normalized_adjacency, one_hot_features, parse_tudataset, split_dataset, write_tudataset,
    Dataset, Graph, SplitPlan, SplitRatios,
};
pub use matrix::DenseMatrix;
pub use recovery::{
    baseline_features, lse_ng_estimate, lse_nn_estimate, recovery_error, BaselineKind, NeighborPlan,
};
pub use structural::{structural_feature_matrix, zscore_normalize, StructuralFeatureMatrix};
