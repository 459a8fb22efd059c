use std::path::PathBuf;
use thiserror::Error;

/// Crate-wide error type. Every failure carries a stable category string
/// (see [`Error::category`]) so the CLI can report machine-readable
/// one-liners.
#[derive(Debug, Error)]
pub enum Error {
    #[error("missing file: {0}")]
    MissingFile(PathBuf),

    #[error("malformed dataset: {0}")]
    MalformedDataset(String),

    #[error("dataset has no node labels")]
    NoNodeLabels,

    #[error("split produced an empty partition: {0}")]
    EmptyPartition(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("empty input")]
    EmptyInput,

    #[error("node index {index} out of range for graph with {num_nodes} nodes")]
    IndexOutOfRange { index: usize, num_nodes: usize },

    #[error("training diverged: {0}")]
    DivergedTraining(String),

    #[error("no donor graph available for graph {0}")]
    NoDonorAvailable(usize),

    #[error("empty neighbor set for recipient node {0}")]
    EmptyNeighborSet(usize),

    #[error("reference matrix has zero Frobenius norm")]
    ZeroReference,

    #[error("matrix has no rows")]
    EmptyMatrix,

    #[error("point cloud is degenerate (all points identical)")]
    DegenerateCloud,

    #[error("empty test set")]
    EmptyTestSet,

    #[error("unknown config key: {0}")]
    UnknownKey(String),

    #[error("invalid config value for `{key}`: {reason}")]
    InvalidValue { key: String, reason: String },

    #[error("cannot read file {path}: {source}")]
    UnreadableFile {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("i/o failure: {0}")]
    IoFailure(#[from] std::io::Error),

    #[error("bad checkpoint: {0}")]
    BadCheckpoint(String),
}

impl Error {
    /// Stable machine-readable category, used in CLI error output.
    pub fn category(&self) -> &'static str {
        match self {
            Error::MissingFile(_) => "MissingFile",
            Error::MalformedDataset(_) => "MalformedDataset",
            Error::NoNodeLabels => "NoNodeLabels",
            Error::EmptyPartition(_) => "EmptyPartition",
            Error::ShapeMismatch(_) => "ShapeMismatch",
            Error::EmptyInput => "EmptyInput",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::DivergedTraining(_) => "DivergedTraining",
            Error::NoDonorAvailable(_) => "NoDonorAvailable",
            Error::EmptyNeighborSet(_) => "EmptyNeighborSet",
            Error::ZeroReference => "ZeroReference",
            Error::EmptyMatrix => "EmptyMatrix",
            Error::DegenerateCloud => "DegenerateCloud",
            Error::EmptyTestSet => "EmptyTestSet",
            Error::UnknownKey(_) => "UnknownKey",
            Error::InvalidValue { .. } => "InvalidValue",
            Error::UnreadableFile { .. } => "UnreadableFile",
            Error::IoFailure(_) => "IoFailure",
            Error::BadCheckpoint(_) => "BadCheckpoint",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
