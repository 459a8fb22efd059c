//! Flat `key = value` experiment configuration with `#` comments and
//! comma-separated lists. Unspecified keys take the documented
//! defaults; unknown keys are rejected.

use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::gae::GaeConfig;
use crate::gin::GinConfig;
use crate::graph::SplitRatios;
use crate::structural::NUM_STRUCTURAL_FEATURES;

/// Which recovery methods an experiment runs. The `lse-ng` and
/// `lse-nn` entries expand over the configured Q̄ list.
pub const RECOVERY_METHODS: &[&str] = &["zeros", "ones", "random", "degree", "lse-ng", "lse-nn"];
pub const CLASSIFICATION_EXTRA_METHODS: &[&str] = &["true-features", "not-using-tmiss"];

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub dataset: String,
    pub data_dir: PathBuf,
    pub out_dir: PathBuf,
    pub ratios: SplitRatios,
    pub num_realizations: usize,
    pub master_seed: u64,
    pub q_bar_list: Vec<usize>,
    pub n_bar: usize,
    pub gae: GaeConfig,
    pub gin: GinConfig,
    /// Method name filter; empty means every applicable method.
    pub methods: Vec<String>,
    pub emit_plot: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            dataset: "MUTAG".into(),
            data_dir: PathBuf::from("data"),
            out_dir: PathBuf::from("out"),
            ratios: SplitRatios::DEFAULT,
            num_realizations: 15,
            master_seed: 0,
            q_bar_list: vec![1, 3],
            n_bar: 3,
            gae: GaeConfig::default(),
            gin: GinConfig::default(),
            methods: Vec::new(),
            emit_plot: false,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        self.ratios.validate()?;
        if self.num_realizations == 0 {
            return Err(Error::InvalidValue {
                key: "realizations".into(),
                reason: "must be at least 1".into(),
            });
        }
        if self.q_bar_list.is_empty() || self.q_bar_list.contains(&0) {
            return Err(Error::InvalidValue {
                key: "qbar".into(),
                reason: "entries must be >= 1".into(),
            });
        }
        if self.n_bar == 0 {
            return Err(Error::InvalidValue {
                key: "nbar".into(),
                reason: "must be >= 1".into(),
            });
        }
        self.gae.validate()?;
        Ok(())
    }

    /// Seeds of the individual realizations, recorded in the output.
    pub fn realization_seeds(&self) -> Vec<u64> {
        (0..self.num_realizations as u64)
            .map(|k| self.master_seed + k)
            .collect()
    }

    pub fn runs_method(&self, method: &str) -> bool {
        self.methods.is_empty() || self.methods.iter().any(|m| m == method)
    }
}

fn parse_key<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value.trim().parse().map_err(|_| Error::InvalidValue {
        key: key.into(),
        reason: format!("cannot parse `{value}`"),
    })
}

fn parse_list(key: &str, value: &str) -> Result<Vec<usize>> {
    value
        .split(',')
        .map(|t| parse_key::<usize>(key, t))
        .collect()
}

/// Loads a config file, applying defaults for unspecified keys.
pub fn load_config(path: &Path) -> Result<ExperimentConfig> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::UnreadableFile {
        path: path.to_path_buf(),
        source,
    })?;
    parse_config(&text)
}

pub fn parse_config(text: &str) -> Result<ExperimentConfig> {
    let mut config = ExperimentConfig::default();
    for raw in text.lines() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Error::InvalidValue {
                key: line.into(),
                reason: "expected `key = value`".into(),
            });
        };
        let key = key.trim();
        let value = value.trim();
        match key {
            "dataset" => config.dataset = value.to_string(),
            "data_dir" => config.data_dir = PathBuf::from(value),
            "out_dir" => config.out_dir = PathBuf::from(value),
            "val_ratio" => config.ratios.val = parse_key(key, value)?,
            "test_ratio" => config.ratios.test = parse_key(key, value)?,
            "full_ratio" => config.ratios.full = parse_key(key, value)?,
            "miss_ratio" => config.ratios.miss = parse_key(key, value)?,
            "realizations" => config.num_realizations = parse_key(key, value)?,
            "seed" => config.master_seed = parse_key(key, value)?,
            "qbar" => config.q_bar_list = parse_list(key, value)?,
            "nbar" => config.n_bar = parse_key(key, value)?,
            "gae_hidden" => {
                let h: usize = parse_key(key, value)?;
                config.gae.encoder_widths[1] = h;
                config.gae.decoder_widths[1] = h;
            }
            "gae_embedding_dim" => {
                let p: usize = parse_key(key, value)?;
                let n = config.gae.encoder_widths.len();
                config.gae.encoder_widths[n - 1] = p;
                config.gae.decoder_widths[0] = p;
            }
            "gae_lr" => config.gae.learning_rate = parse_key(key, value)?,
            "gae_epochs" => config.gae.epochs = parse_key(key, value)?,
            "gin_layers" => config.gin.num_layers = parse_key(key, value)?,
            "gin_hidden" => config.gin.hidden_dim = parse_key(key, value)?,
            "gin_epsilon" => config.gin.epsilon = parse_key(key, value)?,
            "gin_lr" => config.gin.learning_rate = parse_key(key, value)?,
            "gin_epochs" => config.gin.epochs = parse_key(key, value)?,
            "methods" => {
                config.methods = value
                    .split(',')
                    .map(|m| m.trim().to_string())
                    .filter(|m| !m.is_empty())
                    .collect()
            }
            "emit_plot" => {
                config.emit_plot = match value {
                    "true" | "1" | "yes" => true,
                    "false" | "0" | "no" => false,
                    other => {
                        return Err(Error::InvalidValue {
                            key: key.into(),
                            reason: format!("expected a boolean, got `{other}`"),
                        })
                    }
                }
            }
            other => return Err(Error::UnknownKey(other.to_string())),
        }
    }
    debug_assert_eq!(config.gae.encoder_widths[0], NUM_STRUCTURAL_FEATURES);
    config.validate()?;
    Ok(config)
}
