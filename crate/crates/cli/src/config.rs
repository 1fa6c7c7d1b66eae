//! Run configuration: one JSON document per run, plus flag overrides.
//!
//! Every command takes `--config <path>`; the file is a single JSON object
//! whose sections are all optional and default to the values documented on
//! each field. Command-line flags override the corresponding config values.
//! Unknown keys are rejected so typos fail loudly instead of silently
//! running with defaults.

use std::fs;
use std::path::{Path, PathBuf};

use ensemblekit::boosting::BoostMode;
use ensemblekit::features::FeatureExtractor;
use ensemblekit::learners::LearnerSpec;
use ensemblekit::stacking::MetaFeaturePolicy;
use serde::Deserialize;
use sha2::{Digest, Sha256};

use crate::error::CliError;

/// Default logreg hyperparameters: conservative enough to stay stable on
/// feature scales up to roughly ‖x‖² ≈ 200 while converging in a few
/// hundred full-batch steps on small datasets.
const DEFAULT_LEARNING_RATE: f64 = 0.01;
const DEFAULT_EPOCHS: usize = 500;
const DEFAULT_L2: f64 = 1e-3;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default)]
    pub out: Option<PathBuf>,
    /// Ensemble method for `train` and ignored elsewhere:
    /// "bagging" | "boosting" | "stacking".
    #[serde(default)]
    pub method: Option<String>,
    #[serde(default)]
    pub data: DataConfig,
    #[serde(default)]
    pub split: SplitConfig,
    #[serde(default)]
    pub bagging: BaggingConfig,
    #[serde(default)]
    pub boosting: BoostingConfig,
    #[serde(default)]
    pub stacking: StackingConfig,
}

fn default_seed() -> u64 {
    42
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DataConfig {
    /// Input for `split`: a feature CSV or an image directory root.
    #[serde(default)]
    pub source: Option<PathBuf>,
    /// "csv" | "image_dir".
    #[serde(default = "default_format")]
    pub format: String,
    /// Feature extractor for image input: "histogram24" | "downsample192".
    #[serde(default = "default_extractor")]
    pub extractor: String,
    /// Labeled training CSV for `train` and `compare`.
    #[serde(default)]
    pub train: Option<PathBuf>,
    /// Labeled evaluation CSV for `evaluate` and `compare`.
    #[serde(default)]
    pub test: Option<PathBuf>,
    /// Unlabeled input CSV for `predict`.
    #[serde(default)]
    pub input: Option<PathBuf>,
    /// Model archive path for `evaluate` and `predict`.
    #[serde(default)]
    pub archive: Option<PathBuf>,
}

fn default_format() -> String {
    "csv".into()
}

fn default_extractor() -> String {
    "histogram24".into()
}

impl Default for DataConfig {
    fn default() -> Self {
        Self {
            source: None,
            format: default_format(),
            extractor: default_extractor(),
            train: None,
            test: None,
            input: None,
            archive: None,
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplitConfig {
    #[serde(default = "default_train_fraction")]
    pub train_fraction: f64,
    #[serde(default = "default_val_fraction")]
    pub val_fraction: f64,
    #[serde(default = "default_test_fraction")]
    pub test_fraction: f64,
    /// Rebalance every class to exactly this many samples before splitting.
    #[serde(default)]
    pub balance: Option<usize>,
    /// Append one augmented copy of every training image (image input only).
    #[serde(default)]
    pub augment: bool,
}

fn default_train_fraction() -> f64 {
    0.70
}

fn default_val_fraction() -> f64 {
    0.15
}

fn default_test_fraction() -> f64 {
    0.15
}

impl Default for SplitConfig {
    fn default() -> Self {
        Self {
            train_fraction: default_train_fraction(),
            val_fraction: default_val_fraction(),
            test_fraction: default_test_fraction(),
            balance: None,
            augment: false,
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaggingConfig {
    #[serde(default = "default_members")]
    pub members: usize,
    #[serde(default = "LearnerConfig::logreg")]
    pub learner: LearnerConfig,
}

fn default_members() -> usize {
    6
}

impl Default for BaggingConfig {
    fn default() -> Self {
        Self { members: default_members(), learner: LearnerConfig::logreg() }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoostingConfig {
    #[serde(default = "default_rounds")]
    pub rounds: usize,
    /// "samme" (any class count) | "binary" (exactly two classes).
    #[serde(default = "default_mode")]
    pub mode: String,
    #[serde(default = "LearnerConfig::stump")]
    pub learner: LearnerConfig,
}

fn default_rounds() -> usize {
    10
}

fn default_mode() -> String {
    "samme".into()
}

impl Default for BoostingConfig {
    fn default() -> Self {
        Self { rounds: default_rounds(), mode: default_mode(), learner: LearnerConfig::stump() }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StackingConfig {
    #[serde(default = "default_folds")]
    pub folds: usize,
    #[serde(default = "default_bases")]
    pub bases: Vec<LearnerConfig>,
    /// Meta-model; must be a logreg learner.
    #[serde(default = "LearnerConfig::logreg")]
    pub meta: LearnerConfig,
    /// "out_of_fold" (honest meta-features) | "in_sample" (leaky baseline).
    #[serde(default = "default_meta_leakage_mode")]
    pub meta_leakage_mode: String,
}

fn default_folds() -> usize {
    5
}

fn default_bases() -> Vec<LearnerConfig> {
    vec![LearnerConfig::logreg(), LearnerConfig::stump()]
}

fn default_meta_leakage_mode() -> String {
    "out_of_fold".into()
}

impl Default for StackingConfig {
    fn default() -> Self {
        Self {
            folds: default_folds(),
            bases: default_bases(),
            meta: LearnerConfig::logreg(),
            meta_leakage_mode: default_meta_leakage_mode(),
        }
    }
}

/// One weak learner: "logreg" with optional hyperparameters, or "stump"
/// with none.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LearnerConfig {
    pub kind: String,
    #[serde(default)]
    pub learning_rate: Option<f64>,
    #[serde(default)]
    pub epochs: Option<usize>,
    #[serde(default)]
    pub l2: Option<f64>,
}

impl LearnerConfig {
    pub fn logreg() -> Self {
        Self { kind: "logreg".into(), learning_rate: None, epochs: None, l2: None }
    }

    pub fn stump() -> Self {
        Self { kind: "stump".into(), learning_rate: None, epochs: None, l2: None }
    }

    pub fn to_spec(&self) -> Result<LearnerSpec, CliError> {
        match self.kind.as_str() {
            "logreg" => Ok(LearnerSpec::logreg(
                self.learning_rate.unwrap_or(DEFAULT_LEARNING_RATE),
                self.epochs.unwrap_or(DEFAULT_EPOCHS),
                self.l2.unwrap_or(DEFAULT_L2),
            )?),
            "stump" => {
                if self.learning_rate.is_some() || self.epochs.is_some() || self.l2.is_some() {
                    return Err(CliError::Config(
                        "stump learner takes no hyperparameters".into(),
                    ));
                }
                Ok(LearnerSpec::stump())
            }
            other => Err(CliError::Config(format!(
                "unknown learner kind '{other}' (expected \"logreg\" or \"stump\")"
            ))),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Method {
    Bagging,
    Boosting,
    Stacking,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Bagging, Method::Boosting, Method::Stacking];

    pub fn parse(s: &str) -> Result<Self, CliError> {
        match s {
            "bagging" => Ok(Method::Bagging),
            "boosting" => Ok(Method::Boosting),
            "stacking" => Ok(Method::Stacking),
            other => Err(CliError::Config(format!(
                "unknown method '{other}' (expected \"bagging\", \"boosting\" or \"stacking\")"
            ))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Method::Bagging => "bagging",
            Method::Boosting => "boosting",
            Method::Stacking => "stacking",
        }
    }
}

pub fn parse_boost_mode(s: &str) -> Result<BoostMode, CliError> {
    match s {
        "binary" => Ok(BoostMode::Binary),
        "samme" => Ok(BoostMode::Samme),
        other => Err(CliError::Config(format!(
            "unknown boosting mode '{other}' (expected \"binary\" or \"samme\")"
        ))),
    }
}

pub fn parse_meta_policy(s: &str) -> Result<MetaFeaturePolicy, CliError> {
    match s {
        "out_of_fold" => Ok(MetaFeaturePolicy::OutOfFold),
        "in_sample" => Ok(MetaFeaturePolicy::InSample),
        other => Err(CliError::Config(format!(
            "unknown meta_leakage_mode '{other}' (expected \"out_of_fold\" or \"in_sample\")"
        ))),
    }
}

pub fn parse_extractor(s: &str) -> Result<FeatureExtractor, CliError> {
    match s {
        "histogram24" => Ok(FeatureExtractor::Histogram24),
        "downsample192" => Ok(FeatureExtractor::Downsample192),
        other => Err(CliError::Config(format!(
            "unknown extractor '{other}' (expected \"histogram24\" or \"downsample192\")"
        ))),
    }
}

/// Flag overrides shared by every subcommand; a set flag wins over the
/// corresponding config value.
#[derive(Clone, Debug, Default, clap::Args)]
pub struct Overrides {
    /// Override the config seed
    #[arg(long)]
    pub seed: Option<u64>,
    /// Override the output directory
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Override the ensemble method (bagging|boosting|stacking)
    #[arg(long)]
    pub method: Option<String>,
    /// Override data.source (split input path)
    #[arg(long)]
    pub data: Option<PathBuf>,
    /// Override data.train (training CSV)
    #[arg(long)]
    pub train: Option<PathBuf>,
    /// Override data.test (evaluation CSV)
    #[arg(long)]
    pub test: Option<PathBuf>,
    /// Override data.archive (model archive path)
    #[arg(long)]
    pub archive: Option<PathBuf>,
    /// Override data.input (prediction input CSV)
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Override bagging.members
    #[arg(long)]
    pub members: Option<usize>,
    /// Override boosting.rounds
    #[arg(long)]
    pub rounds: Option<usize>,
    /// Override stacking.folds
    #[arg(long)]
    pub folds: Option<usize>,
    /// Override stacking.meta_leakage_mode (out_of_fold|in_sample)
    #[arg(long)]
    pub meta_leakage_mode: Option<String>,
}

/// A parsed config plus the SHA-256 of the raw config document. The hash
/// covers the file bytes, not the effective values, so flag overrides that
/// redirect paths (notably --out) don't change a model's recorded
/// provenance; the effective seed is recorded separately in the archive.
pub struct LoadedConfig {
    pub cfg: RunConfig,
    pub config_hash: String,
}

pub fn load(path: &Path, overrides: &Overrides) -> Result<LoadedConfig, CliError> {
    let bytes = fs::read(path)
        .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
    let mut cfg: RunConfig = serde_json::from_slice(&bytes)
        .map_err(|e| CliError::Config(format!("config {}: {e}", path.display())))?;
    let config_hash = sha256_hex(&bytes);
    apply_overrides(&mut cfg, overrides);
    Ok(LoadedConfig { cfg, config_hash })
}

pub fn apply_overrides(cfg: &mut RunConfig, ov: &Overrides) {
    if let Some(v) = ov.seed {
        cfg.seed = v;
    }
    if let Some(v) = &ov.out {
        cfg.out = Some(v.clone());
    }
    if let Some(v) = &ov.method {
        cfg.method = Some(v.clone());
    }
    if let Some(v) = &ov.data {
        cfg.data.source = Some(v.clone());
    }
    if let Some(v) = &ov.train {
        cfg.data.train = Some(v.clone());
    }
    if let Some(v) = &ov.test {
        cfg.data.test = Some(v.clone());
    }
    if let Some(v) = &ov.archive {
        cfg.data.archive = Some(v.clone());
    }
    if let Some(v) = &ov.input {
        cfg.data.input = Some(v.clone());
    }
    if let Some(v) = ov.members {
        cfg.bagging.members = v;
    }
    if let Some(v) = ov.rounds {
        cfg.boosting.rounds = v;
    }
    if let Some(v) = ov.folds {
        cfg.stacking.folds = v;
    }
    if let Some(v) = &ov.meta_leakage_mode {
        cfg.stacking.meta_leakage_mode = v.clone();
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    digest.iter().map(|b| format!("{b:02x}")).collect()
}
