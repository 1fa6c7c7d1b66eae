//! Versioned on-disk model archives.
//!
//! An archive is one JSON document: a `format_version` gate, the method
//! tag, the class registry, the feature dimension, provenance (config
//! hash, seed, artifact version), and the model parameters. Every real
//! number is stored as its shortest round-trip decimal string, so
//! save → load → save is byte-identical and the files are stable golden
//! artifacts across platforms.

use std::fs;
use std::path::Path;
use std::sync::Arc;

use ensemblekit::bagging::BaggingModel;
use ensemblekit::boosting::{BoostMode, BoostModel, RoundRecord};
use ensemblekit::dataset::{ClassLabel, ClassRegistry, Dataset};
use ensemblekit::learners::{LogRegModel, Model, StumpModel};
use ensemblekit::stacking::StackingModel;
use serde::{Deserialize, Serialize};

use crate::config::Method;
use crate::error::CliError;

pub const FORMAT_VERSION: u64 = 1;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelArchive {
    pub format_version: u64,
    pub method: String,
    pub classes: Vec<String>,
    pub feature_dim: usize,
    pub provenance: Provenance,
    pub model: ModelParams,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Provenance {
    /// SHA-256 of the run-config document the model was trained under.
    pub config_hash: String,
    /// Effective training seed (after flag overrides).
    pub seed: u64,
    pub artifact_version: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModelParams {
    Bagging {
        members: Vec<LearnerParams>,
        seeds: Vec<u64>,
    },
    Boosting {
        mode: String,
        rounds: Vec<BoostRound>,
        history: Vec<HistoryRow>,
    },
    Stacking {
        folds: usize,
        bases: Vec<LearnerParams>,
        meta: MetaParams,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LearnerParams {
    Logreg {
        /// K rows of `feature_dim` decimal strings, class-major.
        weights: Vec<Vec<String>>,
        biases: Vec<String>,
    },
    Stump {
        feature_index: usize,
        threshold: String,
        left_label: usize,
        right_label: usize,
    },
}

/// Stacking meta-model (always logreg, over `bases × classes` inputs).
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetaParams {
    pub weights: Vec<Vec<String>>,
    pub biases: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoostRound {
    pub model: LearnerParams,
    pub alpha: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HistoryRow {
    pub round: usize,
    pub eps: String,
    pub alpha: String,
}

/// A loaded, ready-to-predict ensemble of any method.
#[derive(Clone, Debug)]
pub enum EnsembleModel {
    Bagging(BaggingModel),
    Boosting(BoostModel),
    Stacking(StackingModel),
}

impl EnsembleModel {
    pub fn method(&self) -> Method {
        match self {
            EnsembleModel::Bagging(_) => Method::Bagging,
            EnsembleModel::Boosting(_) => Method::Boosting,
            EnsembleModel::Stacking(_) => Method::Stacking,
        }
    }

    pub fn registry(&self) -> &Arc<ClassRegistry> {
        match self {
            EnsembleModel::Bagging(m) => m.registry(),
            EnsembleModel::Boosting(m) => m.registry(),
            EnsembleModel::Stacking(m) => m.registry(),
        }
    }

    pub fn feature_dim(&self) -> usize {
        match self {
            EnsembleModel::Bagging(m) => m.feature_dim(),
            EnsembleModel::Boosting(m) => m.feature_dim(),
            EnsembleModel::Stacking(m) => m.feature_dim(),
        }
    }

    pub fn predict(&self, x: &[f64]) -> ensemblekit::Result<ClassLabel> {
        match self {
            EnsembleModel::Bagging(m) => m.predict(x),
            EnsembleModel::Boosting(m) => m.predict(x),
            EnsembleModel::Stacking(m) => m.predict(x),
        }
    }

    pub fn predict_dataset(&self, ds: &Dataset) -> ensemblekit::Result<Vec<ClassLabel>> {
        match self {
            EnsembleModel::Bagging(m) => m.predict_dataset(ds),
            EnsembleModel::Boosting(m) => m.predict_dataset(ds),
            EnsembleModel::Stacking(m) => m.predict_dataset(ds),
        }
    }
}

/// Shortest round-trip decimal form; `parse::<f64>` recovers the exact bits.
fn f2s(v: f64) -> String {
    format!("{v}")
}

fn parse_archive_f64(s: &str, what: &str) -> Result<f64, CliError> {
    let v: f64 = s
        .parse()
        .map_err(|_| CliError::Data(format!("archive: invalid number '{s}' in {what}")))?;
    if !v.is_finite() {
        return Err(CliError::Data(format!("archive: non-finite value '{s}' in {what}")));
    }
    Ok(v)
}

fn bad_archive(e: ensemblekit::Error) -> CliError {
    CliError::Data(format!("archive is internally inconsistent: {e}"))
}

fn logreg_to_params(m: &LogRegModel) -> (Vec<Vec<String>>, Vec<String>) {
    let weights = m
        .weights()
        .chunks(m.feature_dim())
        .map(|row| row.iter().map(|v| f2s(*v)).collect())
        .collect();
    let biases = m.biases().iter().map(|v| f2s(*v)).collect();
    (weights, biases)
}

fn logreg_from_params(
    weights: &[Vec<String>],
    biases: &[String],
    dim: usize,
    registry: &Arc<ClassRegistry>,
) -> Result<LogRegModel, CliError> {
    let k = registry.len();
    if weights.len() != k {
        return Err(CliError::Data(format!(
            "archive: logreg weight matrix has {} rows, expected {k}",
            weights.len()
        )));
    }
    let mut flat = Vec::with_capacity(k * dim);
    for (c, row) in weights.iter().enumerate() {
        if row.len() != dim {
            return Err(CliError::Data(format!(
                "archive: logreg weight row {c} has {} entries, expected {dim}",
                row.len()
            )));
        }
        for s in row {
            flat.push(parse_archive_f64(s, "logreg weights")?);
        }
    }
    let biases = biases
        .iter()
        .map(|s| parse_archive_f64(s, "logreg biases"))
        .collect::<Result<Vec<_>, _>>()?;
    LogRegModel::from_parts(flat, biases, dim, registry.clone()).map_err(bad_archive)
}

fn learner_to_params(m: &Model) -> LearnerParams {
    match m {
        Model::LogReg(lr) => {
            let (weights, biases) = logreg_to_params(lr);
            LearnerParams::Logreg { weights, biases }
        }
        Model::Stump(s) => LearnerParams::Stump {
            feature_index: s.feature_index(),
            threshold: f2s(s.threshold()),
            left_label: s.left_label().index(),
            right_label: s.right_label().index(),
        },
    }
}

fn params_to_learner(
    p: &LearnerParams,
    dim: usize,
    registry: &Arc<ClassRegistry>,
) -> Result<Model, CliError> {
    match p {
        LearnerParams::Logreg { weights, biases } => {
            Ok(Model::LogReg(logreg_from_params(weights, biases, dim, registry)?))
        }
        LearnerParams::Stump { feature_index, threshold, left_label, right_label } => {
            let t = parse_archive_f64(threshold, "stump threshold")?;
            StumpModel::from_parts(
                *feature_index,
                t,
                ClassLabel::new(*left_label),
                ClassLabel::new(*right_label),
                dim,
                registry.clone(),
            )
            .map(Model::Stump)
            .map_err(bad_archive)
        }
    }
}

/// Snapshot a trained ensemble into its archive form.
pub fn from_model(model: &EnsembleModel, config_hash: String, seed: u64) -> ModelArchive {
    let params = match model {
        EnsembleModel::Bagging(b) => ModelParams::Bagging {
            members: b.members().iter().map(learner_to_params).collect(),
            seeds: b.seeds().to_vec(),
        },
        EnsembleModel::Boosting(b) => ModelParams::Boosting {
            mode: b.mode().name().into(),
            rounds: b
                .rounds()
                .iter()
                .map(|(m, a)| BoostRound { model: learner_to_params(m), alpha: f2s(*a) })
                .collect(),
            history: b
                .history()
                .iter()
                .map(|r| HistoryRow { round: r.round, eps: f2s(r.eps), alpha: f2s(r.alpha) })
                .collect(),
        },
        EnsembleModel::Stacking(s) => {
            let (weights, biases) = logreg_to_params(s.meta_model());
            ModelParams::Stacking {
                folds: s.folds(),
                bases: s.base_models().iter().map(learner_to_params).collect(),
                meta: MetaParams { weights, biases },
            }
        }
    };
    ModelArchive {
        format_version: FORMAT_VERSION,
        method: model.method().name().into(),
        classes: model.registry().names().to_vec(),
        feature_dim: model.feature_dim(),
        provenance: Provenance {
            config_hash,
            seed,
            artifact_version: env!("CARGO_PKG_VERSION").into(),
        },
        model: params,
    }
}

/// Rebuild a predictable model from an archive, re-validating every part.
pub fn to_model(archive: &ModelArchive) -> Result<EnsembleModel, CliError> {
    let registry = Arc::new(
        ClassRegistry::new(archive.classes.clone())
            .map_err(|e| CliError::Data(format!("archive class list: {e}")))?,
    );
    let dim = archive.feature_dim;
    let model = match &archive.model {
        ModelParams::Bagging { members, seeds } => {
            let members = members
                .iter()
                .map(|p| params_to_learner(p, dim, &registry))
                .collect::<Result<Vec<_>, _>>()?;
            EnsembleModel::Bagging(
                BaggingModel::from_parts(members, seeds.clone(), registry).map_err(bad_archive)?,
            )
        }
        ModelParams::Boosting { mode, rounds, history } => {
            let mode = match mode.as_str() {
                "binary" => BoostMode::Binary,
                "samme" => BoostMode::Samme,
                other => {
                    return Err(CliError::Data(format!(
                        "archive: unknown boosting mode '{other}'"
                    )))
                }
            };
            let rounds = rounds
                .iter()
                .map(|r| {
                    Ok((
                        params_to_learner(&r.model, dim, &registry)?,
                        parse_archive_f64(&r.alpha, "round alpha")?,
                    ))
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            let history = history
                .iter()
                .map(|h| {
                    Ok(RoundRecord {
                        round: h.round,
                        eps: parse_archive_f64(&h.eps, "history eps")?,
                        alpha: parse_archive_f64(&h.alpha, "history alpha")?,
                    })
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            EnsembleModel::Boosting(
                BoostModel::from_parts(rounds, mode, history, registry).map_err(bad_archive)?,
            )
        }
        ModelParams::Stacking { folds, bases, meta } => {
            let base_models = bases
                .iter()
                .map(|p| params_to_learner(p, dim, &registry))
                .collect::<Result<Vec<_>, _>>()?;
            let meta_dim = base_models.len() * registry.len();
            let meta_model = logreg_from_params(&meta.weights, &meta.biases, meta_dim, &registry)?;
            EnsembleModel::Stacking(
                StackingModel::from_parts(base_models, meta_model, *folds, registry)
                    .map_err(bad_archive)?,
            )
        }
    };
    if model.method().name() != archive.method {
        return Err(CliError::Data(format!(
            "archive: method tag '{}' does not match the stored '{}' parameters",
            archive.method,
            model.method().name()
        )));
    }
    Ok(model)
}

pub fn to_json(archive: &ModelArchive) -> String {
    let mut s = serde_json::to_string_pretty(archive).expect("archive serialization cannot fail");
    s.push('\n');
    s
}

pub fn from_json(text: &str) -> Result<ModelArchive, CliError> {
    // check the version gate before strict field validation so future
    // formats fail with the version message, not an unknown-field error
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| CliError::Data(format!("archive: {e}")))?;
    let version = value
        .get("format_version")
        .and_then(serde_json::Value::as_u64)
        .ok_or_else(|| CliError::Data("archive: missing format_version".into()))?;
    if version != FORMAT_VERSION {
        return Err(CliError::Data(format!(
            "archive: format_version {version} unsupported (this build reads version {FORMAT_VERSION})"
        )));
    }
    serde_json::from_value(value).map_err(|e| CliError::Data(format!("archive: {e}")))
}

pub fn save(archive: &ModelArchive, path: &Path) -> Result<(), CliError> {
    fs::write(path, to_json(archive))
        .map_err(|e| CliError::Data(format!("cannot write {}: {e}", path.display())))
}

pub fn load(path: &Path) -> Result<ModelArchive, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Data(format!("cannot read archive {}: {e}", path.display())))?;
    from_json(&text).map_err(|e| match e {
        CliError::Data(msg) => CliError::Data(format!("{}: {msg}", path.display())),
        other => other,
    })
}

pub fn load_model(path: &Path) -> Result<EnsembleModel, CliError> {
    to_model(&load(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ensemblekit::boosting::BoostMode;
    use ensemblekit::learners::LearnerSpec;
    use ensemblekit::stacking::MetaFeaturePolicy;

    fn tiny_dataset() -> Dataset {
        let registry = Arc::new(ClassRegistry::new(vec!["lo".into(), "hi".into()]).unwrap());
        let rows = vec![
            vec![0.0, 1.0],
            vec![0.5, 0.5],
            vec![1.0, 0.0],
            vec![5.0, 1.0],
            vec![5.5, 0.5],
            vec![6.0, 0.0],
        ];
        let labels = [0, 0, 0, 1, 1, 1].map(ClassLabel::new).to_vec();
        Dataset::from_rows(rows, labels, registry).unwrap()
    }

    fn probe_rows() -> Vec<Vec<f64>> {
        vec![vec![0.2, 0.9], vec![3.1, 0.4], vec![5.9, 0.1], vec![2.4, 0.6]]
    }

    fn assert_round_trip(model: EnsembleModel) {
        let archive = from_model(&model, "deadbeef".into(), 7);
        let json1 = to_json(&archive);
        let parsed = from_json(&json1).unwrap();
        let revived = to_model(&parsed).unwrap();
        let json2 = to_json(&from_model(&revived, "deadbeef".into(), 7));
        assert_eq!(json1, json2, "save -> load -> save changed bytes");
        for row in probe_rows() {
            assert_eq!(model.predict(&row).unwrap(), revived.predict(&row).unwrap());
        }
    }

    #[test]
    fn bagging_archive_round_trips_byte_identically() {
        let ds = tiny_dataset();
        let spec = LearnerSpec::logreg(0.1, 60, 1e-3).unwrap();
        let model = BaggingModel::fit(&ds, 3, &spec, 11).unwrap();
        assert_round_trip(EnsembleModel::Bagging(model));
    }

    #[test]
    fn boosting_archive_round_trips_byte_identically() {
        let ds = tiny_dataset();
        let model = BoostModel::fit(&ds, 3, &LearnerSpec::stump(), BoostMode::Binary, 5).unwrap();
        assert_round_trip(EnsembleModel::Boosting(model));
    }

    #[test]
    fn stacking_archive_round_trips_byte_identically() {
        let ds = tiny_dataset();
        let bases = vec![LearnerSpec::logreg(0.1, 60, 1e-3).unwrap(), LearnerSpec::stump()];
        let meta = LearnerSpec::logreg(0.1, 80, 1e-3).unwrap();
        let model =
            StackingModel::fit(&ds, &bases, &meta, 2, MetaFeaturePolicy::OutOfFold, 5).unwrap();
        assert_round_trip(EnsembleModel::Stacking(model));
    }

    #[test]
    fn version_gate_rejects_other_formats() {
        let ds = tiny_dataset();
        let spec = LearnerSpec::logreg(0.1, 20, 0.0).unwrap();
        let model = BaggingModel::fit(&ds, 1, &spec, 1).unwrap();
        let json = to_json(&from_model(&EnsembleModel::Bagging(model), "h".into(), 1));
        let bumped = json.replace("\"format_version\": 1", "\"format_version\": 2");
        let err = from_json(&bumped).unwrap_err();
        assert_eq!(err.exit_code(), 3);
        assert!(err.to_string().contains("format_version 2"));
    }

    #[test]
    fn corrupt_numbers_and_shapes_are_data_errors() {
        let ds = tiny_dataset();
        let spec = LearnerSpec::logreg(0.1, 20, 0.0).unwrap();
        let model = BaggingModel::fit(&ds, 1, &spec, 1).unwrap();
        let archive = from_model(&EnsembleModel::Bagging(model), "h".into(), 1);

        let mut broken = archive.clone();
        if let ModelParams::Bagging { members, .. } = &mut broken.model {
            if let LearnerParams::Logreg { weights, .. } = &mut members[0] {
                weights[0][0] = "not-a-number".into();
            }
        }
        let err = to_model(&broken).unwrap_err();
        assert_eq!(err.exit_code(), 3);

        let mut ragged = archive.clone();
        if let ModelParams::Bagging { members, .. } = &mut ragged.model {
            if let LearnerParams::Logreg { weights, .. } = &mut members[0] {
                weights[0].pop();
            }
        }
        assert_eq!(to_model(&ragged).unwrap_err().exit_code(), 3);

        let mut nan = archive;
        if let ModelParams::Bagging { members, .. } = &mut nan.model {
            if let LearnerParams::Logreg { weights, .. } = &mut members[0] {
                weights[0][0] = "NaN".into();
            }
        }
        assert_eq!(to_model(&nan).unwrap_err().exit_code(), 3);
    }

    #[test]
    fn method_tag_must_match_parameter_kind() {
        let ds = tiny_dataset();
        let spec = LearnerSpec::logreg(0.1, 20, 0.0).unwrap();
        let model = BaggingModel::fit(&ds, 1, &spec, 1).unwrap();
        let mut archive = from_model(&EnsembleModel::Bagging(model), "h".into(), 1);
        archive.method = "boosting".into();
        let err = to_model(&archive).unwrap_err();
        assert_eq!(err.exit_code(), 3);
        assert!(err.to_string().contains("does not match"));
    }

    #[test]
    fn floats_are_stored_as_shortest_strings() {
        assert_eq!(f2s(0.1), "0.1");
        assert_eq!(f2s(1.0), "1");
        assert_eq!(f2s(-0.9933333333333333), "-0.9933333333333333");
        let v = 0.1f64 + 0.2;
        assert_eq!(f2s(v).parse::<f64>().unwrap().to_bits(), v.to_bits());
    }
}
