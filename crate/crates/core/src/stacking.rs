//! Stacked generalization: base learners produce class-probability
//! meta-features; a logistic-regression meta-model learns to combine them.
//!
//! Meta-training features are generated **out of fold** by default: the
//! training set is stratified into `folds` folds, and the meta-features for
//! fold j come from base models that never saw fold j. That discipline
//! keeps the meta-model from learning how well bases memorize their own
//! training labels. The literal alternative — bases trained on everything
//! also produce the meta-features — remains available as
//! [`MetaFeaturePolicy::InSample`] for fidelity experiments, clearly
//! labeled as leaky.

use crate::dataset::{ClassLabel, ClassRegistry, Dataset, SampleWeights};
use crate::error::{Error, Result};
use crate::learners::{LearnerSpec, LogRegModel, Model};
use crate::rng::{derive_seed, SplitMix64};
use std::sync::Arc;

/// How meta-training features are produced.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum MetaFeaturePolicy {
    /// Fold j's meta-features come from bases trained on the other folds.
    OutOfFold,
    /// Bases trained on all of train also emit the meta-features
    /// (training labels leak into the meta-model's inputs).
    InSample,
}

impl MetaFeaturePolicy {
    pub fn name(&self) -> &'static str {
        match self {
            MetaFeaturePolicy::OutOfFold => "out_of_fold",
            MetaFeaturePolicy::InSample => "in_sample",
        }
    }
}

/// Concatenated base-model probability vectors: k bases × K classes.
#[derive(Clone, Debug, PartialEq)]
pub struct MetaFeatureVector {
    values: Vec<f64>,
}

impl MetaFeatureVector {
    /// Validates the block structure: length k·K with every K-block a
    /// probability vector.
    pub fn new(values: Vec<f64>, num_classes: usize) -> Result<Self> {
        if num_classes == 0 || values.is_empty() || !values.len().is_multiple_of(num_classes) {
            return Err(Error::DimensionMismatch {
                expected: num_classes.max(1),
                found: values.len(),
            });
        }
        for block in values.chunks_exact(num_classes) {
            let sum: f64 = block.iter().sum();
            if (sum - 1.0).abs() > 1e-9 || block.iter().any(|&p| p.is_nan() || p < 0.0) {
                return Err(Error::Internal(format!(
                    "meta-feature block {block:?} is not a probability vector"
                )));
            }
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }
}

/// Concatenate every base model's probability output for `x`, in list order.
pub fn build_meta_features(base_models: &[Model], x: &[f64]) -> Result<MetaFeatureVector> {
    if base_models.is_empty() {
        return Err(Error::InvalidParameter("no base models".into()));
    }
    let k = base_models[0].num_classes();
    let mut values = Vec::with_capacity(base_models.len() * k);
    for model in base_models {
        values.extend_from_slice(model.predict_proba(x)?.probs());
    }
    MetaFeatureVector::new(values, k)
}

/// Stratified fold assignment: per class, positions are shuffled with a
/// class-derived seed and dealt round-robin, so every fold holds at least
/// one sample of every class whenever each class has ≥ `folds` samples.
/// Returns the fold index of every row.
pub fn assign_folds(ds: &Dataset, folds: usize, seed: u64) -> Result<Vec<usize>> {
    if folds < 2 {
        return Err(Error::InvalidParameter(format!("folds must be at least 2, got {folds}")));
    }
    let counts = ds.class_counts();
    if let Some(c) = counts.iter().position(|&n| n < folds) {
        return Err(Error::InvalidParameter(format!(
            "class '{}' has {} samples, fewer than {folds} folds",
            ds.registry().names()[c],
            counts[c]
        )));
    }
    let mut by_class = vec![Vec::new(); ds.num_classes()];
    for i in 0..ds.len() {
        by_class[ds.label(i).index()].push(i);
    }
    let mut fold_of = vec![0usize; ds.len()];
    for (c, mut ix) in by_class.into_iter().enumerate() {
        let mut rng = SplitMix64::new(derive_seed(seed, c as u64));
        rng.shuffle(&mut ix);
        for (pos, row) in ix.into_iter().enumerate() {
            fold_of[row] = pos % folds;
        }
    }
    Ok(fold_of)
}

#[derive(Clone, Debug)]
pub struct StackingModel {
    base_models: Vec<Model>,
    meta_model: LogRegModel,
    folds: usize,
    registry: Arc<ClassRegistry>,
}

impl StackingModel {
    /// Reassemble from trained parts (deserialization path).
    pub fn from_parts(
        base_models: Vec<Model>,
        meta_model: LogRegModel,
        folds: usize,
        registry: Arc<ClassRegistry>,
    ) -> Result<Self> {
        if base_models.is_empty() {
            return Err(Error::InvalidParameter("ensemble needs at least one base model".into()));
        }
        let k = registry.len();
        let expected_meta_dim = base_models.len() * k;
        if meta_model.feature_dim() != expected_meta_dim {
            return Err(Error::DimensionMismatch {
                expected: expected_meta_dim,
                found: meta_model.feature_dim(),
            });
        }
        let dim = base_models[0].feature_dim();
        for m in &base_models {
            if m.feature_dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: m.feature_dim() });
            }
            if m.registry().len() != k {
                return Err(Error::InvalidParameter(
                    "base models disagree on the class set".into(),
                ));
            }
        }
        Ok(Self { base_models, meta_model, folds, registry })
    }

    /// Train the two-level ensemble.
    ///
    /// Seed derivation is namespaced per concern so no stream is reused:
    /// fold assignment shuffles with `derive_seed(seed, 0)` as its root,
    /// per-fold base fits draw from the `derive_seed(seed, 1)` stream, and
    /// the final all-data base refits from `derive_seed(seed, 2)`.
    pub fn fit(
        train: &Dataset,
        base_specs: &[LearnerSpec],
        meta_spec: &LearnerSpec,
        folds: usize,
        policy: MetaFeaturePolicy,
        seed: u64,
    ) -> Result<Self> {
        if base_specs.is_empty() {
            return Err(Error::InvalidParameter("at least one base learner is required".into()));
        }
        for spec in base_specs {
            spec.validate()?;
        }
        let (meta_lr, meta_epochs, meta_l2) = match *meta_spec {
            LearnerSpec::LogReg { learning_rate, epochs, l2 } => (learning_rate, epochs, l2),
            LearnerSpec::Stump => {
                return Err(Error::InvalidParameter(
                    "the meta-model must be a logistic regression".into(),
                ))
            }
        };
        meta_spec.validate()?;

        let n = train.len();
        let num_bases = base_specs.len();
        let fold_of = assign_folds(train, folds, derive_seed(seed, 0))?;
        let fit_root = derive_seed(seed, 1);
        let refit_root = derive_seed(seed, 2);

        // out-of-fold (or deliberately leaky in-sample) meta-feature matrix
        let mut meta_rows: Vec<Vec<f64>> = vec![Vec::new(); n];
        match policy {
            MetaFeaturePolicy::OutOfFold => {
                for fold in 0..folds {
                    let train_ix: Vec<usize> =
                        (0..n).filter(|&i| fold_of[i] != fold).collect();
                    let sub = train.select(&train_ix)?;
                    let weights = SampleWeights::uniform(sub.len())?;
                    let fold_models: Vec<Model> = base_specs
                        .iter()
                        .enumerate()
                        .map(|(b, spec)| {
                            spec.fit(&sub, &weights, derive_seed(fit_root, (fold * num_bases + b) as u64))
                        })
                        .collect::<Result<_>>()?;
                    for i in (0..n).filter(|&i| fold_of[i] == fold) {
                        meta_rows[i] =
                            build_meta_features(&fold_models, train.row(i))?.into_values();
                    }
                }
            }
            MetaFeaturePolicy::InSample => {
                let weights = SampleWeights::uniform(n)?;
                let models: Vec<Model> = base_specs
                    .iter()
                    .enumerate()
                    .map(|(b, spec)| spec.fit(train, &weights, derive_seed(fit_root, b as u64)))
                    .collect::<Result<_>>()?;
                for (i, row) in meta_rows.iter_mut().enumerate() {
                    *row = build_meta_features(&models, train.row(i))?.into_values();
                }
            }
        }

        let meta_ds =
            Dataset::from_rows(meta_rows, train.labels().to_vec(), train.registry().clone())?;
        let meta_weights = SampleWeights::uniform(n)?;
        let meta_model =
            LogRegModel::fit(&meta_ds, &meta_weights, meta_lr, meta_epochs, meta_l2, seed)?;

        // final base models see all of train
        let weights = SampleWeights::uniform(n)?;
        let base_models: Vec<Model> = base_specs
            .iter()
            .enumerate()
            .map(|(b, spec)| spec.fit(train, &weights, derive_seed(refit_root, b as u64)))
            .collect::<Result<_>>()?;

        Ok(Self { base_models, meta_model, folds, registry: train.registry().clone() })
    }

    pub fn base_models(&self) -> &[Model] {
        &self.base_models
    }

    pub fn meta_model(&self) -> &LogRegModel {
        &self.meta_model
    }

    pub fn folds(&self) -> usize {
        self.folds
    }

    pub fn registry(&self) -> &Arc<ClassRegistry> {
        &self.registry
    }

    pub fn feature_dim(&self) -> usize {
        self.base_models[0].feature_dim()
    }

    /// Meta-features of `x` under the final (all-data) base models.
    pub fn meta_features(&self, x: &[f64]) -> Result<MetaFeatureVector> {
        build_meta_features(&self.base_models, x)
    }

    pub fn predict(&self, x: &[f64]) -> Result<ClassLabel> {
        let z = self.meta_features(x)?;
        self.meta_model.predict_label(z.values())
    }

    pub fn predict_dataset(&self, ds: &Dataset) -> Result<Vec<ClassLabel>> {
        (0..ds.len()).map(|i| self.predict(ds.row(i))).collect()
    }
}
