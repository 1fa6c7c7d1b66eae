//! Adaptive boosting: sequentially reweighted weak learners combined by a
//! weighted vote.
//!
//! Two modes share the loop skeleton (fit on weighted data → weighted error
//! → model weight → weight update → renormalize):
//!
//! * **binary** — the textbook two-class rule: α_t = ½·ln((1−ε_t)/ε_t),
//!   weights scaled by exp(−α_t·y_i·h_i) with labels mapped to ±1, final
//!   prediction the sign of the α-weighted vote. Requires exactly two
//!   classes.
//! * **samme** — the multiclass generalization: α_t gains a +ln(K−1) term,
//!   the update multiplies misclassified samples by exp(α_t), and
//!   prediction is the α-weighted argmax. With K=2 it reproduces the binary
//!   mode's decisions (its alphas are exactly twice the binary ones, which
//!   cancels in the argmax).
//!
//! Rounds whose weighted error reaches the chance level (0.5 binary,
//! (K−1)/K samme) are discarded and stop the loop: their model weight would
//! be non-positive and only degrade the vote.

use crate::dataset::{ClassLabel, ClassRegistry, Dataset, SampleWeights};
use crate::error::{Error, Result};
use crate::learners::{LearnerSpec, Model};
use crate::rng::derive_seed;
use std::sync::Arc;

/// Error clamp: keeps model weights finite when a round is perfect (ε=0)
/// without special-casing, at the cost of a large-but-bounded alpha.
const EPS_CLAMP: f64 = 1e-10;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum BoostMode {
    Binary,
    Samme,
}

impl BoostMode {
    pub fn name(&self) -> &'static str {
        match self {
            BoostMode::Binary => "binary",
            BoostMode::Samme => "samme",
        }
    }

    /// Weighted error at which a round stops helping.
    pub fn chance_level(&self, num_classes: usize) -> f64 {
        match self {
            BoostMode::Binary => 0.5,
            BoostMode::Samme => (num_classes as f64 - 1.0) / num_classes as f64,
        }
    }
}

/// One accepted round of the training loop.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct RoundRecord {
    /// 1-based round number.
    pub round: usize,
    pub eps: f64,
    pub alpha: f64,
}

#[derive(Clone, Debug)]
pub struct BoostModel {
    rounds: Vec<(Model, f64)>,
    mode: BoostMode,
    history: Vec<RoundRecord>,
    registry: Arc<ClassRegistry>,
}

/// Uniform starting weights, 1/n each.
pub fn init_weights(n: usize) -> Result<SampleWeights> {
    SampleWeights::uniform(n)
}

/// Sum of the weights of misclassified samples.
pub fn weighted_error(
    preds: &[ClassLabel],
    labels: &[ClassLabel],
    w: &SampleWeights,
) -> Result<f64> {
    if preds.len() != labels.len() {
        return Err(Error::DimensionMismatch { expected: labels.len(), found: preds.len() });
    }
    if w.len() != labels.len() {
        return Err(Error::DimensionMismatch { expected: labels.len(), found: w.len() });
    }
    let mut err = 0.0;
    for i in 0..labels.len() {
        if preds[i] != labels[i] {
            err += w.values()[i];
        }
    }
    Ok(err.clamp(0.0, 1.0))
}

/// Model weight for a round with weighted error `eps` (clamped to
/// `[1e-10, 1−1e-10]` first).
pub fn model_weight(eps: f64, mode: BoostMode, num_classes: usize) -> f64 {
    let e = eps.clamp(EPS_CLAMP, 1.0 - EPS_CLAMP);
    let odds = ((1.0 - e) / e).ln();
    match mode {
        BoostMode::Binary => 0.5 * odds,
        BoostMode::Samme => odds + (num_classes as f64 - 1.0).ln(),
    }
}

/// One weight update plus renormalization.
///
/// Binary: `w_i ← w_i·exp(−α·y_i·h_i)` with classes 0/1 mapped to −1/+1 —
/// correct samples shrink by exp(−α), wrong ones grow by exp(+α). Samme:
/// `w_i ← w_i·exp(α·I[h_i ≠ y_i])` — wrong ones grow, correct ones keep
/// their weight. Both then rescale to sum 1.
pub fn update_weights(
    w: &SampleWeights,
    alpha: f64,
    preds: &[ClassLabel],
    labels: &[ClassLabel],
    mode: BoostMode,
) -> Result<SampleWeights> {
    if preds.len() != labels.len() || w.len() != labels.len() {
        return Err(Error::DimensionMismatch { expected: labels.len(), found: preds.len() });
    }
    let sign = |c: ClassLabel| if c.index() == 0 { -1.0 } else { 1.0 };
    let updated: Vec<f64> = (0..labels.len())
        .map(|i| {
            let factor = match mode {
                BoostMode::Binary => (-alpha * sign(labels[i]) * sign(preds[i])).exp(),
                BoostMode::Samme => {
                    if preds[i] != labels[i] {
                        alpha.exp()
                    } else {
                        1.0
                    }
                }
            };
            w.values()[i] * factor
        })
        .collect();
    SampleWeights::normalized(updated).map_err(|_| {
        Error::Training(format!(
            "weight update with alpha {alpha} produced a degenerate weight vector"
        ))
    })
}

impl BoostModel {
    /// Reassemble a model from trained rounds (deserialization path).
    pub fn from_parts(
        rounds: Vec<(Model, f64)>,
        mode: BoostMode,
        history: Vec<RoundRecord>,
        registry: Arc<ClassRegistry>,
    ) -> Result<Self> {
        if rounds.is_empty() {
            return Err(Error::InvalidParameter("boosting model needs at least one round".into()));
        }
        if mode == BoostMode::Binary && registry.len() != 2 {
            return Err(Error::InvalidParameter(format!(
                "binary boosting requires exactly 2 classes, got {}",
                registry.len()
            )));
        }
        if rounds.iter().any(|(_, a)| !a.is_finite()) {
            return Err(Error::InvalidParameter("model weights must be finite".into()));
        }
        let dim = rounds[0].0.feature_dim();
        for (m, _) in &rounds {
            if m.feature_dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: m.feature_dim() });
            }
        }
        Ok(Self { rounds, mode, history, registry })
    }

    /// Run up to `rounds` boosting iterations on `train`.
    ///
    /// Stops early (discarding the offending round) as soon as a round's
    /// weighted error reaches the chance level; erroring out if that
    /// happens on the very first round, since a vote of zero models is
    /// meaningless.
    pub fn fit(
        train: &Dataset,
        rounds: usize,
        spec: &LearnerSpec,
        mode: BoostMode,
        seed: u64,
    ) -> Result<Self> {
        if rounds == 0 {
            return Err(Error::InvalidParameter("round count must be at least 1".into()));
        }
        spec.validate()?;
        let k = train.num_classes();
        if mode == BoostMode::Binary && k != 2 {
            return Err(Error::InvalidParameter(format!(
                "binary boosting requires exactly 2 classes, got {k}"
            )));
        }
        let chance = mode.chance_level(k);
        let labels = train.labels();

        let mut w = init_weights(train.len())?;
        let mut accepted: Vec<(Model, f64)> = Vec::new();
        let mut history = Vec::new();
        for t in 0..rounds {
            let model = spec.fit(train, &w, derive_seed(seed, t as u64))?;
            let preds = model.predict_dataset(train)?;
            let eps = weighted_error(&preds, labels, &w)?;
            if eps >= chance {
                break;
            }
            let alpha = model_weight(eps, mode, k);
            history.push(RoundRecord { round: t + 1, eps, alpha });
            accepted.push((model, alpha));
            w = update_weights(&w, alpha, &preds, labels, mode)?;
            let sum = w.sum();
            if (sum - 1.0).abs() > 1e-9 {
                return Err(Error::Internal(format!(
                    "weights sum to {sum} after round {} (expected 1 within 1e-9)",
                    t + 1
                )));
            }
        }
        if accepted.is_empty() {
            return Err(Error::Training(format!(
                "boosting made no progress: the first round's weighted error was already at or \
                 above the chance level {chance}"
            )));
        }
        Ok(Self { rounds: accepted, mode, history, registry: train.registry().clone() })
    }

    pub fn rounds(&self) -> &[(Model, f64)] {
        &self.rounds
    }

    pub fn mode(&self) -> BoostMode {
        self.mode
    }

    pub fn history(&self) -> &[RoundRecord] {
        &self.history
    }

    pub fn registry(&self) -> &Arc<ClassRegistry> {
        &self.registry
    }

    pub fn feature_dim(&self) -> usize {
        self.rounds[0].0.feature_dim()
    }

    /// Alpha-weighted vote. Binary: sign of the ±1 vote sum, with an exact
    /// zero going to class 0. Samme: argmax of per-class alpha totals, ties
    /// to the lowest index.
    pub fn predict(&self, x: &[f64]) -> Result<ClassLabel> {
        match self.mode {
            BoostMode::Binary => {
                let mut score = 0.0;
                for (model, alpha) in &self.rounds {
                    let h = if model.predict_label(x)?.index() == 0 { -1.0 } else { 1.0 };
                    score += alpha * h;
                }
                Ok(ClassLabel::new(if score > 0.0 { 1 } else { 0 }))
            }
            BoostMode::Samme => {
                let mut scores = vec![0.0; self.registry.len()];
                for (model, alpha) in &self.rounds {
                    scores[model.predict_label(x)?.index()] += alpha;
                }
                let mut best = 0;
                for c in 1..scores.len() {
                    if scores[c] > scores[best] {
                        best = c;
                    }
                }
                Ok(ClassLabel::new(best))
            }
        }
    }

    pub fn predict_dataset(&self, ds: &Dataset) -> Result<Vec<ClassLabel>> {
        (0..ds.len()).map(|i| self.predict(ds.row(i))).collect()
    }
}
