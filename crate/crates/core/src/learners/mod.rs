//! Weak learners: weighted multinomial logistic regression and the decision
//! stump, behind a small dispatch enum so ensembles can mix them freely.
//!
//! Both learners train against per-sample weights natively (no weighted
//! resampling), predict hard labels, and expose class-probability outputs —
//! the stump's are degenerate one-hot vectors. Argmax ties resolve to the
//! lowest class index everywhere in this crate; that single rule keeps every
//! downstream vote and report reproducible.

mod logreg;
mod stump;

pub use logreg::{loss_and_gradient, stable_learning_rate, LogRegModel};
pub use stump::StumpModel;

use crate::dataset::{ClassLabel, ClassRegistry, Dataset, SampleWeights};
use crate::error::{Error, Result};
use std::sync::Arc;

/// Argmax over finite scores, ties to the lowest index.
pub(crate) fn argmax(scores: &[f64]) -> usize {
    let mut best = 0;
    for (i, &s) in scores.iter().enumerate().skip(1) {
        if s > scores[best] {
            best = i;
        }
    }
    best
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum LearnerKind {
    LogReg,
    Stump,
}

impl LearnerKind {
    pub fn name(&self) -> &'static str {
        match self {
            LearnerKind::LogReg => "logreg",
            LearnerKind::Stump => "stump",
        }
    }
}

/// Which learner to fit, plus its hyperparameters.
#[derive(Copy, Clone, Debug, PartialEq)]
pub enum LearnerSpec {
    LogReg { learning_rate: f64, epochs: usize, l2: f64 },
    Stump,
}

impl LearnerSpec {
    pub fn logreg(learning_rate: f64, epochs: usize, l2: f64) -> Result<Self> {
        let spec = LearnerSpec::LogReg { learning_rate, epochs, l2 };
        spec.validate()?;
        Ok(spec)
    }

    pub fn stump() -> Self {
        LearnerSpec::Stump
    }

    pub fn kind(&self) -> LearnerKind {
        match self {
            LearnerSpec::LogReg { .. } => LearnerKind::LogReg,
            LearnerSpec::Stump => LearnerKind::Stump,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let LearnerSpec::LogReg { learning_rate, epochs, l2 } = *self {
            if !(learning_rate > 0.0 && learning_rate.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "learning_rate must be positive and finite, got {learning_rate}"
                )));
            }
            if epochs == 0 {
                return Err(Error::InvalidParameter("epochs must be at least 1".into()));
            }
            if !(l2 >= 0.0 && l2.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "l2 must be nonnegative and finite, got {l2}"
                )));
            }
        }
        Ok(())
    }

    /// Fit this learner on weighted data. The seed is threaded through for
    /// future stochastic learners; the two current ones are deterministic
    /// without it (logreg starts from zero, stump search is exhaustive).
    pub fn fit(&self, ds: &Dataset, weights: &SampleWeights, seed: u64) -> Result<Model> {
        self.validate()?;
        match *self {
            LearnerSpec::LogReg { learning_rate, epochs, l2 } => Ok(Model::LogReg(
                LogRegModel::fit(ds, weights, learning_rate, epochs, l2, seed)?,
            )),
            LearnerSpec::Stump => Ok(Model::Stump(StumpModel::fit(ds, weights)?)),
        }
    }
}

/// Class-probability output of a learner: nonnegative, sums to 1.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbabilityDistribution {
    probs: Vec<f64>,
}

impl ProbabilityDistribution {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::Internal("empty probability vector".into()));
        }
        if probs.iter().any(|&p| p.is_nan() || p < 0.0) {
            return Err(Error::Internal(format!("negative or NaN probability in {probs:?}")));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::Internal(format!("probabilities sum to {sum}, expected 1")));
        }
        Ok(Self { probs })
    }

    /// Point mass on one class.
    pub fn one_hot(label: ClassLabel, num_classes: usize) -> Self {
        let mut probs = vec![0.0; num_classes];
        probs[label.index()] = 1.0;
        Self { probs }
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Most probable class, ties to the lowest index.
    pub fn argmax(&self) -> ClassLabel {
        ClassLabel::new(argmax(&self.probs))
    }
}

/// A trained weak learner of either kind.
#[derive(Clone, Debug)]
pub enum Model {
    LogReg(LogRegModel),
    Stump(StumpModel),
}

impl Model {
    pub fn kind(&self) -> LearnerKind {
        match self {
            Model::LogReg(_) => LearnerKind::LogReg,
            Model::Stump(_) => LearnerKind::Stump,
        }
    }

    pub fn registry(&self) -> &Arc<ClassRegistry> {
        match self {
            Model::LogReg(m) => m.registry(),
            Model::Stump(m) => m.registry(),
        }
    }

    pub fn feature_dim(&self) -> usize {
        match self {
            Model::LogReg(m) => m.feature_dim(),
            Model::Stump(m) => m.feature_dim(),
        }
    }

    pub fn num_classes(&self) -> usize {
        self.registry().len()
    }

    /// Class probabilities for one sample. Stumps emit a one-hot vector on
    /// their predicted class, so ensembles can treat all learners uniformly.
    pub fn predict_proba(&self, x: &[f64]) -> Result<ProbabilityDistribution> {
        match self {
            Model::LogReg(m) => m.predict_proba(x),
            Model::Stump(m) => {
                Ok(ProbabilityDistribution::one_hot(m.predict(x)?, m.registry().len()))
            }
        }
    }

    pub fn predict_label(&self, x: &[f64]) -> Result<ClassLabel> {
        match self {
            Model::LogReg(m) => m.predict_label(x),
            Model::Stump(m) => m.predict(x),
        }
    }

    /// Hard labels for every row of a dataset.
    pub fn predict_dataset(&self, ds: &Dataset) -> Result<Vec<ClassLabel>> {
        (0..ds.len()).map(|i| self.predict_label(ds.row(i))).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn argmax_prefers_lowest_index_on_ties() {
        assert_eq!(argmax(&[1.0, 1.0, 1.0]), 0);
        assert_eq!(argmax(&[0.0, 2.0, 2.0]), 1);
        assert_eq!(argmax(&[-1.0, -3.0, -1.0]), 0);
        assert_eq!(argmax(&[5.0]), 0);
    }

    #[test]
    fn spec_validation_rejects_bad_hyperparameters() {
        assert!(LearnerSpec::logreg(0.0, 10, 0.0).is_err());
        assert!(LearnerSpec::logreg(-0.1, 10, 0.0).is_err());
        assert!(LearnerSpec::logreg(0.1, 0, 0.0).is_err());
        assert!(LearnerSpec::logreg(0.1, 10, -1e-9).is_err());
        assert!(LearnerSpec::logreg(f64::NAN, 10, 0.0).is_err());
        assert!(LearnerSpec::logreg(0.1, 10, f64::INFINITY).is_err());
        assert!(LearnerSpec::logreg(0.5, 100, 0.01).is_ok());
        assert!(LearnerSpec::stump().validate().is_ok());
    }

    #[test]
    fn probability_distribution_validates_its_contract() {
        assert!(ProbabilityDistribution::new(vec![0.5, 0.5]).is_ok());
        assert!(ProbabilityDistribution::new(vec![0.6, 0.5]).is_err());
        assert!(ProbabilityDistribution::new(vec![-0.1, 1.1]).is_err());
        assert!(ProbabilityDistribution::new(vec![]).is_err());
        assert!(ProbabilityDistribution::new(vec![1.0 + 5e-10]).is_ok());
    }

    #[test]
    fn one_hot_is_a_point_mass() {
        let p = ProbabilityDistribution::one_hot(ClassLabel::new(2), 4);
        assert_eq!(p.probs(), &[0.0, 0.0, 1.0, 0.0]);
        assert_eq!(p.argmax(), ClassLabel::new(2));
    }

    #[test]
    fn distribution_argmax_ties_to_lowest() {
        let p = ProbabilityDistribution::new(vec![0.25; 4]).unwrap();
        assert_eq!(p.argmax(), ClassLabel::new(0));
    }

    #[test]
    fn kind_names_are_stable() {
        assert_eq!(LearnerKind::LogReg.name(), "logreg");
        assert_eq!(LearnerKind::Stump.name(), "stump");
        assert_eq!(LearnerSpec::stump().kind(), LearnerKind::Stump);
    }
}
