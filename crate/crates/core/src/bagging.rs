//! Bootstrap aggregating: independent base learners on bootstrap resamples,
//! combined by majority vote over hard labels.

use crate::dataset::{ClassLabel, ClassRegistry, Dataset, SampleWeights};
use crate::error::{Error, Result};
use crate::learners::{LearnerSpec, Model};
use crate::rng::derive_seed;
use crate::split::bootstrap_sample;
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct BaggingModel {
    members: Vec<Model>,
    seeds: Vec<u64>,
    registry: Arc<ClassRegistry>,
}

impl BaggingModel {
    /// Reassemble a model from trained members (deserialization path).
    pub fn from_parts(
        members: Vec<Model>,
        seeds: Vec<u64>,
        registry: Arc<ClassRegistry>,
    ) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::InvalidParameter("ensemble needs at least one member".into()));
        }
        if seeds.len() != members.len() {
            return Err(Error::DimensionMismatch { expected: members.len(), found: seeds.len() });
        }
        let dim = members[0].feature_dim();
        for m in &members {
            if m.feature_dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: m.feature_dim() });
            }
            if m.registry().len() != registry.len() {
                return Err(Error::InvalidParameter(
                    "ensemble members disagree on the class set".into(),
                ));
            }
        }
        Ok(Self { members, seeds, registry })
    }

    /// Train `m` members, the i-th on `bootstrap_sample(train, derive_seed(seed, i))`
    /// with uniform sample weights. Retraining any single member from its
    /// recorded seed reproduces it exactly.
    pub fn fit(train: &Dataset, m: usize, spec: &LearnerSpec, seed: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParameter("member count m must be at least 1".into()));
        }
        spec.validate()?;
        let mut members = Vec::with_capacity(m);
        let mut seeds = Vec::with_capacity(m);
        for i in 0..m {
            let member_seed = derive_seed(seed, i as u64);
            let sample = bootstrap_sample(train, member_seed)?;
            let weights = SampleWeights::uniform(sample.len())?;
            members.push(spec.fit(&sample, &weights, member_seed)?);
            seeds.push(member_seed);
        }
        Ok(Self { members, seeds, registry: train.registry().clone() })
    }

    pub fn members(&self) -> &[Model] {
        &self.members
    }

    pub fn seeds(&self) -> &[u64] {
        &self.seeds
    }

    pub fn registry(&self) -> &Arc<ClassRegistry> {
        &self.registry
    }

    pub fn feature_dim(&self) -> usize {
        self.members[0].feature_dim()
    }

    pub fn predict(&self, x: &[f64]) -> Result<ClassLabel> {
        let votes: Vec<ClassLabel> =
            self.members.iter().map(|m| m.predict_label(x)).collect::<Result<_>>()?;
        majority_vote(&votes, self.registry.len())
    }

    pub fn predict_dataset(&self, ds: &Dataset) -> Result<Vec<ClassLabel>> {
        (0..ds.len()).map(|i| self.predict(ds.row(i))).collect()
    }
}

/// Most-voted class; ties go to the lowest class index.
pub fn majority_vote(votes: &[ClassLabel], num_classes: usize) -> Result<ClassLabel> {
    if votes.is_empty() {
        return Err(Error::InvalidParameter("majority vote over an empty vote list".into()));
    }
    let mut counts = vec![0usize; num_classes];
    for v in votes {
        if v.index() >= num_classes {
            return Err(Error::Internal(format!(
                "vote for class {} with only {num_classes} classes",
                v.index()
            )));
        }
        counts[v.index()] += 1;
    }
    let mut best = 0;
    for c in 1..num_classes {
        if counts[c] > counts[best] {
            best = c;
        }
    }
    Ok(ClassLabel::new(best))
}
