//! Decision stump: a single `(feature, threshold)` split.
//!
//! Fitting is an exhaustive search. For every feature, the candidate
//! thresholds are the midpoints between consecutive distinct sorted values;
//! each candidate's side labels are the weighted-majority classes of the
//! samples falling on that side, and the candidate's cost is the weighted
//! misclassification it leaves. The search keeps the first strict minimum
//! while scanning features in index order and thresholds in ascending
//! order, which realizes the tie rule (lowest error, then lowest feature
//! index, then lowest threshold) without any extra bookkeeping.

use super::argmax;
use crate::dataset::{ClassLabel, ClassRegistry, Dataset, SampleWeights};
use crate::error::{Error, Result};
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct StumpModel {
    feature_index: usize,
    threshold: f64,
    left_label: ClassLabel,
    right_label: ClassLabel,
    dim: usize,
    registry: Arc<ClassRegistry>,
}

impl StumpModel {
    /// Assemble a stump from raw parts (deserialization, pinned tests).
    pub fn from_parts(
        feature_index: usize,
        threshold: f64,
        left_label: ClassLabel,
        right_label: ClassLabel,
        dim: usize,
        registry: Arc<ClassRegistry>,
    ) -> Result<Self> {
        if feature_index >= dim {
            return Err(Error::InvalidParameter(format!(
                "stump feature index {feature_index} out of range for dimension {dim}"
            )));
        }
        if !threshold.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "stump threshold must be finite, got {threshold}"
            )));
        }
        for label in [left_label, right_label] {
            if label.index() >= registry.len() {
                return Err(Error::InvalidParameter(format!(
                    "stump label index {} out of range for {} classes",
                    label.index(),
                    registry.len()
                )));
            }
        }
        Ok(Self { feature_index, threshold, left_label, right_label, dim, registry })
    }

    /// Exhaustive weighted-error minimization over all candidate splits.
    ///
    /// If no feature has two distinct values there is nothing to split on;
    /// the fallback is a constant stump on feature 0 whose both sides
    /// predict the global weighted-majority class.
    pub fn fit(ds: &Dataset, weights: &SampleWeights) -> Result<Self> {
        if weights.len() != ds.len() {
            return Err(Error::DimensionMismatch { expected: ds.len(), found: weights.len() });
        }
        let n = ds.len();
        let d = ds.dim();
        let k = ds.num_classes();
        let w = weights.values();

        let mut best: Option<(f64, usize, f64, usize, usize)> = None;
        let mut column = vec![0.0; n];
        for f in 0..d {
            for (i, slot) in column.iter_mut().enumerate() {
                *slot = ds.row(i)[f];
            }
            let mut sorted = column.clone();
            sorted.sort_by(f64::total_cmp);
            sorted.dedup();
            for pair in sorted.windows(2) {
                let t = (pair[0] + pair[1]) / 2.0;

                let mut left_counts = vec![0.0; k];
                let mut right_counts = vec![0.0; k];
                for i in 0..n {
                    if column[i] <= t {
                        left_counts[ds.label(i).index()] += w[i];
                    } else {
                        right_counts[ds.label(i).index()] += w[i];
                    }
                }
                let left = argmax(&left_counts);
                let right = argmax(&right_counts);

                let mut err = 0.0;
                for i in 0..n {
                    let predicted = if column[i] <= t { left } else { right };
                    if predicted != ds.label(i).index() {
                        err += w[i];
                    }
                }
                if best.is_none_or(|(e, ..)| err < e) {
                    best = Some((err, f, t, left, right));
                }
            }
        }

        let (feature_index, threshold, left, right) = match best {
            Some((_, f, t, l, r)) => (f, t, l, r),
            None => {
                let mut counts = vec![0.0; k];
                for i in 0..n {
                    counts[ds.label(i).index()] += w[i];
                }
                let majority = argmax(&counts);
                (0, ds.row(0)[0], majority, majority)
            }
        };
        Ok(Self {
            feature_index,
            threshold,
            left_label: ClassLabel::new(left),
            right_label: ClassLabel::new(right),
            dim: d,
            registry: ds.registry().clone(),
        })
    }

    pub fn feature_index(&self) -> usize {
        self.feature_index
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn left_label(&self) -> ClassLabel {
        self.left_label
    }

    pub fn right_label(&self) -> ClassLabel {
        self.right_label
    }

    pub fn feature_dim(&self) -> usize {
        self.dim
    }

    pub fn registry(&self) -> &Arc<ClassRegistry> {
        &self.registry
    }

    /// `x[feature] ≤ threshold` goes left — the boundary itself included.
    pub fn predict(&self, x: &[f64]) -> Result<ClassLabel> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: x.len() });
        }
        Ok(if x[self.feature_index] <= self.threshold {
            self.left_label
        } else {
            self.right_label
        })
    }
}
