//! Stratified splitting, class balancing and bootstrap resampling.
//!
//! Everything here is a pure function of (input, seed): per-class work uses
//! `derive_seed(seed, class_index)` so results do not depend on iteration
//! order or on other classes' sizes.

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::rng::{derive_seed, SplitMix64};

/// Train/validation/test fractions plus the seed that drives the shuffle.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct SplitSpec {
    pub train_fraction: f64,
    pub val_fraction: f64,
    pub test_fraction: f64,
    pub seed: u64,
}

impl SplitSpec {
    /// 0.70 / 0.15 / 0.15 — with 6,000 balanced samples this yields a
    /// 900-sample test split.
    pub fn default_fractions(seed: u64) -> Self {
        Self { train_fraction: 0.70, val_fraction: 0.15, test_fraction: 0.15, seed }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, f) in [
            ("train_fraction", self.train_fraction),
            ("val_fraction", self.val_fraction),
            ("test_fraction", self.test_fraction),
        ] {
            if !(f > 0.0 && f < 1.0) {
                return Err(Error::InvalidParameter(format!("{name} must lie in (0,1), got {f}")));
            }
        }
        let sum = self.train_fraction + self.val_fraction + self.test_fraction;
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidParameter(format!(
                "split fractions sum to {sum}, expected 1 within 1e-9"
            )));
        }
        Ok(())
    }
}

/// Per-class sample indices in dataset order.
fn indices_by_class(ds: &Dataset) -> Vec<Vec<usize>> {
    let mut by_class = vec![Vec::new(); ds.num_classes()];
    for i in 0..ds.len() {
        by_class[ds.label(i).index()].push(i);
    }
    by_class
}

/// Stratified split into (train, val, test).
///
/// Per class: shuffle that class's sample positions with a class-derived
/// seed, then take `floor(train_fraction * n_c)` for train,
/// `floor(val_fraction * n_c)` for val, and the remainder for test. The
/// three outputs partition the input multiset exactly; output order is
/// class index order, shuffled order within a class.
pub fn stratified_split(ds: &Dataset, spec: &SplitSpec) -> Result<(Dataset, Dataset, Dataset)> {
    spec.validate()?;
    let by_class = indices_by_class(ds);
    if let Some(c) = by_class.iter().position(|ix| ix.len() < 3) {
        return Err(Error::InvalidParameter(format!(
            "class '{}' has {} samples, need at least 3 to split",
            ds.registry().names()[c],
            by_class[c].len()
        )));
    }

    let mut train_ix = Vec::new();
    let mut val_ix = Vec::new();
    let mut test_ix = Vec::new();
    for (c, mut ix) in by_class.into_iter().enumerate() {
        let mut rng = SplitMix64::new(derive_seed(spec.seed, c as u64));
        rng.shuffle(&mut ix);
        let n = ix.len();
        let n_train = (spec.train_fraction * n as f64).floor() as usize;
        let n_val = (spec.val_fraction * n as f64).floor() as usize;
        if n_train == 0 || n_val == 0 || n_train + n_val >= n {
            return Err(Error::InvalidParameter(format!(
                "class '{}' would give an empty split ({} samples, {} train, {} val)",
                ds.registry().names()[c],
                n,
                n_train,
                n_val
            )));
        }
        train_ix.extend_from_slice(&ix[..n_train]);
        val_ix.extend_from_slice(&ix[n_train..n_train + n_val]);
        test_ix.extend_from_slice(&ix[n_train + n_val..]);
    }

    Ok((ds.select(&train_ix)?, ds.select(&val_ix)?, ds.select(&test_ix)?))
}

/// Rebalance to exactly `n_per_class` samples per class.
///
/// Surplus classes are subsampled without replacement (seeded shuffle,
/// first `n_per_class` kept); deficit classes are drawn i.i.d. with
/// replacement. Output is ordered class by class.
pub fn balance_classes(ds: &Dataset, n_per_class: usize, seed: u64) -> Result<Dataset> {
    if n_per_class == 0 {
        return Err(Error::InvalidParameter("n_per_class must be at least 1".into()));
    }
    let by_class = indices_by_class(ds);
    if let Some(c) = by_class.iter().position(|ix| ix.is_empty()) {
        return Err(Error::InvalidParameter(format!(
            "class '{}' has no samples",
            ds.registry().names()[c]
        )));
    }

    let mut selected = Vec::with_capacity(n_per_class * ds.num_classes());
    for (c, mut ix) in by_class.into_iter().enumerate() {
        let mut rng = SplitMix64::new(derive_seed(seed, c as u64));
        if ix.len() >= n_per_class {
            rng.shuffle(&mut ix);
            selected.extend_from_slice(&ix[..n_per_class]);
        } else {
            for _ in 0..n_per_class {
                let j = rng.next_below(ix.len() as u64) as usize;
                selected.push(ix[j]);
            }
        }
    }
    ds.select(&selected)
}

/// Same-size bootstrap sample: n draws uniformly with replacement.
pub fn bootstrap_sample(ds: &Dataset, seed: u64) -> Result<Dataset> {
    let n = ds.len();
    let mut rng = SplitMix64::new(seed);
    let indices: Vec<usize> = (0..n).map(|_| rng.next_below(n as u64) as usize).collect();
    ds.select(&indices)
}
