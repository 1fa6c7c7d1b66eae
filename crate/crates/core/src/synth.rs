//! Fixed synthetic datasets for benchmarks, examples and tests.
//!
//! Both generators draw every class from its own seeded stream
//! (`derive_seed(seed, class_index)`), so a class's samples never depend on
//! how many other classes exist or how large they are. Rows are laid out
//! class block by class block, in draw order.

use crate::dataset::{ClassLabel, ClassRegistry, Dataset};
use crate::error::Result;
use crate::rng::{derive_seed, SplitMix64};
use std::sync::Arc;

/// Three well-separated 2-D Gaussian blobs (σ = 1) centered at (0,0),
/// (5,5) and (0,5) — 300 samples per class, the first 200 of each going to
/// train and the last 100 to test. Returns `(train, test)` of 600 and 300
/// samples.
///
/// The layout leaves enough class overlap at σ = 1 to keep the problem
/// nontrivial for a weak learner while staying solvable by every ensemble.
pub fn gaussian_blobs(seed: u64) -> Result<(Dataset, Dataset)> {
    const CENTERS: [(f64, f64); 3] = [(0.0, 0.0), (5.0, 5.0), (0.0, 5.0)];
    const PER_CLASS: usize = 300;
    const TRAIN_PER_CLASS: usize = 200;

    let registry = Arc::new(ClassRegistry::new(vec![
        "blob_a".into(),
        "blob_b".into(),
        "blob_c".into(),
    ])?);
    let mut train_rows = Vec::with_capacity(3 * TRAIN_PER_CLASS);
    let mut train_labels = Vec::with_capacity(3 * TRAIN_PER_CLASS);
    let mut test_rows = Vec::with_capacity(3 * (PER_CLASS - TRAIN_PER_CLASS));
    let mut test_labels = Vec::with_capacity(3 * (PER_CLASS - TRAIN_PER_CLASS));

    for (c, &(cx, cy)) in CENTERS.iter().enumerate() {
        let mut rng = SplitMix64::new(derive_seed(seed, c as u64));
        for i in 0..PER_CLASS {
            let row = vec![cx + rng.next_gaussian(), cy + rng.next_gaussian()];
            if i < TRAIN_PER_CLASS {
                train_rows.push(row);
                train_labels.push(ClassLabel::new(c));
            } else {
                test_rows.push(row);
                test_labels.push(ClassLabel::new(c));
            }
        }
    }
    let train = Dataset::from_rows(train_rows, train_labels, registry.clone())?;
    let test = Dataset::from_rows(test_rows, test_labels, registry)?;
    Ok((train, test))
}

/// Two overlapping 1-D Gaussian classes: 100 samples from N(−1, 1) as
/// class `neg` and 100 from N(+1, 1) as class `pos`. The overlap keeps
/// every decision stump's error strictly inside (0, ½), which is exactly
/// what boosting-loop tests need.
pub fn two_gaussians_1d(seed: u64) -> Result<Dataset> {
    const PER_CLASS: usize = 100;
    let registry = Arc::new(ClassRegistry::new(vec!["neg".into(), "pos".into()])?);
    let mut rows = Vec::with_capacity(2 * PER_CLASS);
    let mut labels = Vec::with_capacity(2 * PER_CLASS);
    for c in 0..2usize {
        let center = if c == 0 { -1.0 } else { 1.0 };
        let mut rng = SplitMix64::new(derive_seed(seed, c as u64));
        for _ in 0..PER_CLASS {
            rows.push(vec![center + rng.next_gaussian()]);
            labels.push(ClassLabel::new(c));
        }
    }
    Dataset::from_rows(rows, labels, registry)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blobs_have_the_documented_shape() {
        let (train, test) = gaussian_blobs(42).unwrap();
        assert_eq!(train.len(), 600);
        assert_eq!(test.len(), 300);
        assert_eq!(train.dim(), 2);
        assert_eq!(test.dim(), 2);
        assert_eq!(train.class_counts(), vec![200, 200, 200]);
        assert_eq!(test.class_counts(), vec![100, 100, 100]);
        assert_eq!(train.registry().names(), test.registry().names());
    }

    #[test]
    fn blobs_cluster_near_their_centers() {
        let (train, _) = gaussian_blobs(42).unwrap();
        let centers = [(0.0, 0.0), (5.0, 5.0), (0.0, 5.0)];
        let mut sums = [(0.0, 0.0); 3];
        let mut counts = [0usize; 3];
        for (row, label) in train.iter() {
            sums[label.index()].0 += row[0];
            sums[label.index()].1 += row[1];
            counts[label.index()] += 1;
        }
        for c in 0..3 {
            let mx = sums[c].0 / counts[c] as f64;
            let my = sums[c].1 / counts[c] as f64;
            // sample mean of 200 unit-variance draws: ~0.07 standard error
            assert!((mx - centers[c].0).abs() < 0.35, "class {c} mean x {mx}");
            assert!((my - centers[c].1).abs() < 0.35, "class {c} mean y {my}");
        }
    }

    #[test]
    fn blobs_are_deterministic_and_seed_sensitive() {
        let (a, _) = gaussian_blobs(42).unwrap();
        let (b, _) = gaussian_blobs(42).unwrap();
        for i in 0..a.len() {
            assert_eq!(a.row(i), b.row(i));
        }
        let (c, _) = gaussian_blobs(43).unwrap();
        assert_ne!(a.row(0), c.row(0));
    }

    #[test]
    fn one_dimensional_pair_overlaps() {
        let ds = two_gaussians_1d(7).unwrap();
        assert_eq!(ds.len(), 200);
        assert_eq!(ds.dim(), 1);
        assert_eq!(ds.class_counts(), vec![100, 100]);
        // overlap: the max of class 0 exceeds the min of class 1
        let max_neg = (0..ds.len())
            .filter(|&i| ds.label(i).index() == 0)
            .map(|i| ds.row(i)[0])
            .fold(f64::NEG_INFINITY, f64::max);
        let min_pos = (0..ds.len())
            .filter(|&i| ds.label(i).index() == 1)
            .map(|i| ds.row(i)[0])
            .fold(f64::INFINITY, f64::min);
        assert!(
            max_neg > min_pos,
            "classes unexpectedly separable: max_neg {max_neg}, min_pos {min_pos}"
        );
    }
}
