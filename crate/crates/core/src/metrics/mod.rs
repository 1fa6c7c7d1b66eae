//! Confusion matrix, accuracy, per-class precision/recall/F1 and report
//! assembly.
//!
//! One orientation rule everywhere: **rows are true classes, columns are
//! predicted classes**. Degenerate ratios (0/0) are defined as 0 rather
//! than NaN so reports stay totally ordered and serializable; that
//! convention applies to precision (class never predicted), recall (class
//! never present) and F1 (both zero).

pub mod render;

use crate::dataset::{ClassLabel, ClassRegistry};
use crate::error::{Error, Result};
use serde::Serialize;
use std::sync::Arc;

/// K×K count matrix, rows = true class, columns = predicted class.
#[derive(Clone, Debug, PartialEq)]
pub struct ConfusionMatrix {
    counts: Vec<u64>,
    registry: Arc<ClassRegistry>,
}

impl ConfusionMatrix {
    /// Tally predictions against ground truth. Both lists must be nonempty,
    /// equal-length, and refer to classes in the registry.
    pub fn from_labels(
        y_true: &[ClassLabel],
        y_pred: &[ClassLabel],
        registry: Arc<ClassRegistry>,
    ) -> Result<Self> {
        if y_true.len() != y_pred.len() {
            return Err(Error::DimensionMismatch { expected: y_true.len(), found: y_pred.len() });
        }
        if y_true.is_empty() {
            return Err(Error::InvalidParameter(
                "cannot build a confusion matrix from zero samples".into(),
            ));
        }
        let k = registry.len();
        let mut counts = vec![0u64; k * k];
        for (t, p) in y_true.iter().zip(y_pred) {
            if t.index() >= k || p.index() >= k {
                return Err(Error::InvalidParameter(format!(
                    "label index {} out of range for {k} classes",
                    t.index().max(p.index())
                )));
            }
            counts[t.index() * k + p.index()] += 1;
        }
        Ok(Self { counts, registry })
    }

    /// Build from a pre-tallied matrix (rows = true class). Must be square,
    /// match the registry, and count at least one sample.
    pub fn from_counts(rows: Vec<Vec<u64>>, registry: Arc<ClassRegistry>) -> Result<Self> {
        let k = registry.len();
        if rows.len() != k {
            return Err(Error::DimensionMismatch { expected: k, found: rows.len() });
        }
        let mut counts = Vec::with_capacity(k * k);
        for row in &rows {
            if row.len() != k {
                return Err(Error::DimensionMismatch { expected: k, found: row.len() });
            }
            counts.extend_from_slice(row);
        }
        if counts.iter().sum::<u64>() == 0 {
            return Err(Error::InvalidParameter("confusion matrix counts no samples".into()));
        }
        Ok(Self { counts, registry })
    }

    pub fn num_classes(&self) -> usize {
        self.registry.len()
    }

    pub fn registry(&self) -> &Arc<ClassRegistry> {
        &self.registry
    }

    /// Samples with true class `t` predicted as class `p`.
    pub fn count(&self, t: usize, p: usize) -> u64 {
        self.counts[t * self.registry.len() + p]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn trace(&self) -> u64 {
        let k = self.registry.len();
        (0..k).map(|c| self.counts[c * k + c]).sum()
    }

    /// Number of samples whose true class is `c` (the class's support).
    pub fn row_sum(&self, c: usize) -> u64 {
        let k = self.registry.len();
        self.counts[c * k..(c + 1) * k].iter().sum()
    }

    /// Number of samples predicted as class `c`.
    pub fn col_sum(&self, c: usize) -> u64 {
        let k = self.registry.len();
        (0..k).map(|t| self.counts[t * k + c]).sum()
    }

    /// Correct predictions over total — guaranteed well-defined because
    /// construction rejects empty matrices.
    pub fn accuracy(&self) -> f64 {
        self.trace() as f64 / self.total() as f64
    }

    /// (precision, recall, F1) for one class, one-vs-rest, 0/0 → 0.
    pub fn per_class_prf(&self, c: usize) -> (f64, f64, f64) {
        let tp = self.count(c, c);
        let fp = self.col_sum(c) - tp;
        let fn_ = self.row_sum(c) - tp;
        let precision = ratio_or_zero(tp as f64, (tp + fp) as f64);
        let recall = ratio_or_zero(tp as f64, (tp + fn_) as f64);
        let f1 = if precision + recall == 0.0 {
            0.0
        } else {
            2.0 * precision * recall / (precision + recall)
        };
        (precision, recall, f1)
    }

    /// Full report: per-class rows plus macro (unweighted mean over all
    /// classes) and weighted (support-weighted mean) averages.
    pub fn classification_report(&self) -> ClassificationReport {
        let k = self.registry.len();
        let total = self.total();
        let mut classes = Vec::with_capacity(k);
        let mut macro_sum = (0.0, 0.0, 0.0);
        let mut weighted_sum = (0.0, 0.0, 0.0);
        for c in 0..k {
            let (precision, recall, f1) = self.per_class_prf(c);
            let support = self.row_sum(c);
            macro_sum.0 += precision;
            macro_sum.1 += recall;
            macro_sum.2 += f1;
            let s = support as f64;
            weighted_sum.0 += precision * s;
            weighted_sum.1 += recall * s;
            weighted_sum.2 += f1 * s;
            classes.push(ClassMetrics {
                name: self.registry.name(ClassLabel::new(c)).to_string(),
                precision,
                recall,
                f1,
                support,
            });
        }
        let kf = k as f64;
        let tf = total as f64;
        ClassificationReport {
            accuracy: self.accuracy(),
            classes,
            macro_avg: Averages {
                precision: macro_sum.0 / kf,
                recall: macro_sum.1 / kf,
                f1: macro_sum.2 / kf,
            },
            weighted_avg: Averages {
                precision: weighted_sum.0 / tf,
                recall: weighted_sum.1 / tf,
                f1: weighted_sum.2 / tf,
            },
            total,
        }
    }
}

fn ratio_or_zero(num: f64, den: f64) -> f64 {
    if den == 0.0 {
        0.0
    } else {
        num / den
    }
}

/// One class's row of the report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassMetrics {
    pub name: String,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub support: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Averages {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

/// Serializes (JSON) in exactly this field order:
/// accuracy, classes, macro_avg, weighted_avg, total.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassificationReport {
    pub accuracy: f64,
    pub classes: Vec<ClassMetrics>,
    pub macro_avg: Averages,
    pub weighted_avg: Averages,
    pub total: u64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn registry(names: &[&str]) -> Arc<ClassRegistry> {
        Arc::new(ClassRegistry::new(names.iter().map(|s| s.to_string()).collect()).unwrap())
    }

    fn labels(ix: &[usize]) -> Vec<ClassLabel> {
        ix.iter().map(|&i| ClassLabel::new(i)).collect()
    }

    #[test]
    fn perfect_predictions_give_a_diagonal_matrix() {
        let reg = registry(&["a", "b", "c"]);
        let y = labels(&[0, 1, 2, 1, 0, 2, 2]);
        let cm = ConfusionMatrix::from_labels(&y, &y, reg).unwrap();
        assert_eq!(cm.accuracy(), 1.0);
        for c in 0..3 {
            assert_eq!(cm.count(c, c), cm.row_sum(c));
            assert_eq!(cm.per_class_prf(c), (1.0, 1.0, 1.0));
        }
        assert_eq!(cm.row_sum(2), 3);
    }

    #[test]
    fn hand_counted_three_class_example() {
        let reg = registry(&["a", "b", "c"]);
        let cm = ConfusionMatrix::from_labels(&labels(&[0, 1, 2]), &labels(&[0, 2, 2]), reg)
            .unwrap();
        assert_eq!(cm.count(0, 0), 1);
        assert_eq!(cm.count(1, 2), 1);
        assert_eq!(cm.count(2, 2), 1);
        assert_eq!(cm.total(), 3);
        assert_eq!(cm.trace(), 2);
        for (t, p) in [(0, 1), (0, 2), (1, 0), (1, 1), (2, 0), (2, 1)] {
            assert_eq!(cm.count(t, p), 0, "cell ({t},{p})");
        }
    }

    #[test]
    fn uniform_two_by_two_matrix_has_half_accuracy() {
        let reg = registry(&["x", "y"]);
        let cm = ConfusionMatrix::from_counts(vec![vec![1, 1], vec![1, 1]], reg).unwrap();
        assert_eq!(cm.accuracy(), 0.5);
    }

    #[test]
    fn prf_of_a_class_with_false_positives_only() {
        // class 0: TP=50, FP=10, FN=0 → P=5/6, R=1, F1=10/11
        let reg = registry(&["pos", "neg"]);
        let cm = ConfusionMatrix::from_counts(vec![vec![50, 0], vec![10, 40]], reg).unwrap();
        let (p, r, f1) = cm.per_class_prf(0);
        assert!((p - 5.0 / 6.0).abs() < 1e-15);
        assert_eq!(r, 1.0);
        assert!((f1 - 10.0 / 11.0).abs() < 1e-15);
    }

    #[test]
    fn absent_and_never_predicted_class_scores_zero() {
        let reg = registry(&["a", "ghost", "c"]);
        let cm = ConfusionMatrix::from_counts(
            vec![vec![5, 0, 0], vec![0, 0, 0], vec![0, 0, 5]],
            reg,
        )
        .unwrap();
        assert_eq!(cm.per_class_prf(1), (0.0, 0.0, 0.0));
        let report = cm.classification_report();
        assert_eq!(report.classes[1].support, 0);
        assert_eq!(report.classes[1].f1, 0.0);
    }

    #[test]
    fn fixed_three_class_report_matches_the_hand_computed_oracle() {
        // expected values computed independently with exact rational
        // arithmetic before this module existed; tolerance 1e-9
        let reg = registry(&["healthy", "black_pod_rot", "pod_borer"]);
        let cm = ConfusionMatrix::from_counts(
            vec![vec![298, 1, 1], vec![4, 280, 16], vec![0, 0, 300]],
            reg,
        )
        .unwrap();
        let r = cm.classification_report();
        let close = |a: f64, b: f64| (a - b).abs() < 1e-9;

        assert!(close(r.accuracy, 0.9755555555555555));
        assert!(close(r.classes[0].precision, 0.9867549668874172));
        assert!(close(r.classes[0].recall, 0.9933333333333333));
        assert!(close(r.classes[0].f1, 0.9900332225913622));
        assert!(close(r.classes[1].precision, 0.99644128113879));
        assert!(close(r.classes[1].recall, 0.9333333333333333));
        assert!(close(r.classes[1].f1, 0.963855421686747));
        assert!(close(r.classes[2].precision, 0.9463722397476341));
        assert!(close(r.classes[2].recall, 1.0));
        assert!(close(r.classes[2].f1, 0.9724473257698542));
        for c in &r.classes {
            assert_eq!(c.support, 300);
        }
        assert!(close(r.macro_avg.precision, 0.9765228292579471));
        assert!(close(r.macro_avg.recall, 0.9755555555555555));
        assert!(close(r.macro_avg.f1, 0.9754453233493211));
        assert!(close(r.weighted_avg.precision, 0.9765228292579471));
        assert!(close(r.weighted_avg.recall, 0.9755555555555555));
        assert!(close(r.weighted_avg.f1, 0.9754453233493211));
        assert_eq!(r.total, 900);
    }

    #[test]
    fn four_errors_in_nine_hundred() {
        let reg = registry(&["a", "b", "c"]);
        let cm = ConfusionMatrix::from_counts(
            vec![vec![300, 0, 0], vec![2, 297, 1], vec![0, 1, 299]],
            reg,
        )
        .unwrap();
        assert_eq!(cm.total(), 900);
        assert_eq!(cm.trace(), 896);
        assert!((cm.accuracy() - 0.9955555555555555).abs() < 1e-9);
    }

    #[test]
    fn balanced_supports_make_macro_equal_weighted() {
        let reg = registry(&["a", "b"]);
        let cm =
            ConfusionMatrix::from_counts(vec![vec![8, 2], vec![3, 7]], reg).unwrap();
        let r = cm.classification_report();
        assert!((r.macro_avg.precision - r.weighted_avg.precision).abs() < 1e-12);
        assert!((r.macro_avg.recall - r.weighted_avg.recall).abs() < 1e-12);
        assert!((r.macro_avg.f1 - r.weighted_avg.f1).abs() < 1e-12);
    }

    #[test]
    fn single_class_macro_is_that_class() {
        let reg = registry(&["only"]);
        let cm = ConfusionMatrix::from_counts(vec![vec![9]], reg).unwrap();
        let r = cm.classification_report();
        assert_eq!(
            (r.macro_avg.precision, r.macro_avg.recall, r.macro_avg.f1),
            (r.classes[0].precision, r.classes[0].recall, r.classes[0].f1)
        );
        assert_eq!(r.accuracy, 1.0);
    }

    #[test]
    fn construction_rejects_bad_shapes() {
        let reg = registry(&["a", "b"]);
        assert!(ConfusionMatrix::from_labels(&labels(&[0]), &labels(&[0, 1]), reg.clone()).is_err());
        assert!(ConfusionMatrix::from_labels(&[], &[], reg.clone()).is_err());
        assert!(ConfusionMatrix::from_labels(&labels(&[2]), &labels(&[0]), reg.clone()).is_err());
        assert!(ConfusionMatrix::from_counts(vec![vec![1, 0]], reg.clone()).is_err());
        assert!(ConfusionMatrix::from_counts(vec![vec![1], vec![0]], reg.clone()).is_err());
        assert!(ConfusionMatrix::from_counts(vec![vec![0, 0], vec![0, 0]], reg).is_err());
    }

    #[test]
    fn report_is_invariant_under_consistent_class_permutation() {
        let reg = registry(&["a", "b", "c"]);
        let rows = vec![vec![10, 2, 1], vec![0, 14, 3], vec![5, 0, 20]];
        let cm = ConfusionMatrix::from_counts(rows.clone(), reg).unwrap();
        let r1 = cm.classification_report();

        // new index i holds old class perm[i]
        let perm = [2usize, 0, 1];
        let preg = registry(&["c", "a", "b"]);
        let mut prows = vec![vec![0u64; 3]; 3];
        for nt in 0..3 {
            for np in 0..3 {
                prows[nt][np] = rows[perm[nt]][perm[np]];
            }
        }
        let pcm = ConfusionMatrix::from_counts(prows, preg).unwrap();
        let r2 = pcm.classification_report();

        assert!((r1.accuracy - r2.accuracy).abs() < 1e-15);
        assert!((r1.macro_avg.f1 - r2.macro_avg.f1).abs() < 1e-12);
        assert!((r1.macro_avg.precision - r2.macro_avg.precision).abs() < 1e-12);
        assert!((r1.weighted_avg.f1 - r2.weighted_avg.f1).abs() < 1e-12);
        for original in &r1.classes {
            let moved = r2.classes.iter().find(|m| m.name == original.name).unwrap();
            assert!((original.precision - moved.precision).abs() < 1e-15);
            assert!((original.recall - moved.recall).abs() < 1e-15);
            assert!((original.f1 - moved.f1).abs() < 1e-15);
            assert_eq!(original.support, moved.support);
        }
    }

    proptest! {
        #[test]
        fn micro_precision_equals_micro_recall_equals_accuracy(
            cells in proptest::collection::vec(0u64..40, 9),
        ) {
            prop_assume!(cells.iter().sum::<u64>() > 0);
            let reg = registry(&["a", "b", "c"]);
            let rows: Vec<Vec<u64>> = cells.chunks(3).map(|c| c.to_vec()).collect();
            let cm = ConfusionMatrix::from_counts(rows, reg).unwrap();
            // micro: pool TP, FP, FN over classes
            let tp: u64 = (0..3).map(|c| cm.count(c, c)).sum();
            let fp: u64 = (0..3).map(|c| cm.col_sum(c) - cm.count(c, c)).sum();
            let fn_: u64 = (0..3).map(|c| cm.row_sum(c) - cm.count(c, c)).sum();
            let micro_p = tp as f64 / (tp + fp) as f64;
            let micro_r = tp as f64 / (tp + fn_) as f64;
            prop_assert!((micro_p - micro_r).abs() < 1e-15);
            prop_assert!((micro_p - cm.accuracy()).abs() < 1e-15);
        }

        #[test]
        fn f1_sits_between_min_and_mean_of_p_and_r(
            cells in proptest::collection::vec(0u64..40, 4),
        ) {
            prop_assume!(cells.iter().sum::<u64>() > 0);
            let reg = registry(&["a", "b"]);
            let rows: Vec<Vec<u64>> = cells.chunks(2).map(|c| c.to_vec()).collect();
            let cm = ConfusionMatrix::from_counts(rows, reg).unwrap();
            for c in 0..2 {
                let (p, r, f1) = cm.per_class_prf(c);
                prop_assert!((0.0..=1.0).contains(&p));
                prop_assert!((0.0..=1.0).contains(&r));
                prop_assert!((0.0..=1.0).contains(&f1));
                if p + r > 0.0 {
                    // harmonic mean: min ≤ F1 ≤ max, and F1 ≤ arithmetic mean
                    prop_assert!(f1 + 1e-15 >= p.min(r));
                    prop_assert!(f1 <= p.max(r) + 1e-15);
                    prop_assert!(f1 <= (p + r) / 2.0 + 1e-15);
                }
            }
        }

        #[test]
        fn supports_sum_to_total_and_weighted_recall_is_accuracy(
            cells in proptest::collection::vec(0u64..40, 9),
        ) {
            prop_assume!(cells.iter().sum::<u64>() > 0);
            let reg = registry(&["a", "b", "c"]);
            let rows: Vec<Vec<u64>> = cells.chunks(3).map(|c| c.to_vec()).collect();
            let cm = ConfusionMatrix::from_counts(rows, reg).unwrap();
            let report = cm.classification_report();
            let support_sum: u64 = report.classes.iter().map(|c| c.support).sum();
            prop_assert_eq!(support_sum, report.total);
            prop_assert!((report.weighted_avg.recall - report.accuracy).abs() < 1e-12);
        }
    }
}
