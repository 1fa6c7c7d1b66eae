//! Labeled datasets and the types shared by every ensemble.

use std::sync::Arc;

use crate::error::{Error, Result};

/// A class label: an index into a [`ClassRegistry`].
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassLabel(usize);

impl ClassLabel {
    pub fn new(index: usize) -> Self {
        Self(index)
    }

    pub fn index(self) -> usize {
        self.0
    }
}

/// Ordered set of class names. The position of a name is its class index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassRegistry {
    names: Vec<String>,
}

impl ClassRegistry {
    /// Build a registry from class names in index order.
    /// Names must be unique and nonempty.
    pub fn new(names: Vec<String>) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::InvalidParameter("class registry is empty".into()));
        }
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::InvalidParameter(format!("class {i} has an empty name")));
            }
            if names[..i].contains(name) {
                return Err(Error::InvalidParameter(format!("duplicate class name '{name}'")));
            }
        }
        Ok(Self { names })
    }

    /// Number of classes K.
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, label: ClassLabel) -> &str {
        &self.names[label.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<ClassLabel> {
        self.names.iter().position(|n| n == name).map(ClassLabel)
    }

    pub fn labels(&self) -> impl Iterator<Item = ClassLabel> {
        (0..self.names.len()).map(ClassLabel)
    }
}

/// A fixed-dimension vector of finite feature values.
#[derive(Clone, Debug, PartialEq)]
pub struct FeatureVector {
    values: Vec<f64>,
}

impl FeatureVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidParameter("feature vector is empty".into()));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "feature value at position {i} is not finite"
            )));
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

impl AsRef<[f64]> for FeatureVector {
    fn as_ref(&self) -> &[f64] {
        &self.values
    }
}

/// An ordered collection of (feature vector, label) pairs with a shared
/// class registry. Feature rows are stored flat, `dim` values per sample.
#[derive(Clone, Debug)]
pub struct Dataset {
    features: Vec<f64>,
    labels: Vec<ClassLabel>,
    dim: usize,
    registry: Arc<ClassRegistry>,
}

impl Dataset {
    /// Build a dataset from flat row-major features and per-sample labels.
    pub fn from_parts(
        features: Vec<f64>,
        labels: Vec<ClassLabel>,
        dim: usize,
        registry: Arc<ClassRegistry>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter("feature dimension must be at least 1".into()));
        }
        if labels.is_empty() {
            return Err(Error::InvalidParameter("dataset has no samples".into()));
        }
        if features.len() != labels.len() * dim {
            return Err(Error::InvalidParameter(format!(
                "feature buffer length {} does not match {} samples x {} features",
                features.len(),
                labels.len(),
                dim
            )));
        }
        if let Some(i) = features.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "sample {}: feature {} is not finite",
                i / dim,
                i % dim
            )));
        }
        if let Some(bad) = labels.iter().find(|l| l.index() >= registry.len()) {
            return Err(Error::InvalidParameter(format!(
                "label index {} out of range for {} classes",
                bad.index(),
                registry.len()
            )));
        }
        Ok(Self { features, labels, dim, registry })
    }

    /// Convenience constructor from per-sample rows.
    pub fn from_rows(
        rows: Vec<Vec<f64>>,
        labels: Vec<ClassLabel>,
        registry: Arc<ClassRegistry>,
    ) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::InvalidParameter("dataset has no samples".into()));
        }
        let dim = rows[0].len();
        for (i, r) in rows.iter().enumerate() {
            if r.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: r.len() });
            }
            let _ = i;
        }
        let features = rows.into_iter().flatten().collect();
        Self::from_parts(features, labels, dim, registry)
    }

    /// Sample count n.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Feature dimensionality d.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of classes K in the registry.
    pub fn num_classes(&self) -> usize {
        self.registry.len()
    }

    pub fn registry(&self) -> &Arc<ClassRegistry> {
        &self.registry
    }

    /// Feature row of sample `i`.
    pub fn row(&self, i: usize) -> &[f64] {
        &self.features[i * self.dim..(i + 1) * self.dim]
    }

    pub fn label(&self, i: usize) -> ClassLabel {
        self.labels[i]
    }

    pub fn labels(&self) -> &[ClassLabel] {
        &self.labels
    }

    /// Iterate (row, label) pairs in order.
    pub fn iter(&self) -> impl Iterator<Item = (&[f64], ClassLabel)> {
        self.features.chunks_exact(self.dim).zip(self.labels.iter().copied())
    }

    /// New dataset holding the samples at `indices`, in that order.
    /// Indices may repeat; the registry is shared with `self`.
    pub fn select(&self, indices: &[usize]) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::InvalidParameter("selection is empty".into()));
        }
        let mut features = Vec::with_capacity(indices.len() * self.dim);
        let mut labels = Vec::with_capacity(indices.len());
        for &i in indices {
            if i >= self.len() {
                return Err(Error::InvalidParameter(format!(
                    "sample index {i} out of range for {} samples",
                    self.len()
                )));
            }
            features.extend_from_slice(self.row(i));
            labels.push(self.labels[i]);
        }
        Self::from_parts(features, labels, self.dim, Arc::clone(&self.registry))
    }

    /// Per-class sample counts, indexed by class.
    pub fn class_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.registry.len()];
        for l in &self.labels {
            counts[l.index()] += 1;
        }
        counts
    }
}

/// Nonnegative per-sample weights summing to 1.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleWeights {
    w: Vec<f64>,
}

impl SampleWeights {
    /// Uniform weights 1/n.
    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("weight vector must be nonempty".into()));
        }
        Ok(Self { w: vec![1.0 / n as f64; n] })
    }

    /// Wrap an already-normalized weight vector. The sum must be within
    /// 1e-6 of 1 and every entry nonnegative and finite.
    pub fn new(w: Vec<f64>) -> Result<Self> {
        if w.is_empty() {
            return Err(Error::InvalidParameter("weight vector must be nonempty".into()));
        }
        if let Some(i) = w.iter().position(|x| !x.is_finite() || *x < 0.0) {
            return Err(Error::InvalidParameter(format!(
                "weight {i} is negative or not finite"
            )));
        }
        let sum: f64 = w.iter().sum();
        if (sum - 1.0).abs() > 1e-6 {
            return Err(Error::InvalidParameter(format!(
                "weights sum to {sum}, expected 1 within 1e-6"
            )));
        }
        Ok(Self { w })
    }

    /// Normalize an arbitrary nonnegative vector to sum 1.
    pub fn normalized(raw: Vec<f64>) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::InvalidParameter("weight vector must be nonempty".into()));
        }
        if let Some(i) = raw.iter().position(|x| !x.is_finite() || *x < 0.0) {
            return Err(Error::InvalidParameter(format!(
                "weight {i} is negative or not finite"
            )));
        }
        let sum: f64 = raw.iter().sum();
        if sum <= 0.0 {
            return Err(Error::InvalidParameter("weights sum to zero".into()));
        }
        Ok(Self { w: raw.into_iter().map(|x| x / sum).collect() })
    }

    pub fn values(&self) -> &[f64] {
        &self.w
    }

    pub fn len(&self) -> usize {
        self.w.len()
    }

    pub fn is_empty(&self) -> bool {
        self.w.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.w.iter().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn registry(names: &[&str]) -> Arc<ClassRegistry> {
        Arc::new(ClassRegistry::new(names.iter().map(|s| s.to_string()).collect()).unwrap())
    }

    #[test]
    fn registry_rejects_duplicates_and_empty_names() {
        assert!(ClassRegistry::new(vec!["a".into(), "a".into()]).is_err());
        assert!(ClassRegistry::new(vec!["a".into(), "".into()]).is_err());
        assert!(ClassRegistry::new(vec![]).is_err());
    }

    #[test]
    fn registry_lookup() {
        let r = registry(&["healthy", "pod_borer"]);
        assert_eq!(r.len(), 2);
        assert_eq!(r.index_of("pod_borer"), Some(ClassLabel::new(1)));
        assert_eq!(r.index_of("nope"), None);
        assert_eq!(r.name(ClassLabel::new(0)), "healthy");
    }

    #[test]
    fn feature_vector_rejects_nan() {
        assert!(FeatureVector::new(vec![1.0, f64::NAN]).is_err());
        assert!(FeatureVector::new(vec![f64::INFINITY]).is_err());
        assert!(FeatureVector::new(vec![]).is_err());
        assert!(FeatureVector::new(vec![0.5]).is_ok());
    }

    #[test]
    fn dataset_shape_checks() {
        let r = registry(&["a", "b"]);
        let ds = Dataset::from_rows(
            vec![vec![1.0, 2.0], vec![3.0, 4.0]],
            vec![ClassLabel::new(0), ClassLabel::new(1)],
            Arc::clone(&r),
        )
        .unwrap();
        assert_eq!(ds.len(), 2);
        assert_eq!(ds.dim(), 2);
        assert_eq!(ds.row(1), &[3.0, 4.0]);
        assert_eq!(ds.class_counts(), vec![1, 1]);

        // ragged rows
        assert!(Dataset::from_rows(
            vec![vec![1.0, 2.0], vec![3.0]],
            vec![ClassLabel::new(0), ClassLabel::new(1)],
            Arc::clone(&r),
        )
        .is_err());

        // label out of range
        assert!(Dataset::from_rows(
            vec![vec![1.0]],
            vec![ClassLabel::new(7)],
            Arc::clone(&r),
        )
        .is_err());
    }

    #[test]
    fn select_allows_repeats_and_shares_registry() {
        let r = registry(&["a", "b"]);
        let ds = Dataset::from_rows(
            vec![vec![1.0], vec![2.0]],
            vec![ClassLabel::new(0), ClassLabel::new(1)],
            r,
        )
        .unwrap();
        let sel = ds.select(&[1, 1, 0]).unwrap();
        assert_eq!(sel.len(), 3);
        assert_eq!(sel.row(0), &[2.0]);
        assert_eq!(sel.row(2), &[1.0]);
        assert!(Arc::ptr_eq(ds.registry(), sel.registry()));
    }

    #[test]
    fn weights_uniform_and_validation() {
        let w = SampleWeights::uniform(4).unwrap();
        assert_eq!(w.values(), &[0.25; 4]);
        assert!((w.sum() - 1.0).abs() < 1e-12);
        assert!(SampleWeights::new(vec![0.5, 0.6]).is_err());
        assert!(SampleWeights::new(vec![-0.5, 1.5]).is_err());
        let n = SampleWeights::normalized(vec![2.0, 2.0]).unwrap();
        assert_eq!(n.values(), &[0.5, 0.5]);
        assert!(SampleWeights::normalized(vec![0.0, 0.0]).is_err());
    }
}
