//! Weighted multinomial logistic regression.
//!
//! Trained by full-batch gradient descent on the weighted softmax
//! cross-entropy
//!
//! ```text
//! L(W, b) = −Σ_i w_i · ln p(y_i | x_i)  +  (l2/2) · ‖W‖²
//! ```
//!
//! with L2 applied to the weight matrix only, never the biases. Parameters
//! start at zero and take exactly `epochs` fixed-step updates, so a fit is a
//! pure function of its inputs — no PRNG, no early stopping, no line search.

use super::{argmax, ProbabilityDistribution};
use crate::dataset::{ClassLabel, ClassRegistry, Dataset, SampleWeights};
use crate::error::{Error, Result};
use std::sync::Arc;

/// Softmax model: `K×d` weight matrix (class-major, row per class) plus a
/// `K`-vector of biases.
#[derive(Clone, Debug)]
pub struct LogRegModel {
    weights: Vec<f64>,
    biases: Vec<f64>,
    dim: usize,
    registry: Arc<ClassRegistry>,
}

impl LogRegModel {
    /// Assemble a model from raw parameters (used by deserialization and by
    /// tests that pin exact logits). Shapes and finiteness are checked.
    pub fn from_parts(
        weights: Vec<f64>,
        biases: Vec<f64>,
        dim: usize,
        registry: Arc<ClassRegistry>,
    ) -> Result<Self> {
        let k = registry.len();
        if dim == 0 {
            return Err(Error::InvalidParameter("feature dimension must be at least 1".into()));
        }
        if weights.len() != k * dim {
            return Err(Error::DimensionMismatch { expected: k * dim, found: weights.len() });
        }
        if biases.len() != k {
            return Err(Error::DimensionMismatch { expected: k, found: biases.len() });
        }
        if weights.iter().chain(biases.iter()).any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("model parameters must be finite".into()));
        }
        Ok(Self { weights, biases, dim, registry })
    }

    /// Gradient descent from zero for `epochs` steps of size `learning_rate`.
    ///
    /// The seed is accepted for interface stability but unused: zero
    /// initialization plus deterministic full-batch updates need no
    /// randomness.
    pub fn fit(
        ds: &Dataset,
        weights: &SampleWeights,
        learning_rate: f64,
        epochs: usize,
        l2: f64,
        _seed: u64,
    ) -> Result<Self> {
        if weights.len() != ds.len() {
            return Err(Error::DimensionMismatch { expected: ds.len(), found: weights.len() });
        }
        let k = ds.num_classes();
        let d = ds.dim();
        let mut w = vec![0.0; k * d];
        let mut b = vec![0.0; k];
        for _ in 0..epochs {
            let (_, gw, gb) = loss_and_gradient_on(ds, weights, &w, &b, l2);
            for (wi, gi) in w.iter_mut().zip(&gw) {
                *wi -= learning_rate * gi;
            }
            for (bi, gi) in b.iter_mut().zip(&gb) {
                *bi -= learning_rate * gi;
            }
        }
        if w.iter().chain(b.iter()).any(|v| !v.is_finite()) {
            return Err(Error::Training(format!(
                "logistic regression diverged (learning_rate {learning_rate} too large for this data)"
            )));
        }
        Ok(Self { weights: w, biases: b, dim: d, registry: ds.registry().clone() })
    }

    pub fn feature_dim(&self) -> usize {
        self.dim
    }

    pub fn registry(&self) -> &Arc<ClassRegistry> {
        &self.registry
    }

    /// Flat `K×d` weight matrix, class-major.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn biases(&self) -> &[f64] {
        &self.biases
    }

    fn logits(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: x.len() });
        }
        let k = self.registry.len();
        let mut z = Vec::with_capacity(k);
        for c in 0..k {
            let row = &self.weights[c * self.dim..(c + 1) * self.dim];
            let mut acc = self.biases[c];
            for (wj, xj) in row.iter().zip(x) {
                acc += wj * xj;
            }
            z.push(acc);
        }
        Ok(z)
    }

    /// `softmax(Wx + b)`, computed with max-subtraction so large logits
    /// cannot overflow.
    pub fn predict_proba(&self, x: &[f64]) -> Result<ProbabilityDistribution> {
        let mut z = self.logits(x)?;
        softmax_in_place(&mut z);
        ProbabilityDistribution::new(z)
    }

    pub fn predict_label(&self, x: &[f64]) -> Result<ClassLabel> {
        Ok(ClassLabel::new(argmax(&self.logits(x)?)))
    }
}

fn softmax_in_place(z: &mut [f64]) {
    let max = z.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mut sum = 0.0;
    for v in z.iter_mut() {
        *v = (*v - max).exp();
        sum += *v;
    }
    for v in z.iter_mut() {
        *v /= sum;
    }
}

/// Weighted softmax cross-entropy and its gradient at the given parameters
/// (`w` flat `K×d` class-major, `b` length `K`). Returns
/// `(loss, grad_w, grad_b)`.
///
/// Public so the analytic gradient can be checked against finite
/// differences without reaching into training internals.
pub fn loss_and_gradient(
    ds: &Dataset,
    sample_weights: &SampleWeights,
    w: &[f64],
    b: &[f64],
    l2: f64,
) -> Result<(f64, Vec<f64>, Vec<f64>)> {
    let k = ds.num_classes();
    let d = ds.dim();
    if w.len() != k * d {
        return Err(Error::DimensionMismatch { expected: k * d, found: w.len() });
    }
    if b.len() != k {
        return Err(Error::DimensionMismatch { expected: k, found: b.len() });
    }
    if sample_weights.len() != ds.len() {
        return Err(Error::DimensionMismatch { expected: ds.len(), found: sample_weights.len() });
    }
    Ok(loss_and_gradient_on(ds, sample_weights, w, b, l2))
}

fn loss_and_gradient_on(
    ds: &Dataset,
    sample_weights: &SampleWeights,
    w: &[f64],
    b: &[f64],
    l2: f64,
) -> (f64, Vec<f64>, Vec<f64>) {
    let k = ds.num_classes();
    let d = ds.dim();
    let mut loss = 0.0;
    let mut gw = vec![0.0; k * d];
    let mut gb = vec![0.0; k];
    let mut z = vec![0.0; k];

    for (i, (x, y)) in ds.iter().enumerate() {
        let wi = sample_weights.values()[i];
        for c in 0..k {
            let row = &w[c * d..(c + 1) * d];
            let mut acc = b[c];
            for (wj, xj) in row.iter().zip(x) {
                acc += wj * xj;
            }
            z[c] = acc;
        }
        softmax_in_place(&mut z);
        loss -= wi * z[y.index()].ln();
        for c in 0..k {
            let residual = wi * (z[c] - if c == y.index() { 1.0 } else { 0.0 });
            gb[c] += residual;
            let grow = &mut gw[c * d..(c + 1) * d];
            for (g, xj) in grow.iter_mut().zip(x) {
                *g += residual * xj;
            }
        }
    }

    if l2 > 0.0 {
        let mut sq = 0.0;
        for (g, wj) in gw.iter_mut().zip(w) {
            sq += wj * wj;
            *g += l2 * wj;
        }
        loss += 0.5 * l2 * sq;
    }
    (loss, gw, gb)
}

/// A step size guaranteed to keep full-batch descent monotone on `ds`.
///
/// The weighted softmax cross-entropy has gradient-Lipschitz constant at
/// most `½·max_i(1 + ‖x_i‖²) + l2` (the `1` accounts for the bias input;
/// sample weights sum to 1), and gradient descent with a step no larger
/// than the reciprocal of that constant never increases the loss.
pub fn stable_learning_rate(ds: &Dataset, l2: f64) -> f64 {
    let mut max_sq = 0.0_f64;
    for (x, _) in ds.iter() {
        let sq: f64 = x.iter().map(|v| v * v).sum();
        max_sq = max_sq.max(sq);
    }
    1.0 / (0.5 * (1.0 + max_sq) + l2)
}
