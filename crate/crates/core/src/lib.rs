//! Ensemble learning over pluggable weak learners.
//!
//! This crate implements three classic ensemble strategies on top of a small
//! set of deterministic building blocks:
//!
//! * [`bagging`] — bootstrap aggregating with majority vote,
//! * [`boosting`] — AdaBoost, both the exact binary form and the SAMME
//!   multiclass generalization,
//! * [`stacking`] — out-of-fold probability meta-features fed to a logistic
//!   regression meta-model.
//!
//! The base learners live in [`learners`]: a weighted multinomial logistic
//! regression and a weighted decision stump. Everything downstream of a seed
//! is reproducible bit for bit — the crate ships its own [`rng`] so results
//! do not float with external dependency upgrades.
//!
//! Supporting modules cover the rest of a small experiment pipeline:
//! labeled feature CSVs ([`csv`]), binary PPM image directories ([`ppm`]),
//! pixel-level preprocessing ([`image`], [`features`]), stratified splits and
//! resampling ([`split`]), evaluation ([`metrics`]) with text/JSON/CSV/SVG
//! rendering, and fixed synthetic benchmarks ([`synth`]).
//!
//! # Example
//!
//! ```
//! use ensemblekit::bagging::BaggingModel;
//! use ensemblekit::learners::LearnerSpec;
//! use ensemblekit::metrics::ConfusionMatrix;
//! use ensemblekit::synth::gaussian_blobs;
//!
//! let (train, test) = gaussian_blobs(42)?;
//! let spec = LearnerSpec::logreg(0.1, 200, 1e-4)?;
//! let model = BaggingModel::fit(&train, 6, &spec, 42)?;
//! let predicted = model.predict_dataset(&test)?;
//! let cm = ConfusionMatrix::from_labels(test.labels(), &predicted, test.registry().clone())?;
//! assert!(cm.accuracy() > 0.9);
//! # Ok::<(), ensemblekit::Error>(())
//! ```

pub mod bagging;
pub mod boosting;
pub mod csv;
pub mod dataset;
pub mod error;
pub mod features;
pub mod image;
pub mod learners;
pub mod metrics;
pub mod ppm;
pub mod rng;
pub mod split;
pub mod stacking;
pub mod svg;
pub mod synth;

pub use dataset::{ClassLabel, ClassRegistry, Dataset, FeatureVector, SampleWeights};
pub use error::{Error, Result};
