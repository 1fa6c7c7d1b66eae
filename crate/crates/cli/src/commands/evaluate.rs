//! `ensemblekit evaluate` — score a saved model on a labeled CSV.
//!
//! Outputs: `report.txt` (aligned table), `report.json` (full precision),
//! `confusion_matrix.csv` and `confusion_matrix.svg` (heatmap). Rows of the
//! matrix are true classes, columns are predictions.

use std::path::Path;

use ensemblekit::csv::load_feature_csv;
use ensemblekit::dataset::Dataset;
use ensemblekit::metrics::render::{
    render_confusion_csv, render_confusion_svg, render_report_json, render_report_text,
};
use ensemblekit::metrics::ConfusionMatrix;

use crate::archive::{self, EnsembleModel};
use crate::config::LoadedConfig;
use crate::error::CliError;

use super::{create_dir, remap_to_registry, require, write_text};

pub fn run(ctx: &LoadedConfig) -> Result<(), CliError> {
    let cfg = &ctx.cfg;
    let out = require(&cfg.out, "output directory")?.clone();
    let archive_path = require(&cfg.data.archive, "data.archive")?;
    let test_path = require(&cfg.data.test, "data.test")?;

    let model = archive::load_model(archive_path)?;
    let raw = load_feature_csv(test_path)?;
    let test = remap_to_registry(&raw, model.registry())?;

    let cm = evaluate_model(&model, &test)?;
    create_dir(&out)?;
    write_evaluation(&out, &cm)?;

    println!(
        "evaluated {} on {} samples: accuracy {:.4} -> {}",
        model.method().name(),
        test.len(),
        cm.accuracy(),
        out.display()
    );
    Ok(())
}

/// Predict a labeled dataset and tally the confusion matrix. Shared with
/// `compare`.
pub fn evaluate_model(model: &EnsembleModel, test: &Dataset) -> Result<ConfusionMatrix, CliError> {
    let predictions = model.predict_dataset(test)?;
    ConfusionMatrix::from_labels(test.labels(), &predictions, model.registry().clone())
        .map_err(CliError::from)
}

/// Write the four evaluation artifacts into `dir`. Shared with `compare`.
pub fn write_evaluation(dir: &Path, cm: &ConfusionMatrix) -> Result<(), CliError> {
    let report = cm.classification_report();
    write_text(&dir.join("report.txt"), &render_report_text(&report))?;
    write_text(&dir.join("report.json"), &render_report_json(&report))?;
    write_text(&dir.join("confusion_matrix.csv"), &render_confusion_csv(cm))?;
    write_text(&dir.join("confusion_matrix.svg"), &render_confusion_svg(cm))?;
    Ok(())
}
