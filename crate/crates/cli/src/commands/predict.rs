//! `ensemblekit predict` — label an unlabeled feature CSV with a trained
//! model archive.
//!
//! Output is `predictions.csv` with a single `prediction` column holding
//! class names, one row per input row, in input order.

use ensemblekit::csv::load_unlabeled_csv;

use crate::archive;
use crate::config::LoadedConfig;
use crate::error::CliError;

use super::{create_dir, require, write_text};

pub fn run(ctx: &LoadedConfig) -> Result<(), CliError> {
    let cfg = &ctx.cfg;
    let out = require(&cfg.out, "output directory")?.clone();
    let archive_path = require(&cfg.data.archive, "data.archive")?;
    let input_path = require(&cfg.data.input, "data.input")?;

    let model = archive::load_model(archive_path)?;
    let rows = load_unlabeled_csv(input_path)?;

    let mut csv = String::from("prediction\n");
    for row in &rows {
        let label = model.predict(row)?;
        csv.push_str(model.registry().name(label));
        csv.push('\n');
    }

    create_dir(&out)?;
    write_text(&out.join("predictions.csv"), &csv)?;
    println!(
        "predicted {} rows with the {} model -> {}",
        rows.len(),
        model.method().name(),
        out.join("predictions.csv").display()
    );
    Ok(())
}
