//! `ensemblekit compare` — train, evaluate and tabulate all three methods
//! on the same train/test pair.
//!
//! Each method gets its own subdirectory with the full `train` + `evaluate`
//! artifact set; the comparison itself lands in `comparison.txt`,
//! `comparison.csv` and `comparison.svg` (an accuracy bar chart). Wall
//! times are measured, reported, and — being nondeterministic — are the one
//! column exempt from byte-reproducibility.

use std::time::Instant;

use ensemblekit::csv::load_feature_csv;
use ensemblekit::svg::SvgBuilder;

use crate::archive;
use crate::config::{LoadedConfig, Method};
use crate::error::CliError;

use super::evaluate::{evaluate_model, write_evaluation};
use super::train::fit_method;
use super::{create_dir, remap_to_registry, require, write_text};

struct MethodResult {
    method: Method,
    accuracy: f64,
    macro_f1: f64,
    wall_s: f64,
}

pub fn run(ctx: &LoadedConfig) -> Result<(), CliError> {
    let cfg = &ctx.cfg;
    let out = require(&cfg.out, "output directory")?.clone();
    let train_path = require(&cfg.data.train, "data.train")?;
    let test_path = require(&cfg.data.test, "data.test")?;

    let train = load_feature_csv(train_path)?;
    let raw_test = load_feature_csv(test_path)?;
    let test = remap_to_registry(&raw_test, train.registry())?;

    create_dir(&out)?;
    let mut results = Vec::with_capacity(Method::ALL.len());
    for method in Method::ALL {
        let started = Instant::now();
        let (model, log) = fit_method(cfg, method, &train)
            .map_err(|e| CliError::Data(format!("{} failed: {e}", method.name())))?;
        let wall_s = started.elapsed().as_secs_f64();

        let subdir = out.join(method.name());
        create_dir(&subdir)?;
        let archived = archive::from_model(&model, ctx.config_hash.clone(), cfg.seed);
        archive::save(&archived, &subdir.join("model.json"))?;
        write_text(&subdir.join("training_log.csv"), &log)?;

        let cm = evaluate_model(&model, &test)
            .map_err(|e| CliError::Data(format!("{} failed: {e}", method.name())))?;
        write_evaluation(&subdir, &cm)?;

        let report = cm.classification_report();
        results.push(MethodResult {
            method,
            accuracy: report.accuracy,
            macro_f1: report.macro_avg.f1,
            wall_s,
        });
    }

    let text = comparison_text(&results);
    write_text(&out.join("comparison.txt"), &text)?;
    write_text(&out.join("comparison.csv"), &comparison_csv(&results))?;
    write_text(&out.join("comparison.svg"), &comparison_svg(&results))?;
    print!("{text}");
    Ok(())
}

fn comparison_text(rows: &[MethodResult]) -> String {
    let name_w = rows
        .iter()
        .map(|r| r.method.name().len())
        .chain(["method".len()])
        .max()
        .unwrap_or(6);
    let mut out = format!(
        "{:<name_w$}  {:>13}  {:>8}  {:>11}\n",
        "method", "test_accuracy", "macro_f1", "wall_time_s"
    );
    for r in rows {
        out.push_str(&format!(
            "{:<name_w$}  {:>13.4}  {:>8.4}  {:>11.3}\n",
            r.method.name(),
            r.accuracy,
            r.macro_f1,
            r.wall_s
        ));
    }
    out
}

fn comparison_csv(rows: &[MethodResult]) -> String {
    let mut out = String::from("method,test_accuracy,macro_f1,wall_time_s\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{:.3}\n",
            r.method.name(),
            r.accuracy,
            r.macro_f1,
            r.wall_s
        ));
    }
    out
}

/// Accuracy bar chart. Deliberately excludes wall times so the graphic is a
/// pure function of the classification results.
fn comparison_svg(rows: &[MethodResult]) -> String {
    let bar_w = 90i64;
    let gap = 30i64;
    let left = 70i64;
    let top = 40i64;
    let plot_h = 220i64;
    let n = rows.len() as i64;
    let width = left + 20 + n * (bar_w + gap) - gap + 20;
    let height = top + plot_h + 40;

    let mut svg = SvgBuilder::new(width, height);
    svg.rect(0, 0, width, height, "#ffffff");
    svg.text(left + (width - left) / 2, 22, 14, "middle", "#333333", "test accuracy");
    svg.line(left, top, left, top + plot_h, "#333333");
    svg.line(left, top + plot_h, width - 20, top + plot_h, "#333333");
    for (offset, label) in [(0i64, "1.0"), (plot_h / 2, "0.5"), (plot_h, "0.0")] {
        svg.line(left - 4, top + offset, left, top + offset, "#333333");
        svg.text(left - 8, top + offset + 4, 11, "end", "#333333", label);
    }
    for (i, r) in rows.iter().enumerate() {
        let x = left + 20 + i as i64 * (bar_w + gap);
        let h = (r.accuracy * plot_h as f64).round() as i64;
        svg.rect(x, top + plot_h - h, bar_w, h, "#4485c8");
        svg.text(
            x + bar_w / 2,
            top + plot_h - h - 6,
            12,
            "middle",
            "#222222",
            &format!("{:.4}", r.accuracy),
        );
        svg.text(x + bar_w / 2, top + plot_h + 18, 12, "middle", "#333333", r.method.name());
    }
    svg.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_rows() -> Vec<MethodResult> {
        vec![
            MethodResult { method: Method::Bagging, accuracy: 1.0, macro_f1: 1.0, wall_s: 0.0123 },
            MethodResult {
                method: Method::Boosting,
                accuracy: 0.9666666666666667,
                macro_f1: 0.9665,
                wall_s: 0.5,
            },
            MethodResult { method: Method::Stacking, accuracy: 0.92, macro_f1: 0.9195, wall_s: 2.0 },
        ]
    }

    #[test]
    fn csv_has_header_and_three_data_rows() {
        let csv = comparison_csv(&sample_rows());
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[0], "method,test_accuracy,macro_f1,wall_time_s");
        assert!(lines[1].starts_with("bagging,1,"));
        assert!(lines[2].starts_with("boosting,0.9666666666666667,"));
        assert!(lines[3].starts_with("stacking,0.92,"));
    }

    #[test]
    fn text_table_rows_align() {
        let text = comparison_text(&sample_rows());
        let widths: Vec<usize> = text.lines().map(str::len).collect();
        assert_eq!(widths.len(), 4);
        assert!(widths.windows(2).all(|w| w[0] == w[1]), "ragged table: {text}");
        assert!(text.contains("0.9667"));
    }

    #[test]
    fn svg_excludes_wall_time_and_is_deterministic() {
        let a = comparison_svg(&sample_rows());
        let mut faster = sample_rows();
        for r in &mut faster {
            r.wall_s *= 17.0;
        }
        let b = comparison_svg(&faster);
        assert_eq!(a, b, "bar chart must not depend on wall time");
        assert!(a.contains("bagging"));
        assert!(a.contains("0.9667"));
    }
}
