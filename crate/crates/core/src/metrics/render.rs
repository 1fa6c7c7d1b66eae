//! Report and confusion-matrix serialization: aligned text, canonical JSON,
//! CSV, and an SVG heatmap.
//!
//! Human-readable output rounds to 4 decimal places; machine output keeps
//! full precision (shortest round-trip decimal form). Every byte of every
//! format is a pure function of the input, so all four renderers are safe
//! for golden-file tests.

use super::{ClassificationReport, ConfusionMatrix};
use crate::dataset::ClassLabel;
use crate::svg::SvgBuilder;

/// Aligned plain-text classification report, 4 decimals.
pub fn render_report_text(report: &ClassificationReport) -> String {
    let name_width = report
        .classes
        .iter()
        .map(|c| c.name.len())
        .chain(["weighted avg".len(), "accuracy".len()])
        .max()
        .unwrap_or(0);

    let mut out = String::new();
    out.push_str(&format!(
        "{:>name_width$}  {:>9}  {:>9}  {:>9}  {:>9}\n\n",
        "", "precision", "recall", "f1-score", "support"
    ));
    for c in &report.classes {
        out.push_str(&format!(
            "{:>name_width$}  {:>9.4}  {:>9.4}  {:>9.4}  {:>9}\n",
            c.name, c.precision, c.recall, c.f1, c.support
        ));
    }
    out.push('\n');
    out.push_str(&format!(
        "{:>name_width$}  {:>9}  {:>9}  {:>9.4}  {:>9}\n",
        "accuracy", "", "", report.accuracy, report.total
    ));
    out.push_str(&format!(
        "{:>name_width$}  {:>9.4}  {:>9.4}  {:>9.4}  {:>9}\n",
        "macro avg",
        report.macro_avg.precision,
        report.macro_avg.recall,
        report.macro_avg.f1,
        report.total
    ));
    out.push_str(&format!(
        "{:>name_width$}  {:>9.4}  {:>9.4}  {:>9.4}  {:>9}\n",
        "weighted avg",
        report.weighted_avg.precision,
        report.weighted_avg.recall,
        report.weighted_avg.f1,
        report.total
    ));
    out
}

/// Machine-readable report. Key order is fixed by the struct definition:
/// accuracy, classes, macro_avg, weighted_avg, total; floats carry full
/// round-trip precision.
pub fn render_report_json(report: &ClassificationReport) -> String {
    let mut s = serde_json::to_string_pretty(report)
        .expect("a report serializes infallibly: no maps, no non-finite values");
    s.push('\n');
    s
}

fn escape_csv(field: &str) -> String {
    if field.contains(',') || field.contains('"') || field.contains('\n') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

/// Confusion matrix as CSV: header row of predicted-class names, then one
/// row per true class.
pub fn render_confusion_csv(cm: &ConfusionMatrix) -> String {
    let k = cm.num_classes();
    let mut out = String::from("true\\predicted");
    for p in 0..k {
        out.push(',');
        out.push_str(&escape_csv(cm.registry().name(ClassLabel::new(p))));
    }
    out.push('\n');
    for t in 0..k {
        out.push_str(&escape_csv(cm.registry().name(ClassLabel::new(t))));
        for p in 0..k {
            out.push_str(&format!(",{}", cm.count(t, p)));
        }
        out.push('\n');
    }
    out
}

/// White-to-blue heatmap cell color, scaled by the largest cell.
fn heat_color(count: u64, max: u64) -> (String, bool) {
    let t = count as f64 / max as f64; // max ≥ 1: construction rejects empty matrices
    let channel = |full: f64| (255.0 - t * full).round() as u8;
    let (r, g, b) = (channel(187.0), channel(122.0), channel(55.0));
    (format!("#{r:02x}{g:02x}{b:02x}"), t > 0.55)
}

/// Confusion matrix as a standalone SVG heatmap: one shaded square per
/// cell with its count, class names on both axes.
pub fn render_confusion_svg(cm: &ConfusionMatrix) -> String {
    let k = cm.num_classes() as i64;
    let cell = 64i64;
    let left = 150i64;
    let top = 96i64;
    let pad = 16i64;
    let width = left + k * cell + pad;
    let height = top + k * cell + pad + 24;
    let max = (0..k).flat_map(|t| (0..k).map(move |p| (t, p)))
        .map(|(t, p)| cm.count(t as usize, p as usize))
        .max()
        .unwrap_or(1)
        .max(1);

    let mut svg = SvgBuilder::new(width, height);
    svg.rect(0, 0, width, height, "#ffffff");
    svg.text(left + k * cell / 2, 24, 14, "middle", "#333333", "predicted");
    svg.text_rotated(20, top + k * cell / 2, 14, "middle", "#333333", -90, "true");

    for p in 0..k {
        svg.text_rotated(
            left + p * cell + cell / 2,
            top - 10,
            12,
            "start",
            "#333333",
            -40,
            cm.registry().name(ClassLabel::new(p as usize)),
        );
    }
    for t in 0..k {
        svg.text(
            left - 8,
            top + t * cell + cell / 2 + 4,
            12,
            "end",
            "#333333",
            cm.registry().name(ClassLabel::new(t as usize)),
        );
    }
    for t in 0..k {
        for p in 0..k {
            let count = cm.count(t as usize, p as usize);
            let (fill, dark_cell) = heat_color(count, max);
            let x = left + p * cell;
            let y = top + t * cell;
            svg.rect_outlined(x, y, cell, cell, &fill, "#cccccc");
            let text_fill = if dark_cell { "#ffffff" } else { "#222222" };
            svg.text(x + cell / 2, y + cell / 2 + 5, 14, "middle", text_fill, &count.to_string());
        }
    }
    svg.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::ClassRegistry;
    use std::sync::Arc;

    fn sample_cm() -> ConfusionMatrix {
        let reg = Arc::new(
            ClassRegistry::new(vec!["healthy".into(), "black_pod_rot".into(), "pod_borer".into()])
                .unwrap(),
        );
        ConfusionMatrix::from_counts(
            vec![vec![298, 1, 1], vec![4, 280, 16], vec![0, 0, 300]],
            reg,
        )
        .unwrap()
    }

    #[test]
    fn text_report_is_aligned_and_rounded() {
        let text = render_report_text(&sample_cm().classification_report());
        let lines: Vec<&str> = text.lines().collect();
        assert!(lines[0].contains("precision"));
        assert!(lines[0].contains("support"));
        // every class row ends with its support, 4-decimal cells in between
        assert!(text.contains("healthy"));
        assert!(text.contains("0.9868")); // 298/302 precision, rounded
        assert!(text.contains("0.9933"));
        assert!(text.contains("0.9900"));
        assert!(text.contains("macro avg"));
        assert!(text.contains("weighted avg"));
        assert!(text.contains("accuracy"));
        assert!(text.contains("0.9756")); // rounded accuracy
        assert!(text.contains("900"));
        // all data rows align on the same column width
        let widths: Vec<usize> = lines.iter().filter(|l| !l.trim().is_empty()).map(|l| l.len()).collect();
        assert!(widths.windows(2).all(|w| w[0] == w[1]), "ragged table: {widths:?}");
    }

    #[test]
    fn json_report_has_the_canonical_key_order_and_full_precision() {
        let json = render_report_json(&sample_cm().classification_report());
        let acc = json.find("\"accuracy\"").unwrap();
        let classes = json.find("\"classes\"").unwrap();
        let macro_ = json.find("\"macro_avg\"").unwrap();
        let weighted = json.find("\"weighted_avg\"").unwrap();
        let total = json.find("\"total\"").unwrap();
        assert!(acc < classes && classes < macro_ && macro_ < weighted && weighted < total);
        assert!(json.contains("0.9755555555555555"));
        assert!(json.contains("0.9867549668874173"));
        assert!(json.ends_with('\n'));
        // parses back
        let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed["total"], 900);
    }

    #[test]
    fn csv_matrix_is_rows_true_columns_predicted() {
        let csv = render_confusion_csv(&sample_cm());
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "true\\predicted,healthy,black_pod_rot,pod_borer");
        assert_eq!(lines[1], "healthy,298,1,1");
        assert_eq!(lines[2], "black_pod_rot,4,280,16");
        assert_eq!(lines[3], "pod_borer,0,0,300");
        assert_eq!(lines.len(), 4);
    }

    #[test]
    fn csv_escapes_awkward_class_names() {
        let reg = Arc::new(
            ClassRegistry::new(vec!["a,b".into(), "say \"hi\"".into()]).unwrap(),
        );
        let cm = ConfusionMatrix::from_counts(vec![vec![1, 0], vec![0, 1]], reg).unwrap();
        let csv = render_confusion_csv(&cm);
        assert!(csv.contains("\"a,b\""));
        assert!(csv.contains("\"say \"\"hi\"\"\""));
    }

    #[test]
    fn svg_heatmap_contains_every_count_and_is_deterministic() {
        let svg = render_confusion_svg(&sample_cm());
        for needle in ["298", "280", "300", ">16<", ">4<", "healthy", "pod_borer"] {
            assert!(svg.contains(needle), "missing {needle}");
        }
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg, render_confusion_svg(&sample_cm()));
    }

    #[test]
    fn heat_color_spans_white_to_saturated() {
        let (white, dark0) = heat_color(0, 300);
        assert_eq!(white, "#ffffff");
        assert!(!dark0);
        let (full, dark1) = heat_color(300, 300);
        assert_eq!(full, "#4485c8");
        assert!(dark1);
    }
}
