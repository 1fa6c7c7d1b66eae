//! Feature-CSV reading and writing.
//!
//! The format is deliberately plain: UTF-8, comma-separated, one header row
//! naming the feature columns plus a final column literally called `label`,
//! then one row per sample. No quoting or escaping; class names therefore
//! must not contain commas. Values are written as shortest round-trip
//! decimals so `load(save(ds))` reproduces `ds` bit for bit.

use std::path::Path;
use std::sync::Arc;

use crate::dataset::{ClassLabel, ClassRegistry, Dataset};
use crate::error::{Error, Result};

fn csv_error(path: &Path, row: usize, col: usize, message: impl Into<String>) -> Error {
    Error::Csv { path: path.to_path_buf(), row, col, message: message.into() }
}

/// Load a labeled dataset from a feature CSV.
///
/// The class registry is built from the distinct label strings in
/// first-appearance order. Positions in errors are 1-based; row 1 is the
/// header.
pub fn load_feature_csv(path: impl AsRef<Path>) -> Result<Dataset> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|source| Error::Io { path: path.to_path_buf(), source })?;

    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| csv_error(path, 1, 1, "file is empty"))?;
    let header: Vec<&str> = header.trim_end_matches('\r').split(',').collect();
    let cols = header.len();
    if cols < 2 {
        return Err(csv_error(path, 1, cols, "expected at least one feature column and a final `label` column"));
    }
    if header[cols - 1] != "label" {
        return Err(csv_error(path, 1, cols, format!("last header column must be `label`, found `{}`", header[cols - 1])));
    }
    let dim = cols - 1;

    let mut features = Vec::new();
    let mut labels = Vec::new();
    let mut class_names: Vec<String> = Vec::new();

    for (idx, line) in lines {
        let row = idx + 1; // 1-based
        let line = line.trim_end_matches('\r');
        if line.is_empty() {
            continue;
        }
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != cols {
            return Err(csv_error(
                path,
                row,
                cells.len(),
                format!("row has {} columns, expected {}", cells.len(), cols),
            ));
        }
        for (c, cell) in cells[..dim].iter().enumerate() {
            let v: f64 = cell.trim().parse().map_err(|_| {
                csv_error(path, row, c + 1, format!("invalid feature value '{cell}'"))
            })?;
            if !v.is_finite() {
                return Err(csv_error(path, row, c + 1, format!("non-finite feature value '{cell}'")));
            }
            features.push(v);
        }
        let name = cells[dim].trim();
        if name.is_empty() {
            return Err(csv_error(path, row, cols, "empty label"));
        }
        let index = match class_names.iter().position(|n| n == name) {
            Some(i) => i,
            None => {
                class_names.push(name.to_string());
                class_names.len() - 1
            }
        };
        labels.push(ClassLabel::new(index));
    }

    if labels.is_empty() {
        return Err(csv_error(path, 2, 1, "file contains no data rows"));
    }
    let registry = Arc::new(ClassRegistry::new(class_names)?);
    Dataset::from_parts(features, labels, dim, registry)
}

/// Write a dataset as a feature CSV with header `f0,...,f{d-1},label`.
pub fn save_feature_csv(ds: &Dataset, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut out = String::new();
    for j in 0..ds.dim() {
        out.push_str(&format!("f{j},"));
    }
    out.push_str("label\n");
    for (row, label) in ds.iter() {
        for v in row {
            out.push_str(&format!("{v},"));
        }
        out.push_str(ds.registry().name(label));
        out.push('\n');
    }
    std::fs::write(path, out).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

/// Load an unlabeled feature matrix (header row, no `label` column).
/// Used by prediction on fresh inputs.
pub fn load_unlabeled_csv(path: impl AsRef<Path>) -> Result<Vec<Vec<f64>>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| csv_error(path, 1, 1, "file is empty"))?;
    let cols = header.trim_end_matches('\r').split(',').count();
    if cols < 1 {
        return Err(csv_error(path, 1, 1, "header row is empty"));
    }

    let mut rows = Vec::new();
    for (idx, line) in lines {
        let row = idx + 1;
        let line = line.trim_end_matches('\r');
        if line.is_empty() {
            continue;
        }
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != cols {
            return Err(csv_error(
                path,
                row,
                cells.len(),
                format!("row has {} columns, expected {}", cells.len(), cols),
            ));
        }
        let mut values = Vec::with_capacity(cols);
        for (c, cell) in cells.iter().enumerate() {
            let v: f64 = cell.trim().parse().map_err(|_| {
                csv_error(path, row, c + 1, format!("invalid feature value '{cell}'"))
            })?;
            values.push(v);
        }
        rows.push(values);
    }
    if rows.is_empty() {
        return Err(csv_error(path, 2, 1, "file contains no data rows"));
    }
    Ok(rows)
}
