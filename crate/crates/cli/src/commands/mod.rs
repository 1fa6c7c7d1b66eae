//! The five subcommands, plus the small file and dataset plumbing they
//! share.

pub mod compare;
pub mod evaluate;
pub mod predict;
pub mod split;
pub mod train;

use std::fs;
use std::path::Path;
use std::sync::Arc;

use ensemblekit::dataset::{ClassRegistry, Dataset};

use crate::error::CliError;

pub(crate) fn create_dir(path: &Path) -> Result<(), CliError> {
    fs::create_dir_all(path)
        .map_err(|e| CliError::Data(format!("cannot create {}: {e}", path.display())))
}

pub(crate) fn write_text(path: &Path, content: &str) -> Result<(), CliError> {
    fs::write(path, content)
        .map_err(|e| CliError::Data(format!("cannot write {}: {e}", path.display())))
}

/// Unwrap an optional config value or fail with the setting's name.
pub(crate) fn require<'a, T>(opt: &'a Option<T>, setting: &str) -> Result<&'a T, CliError> {
    opt.as_ref()
        .ok_or_else(|| CliError::Config(format!("{setting} is not set (config or flag)")))
}

/// Re-key a dataset's labels onto `registry` by class name.
///
/// A CSV builds its registry from label first-appearance order, which need
/// not match the order a model was trained under; predictions and truth
/// must live in one index space before they can meet in a confusion matrix.
pub(crate) fn remap_to_registry(
    ds: &Dataset,
    registry: &Arc<ClassRegistry>,
) -> Result<Dataset, CliError> {
    let mut rows = Vec::with_capacity(ds.len());
    let mut labels = Vec::with_capacity(ds.len());
    for i in 0..ds.len() {
        let name = ds.registry().name(ds.label(i));
        let label = registry.index_of(name).ok_or_else(|| {
            CliError::Data(format!("dataset class '{name}' is not known to the model"))
        })?;
        rows.push(ds.row(i).to_vec());
        labels.push(label);
    }
    Dataset::from_rows(rows, labels, registry.clone()).map_err(CliError::from)
}
