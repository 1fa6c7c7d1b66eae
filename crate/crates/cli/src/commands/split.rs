//! `ensemblekit split` — carve a dataset into train/val/test CSVs plus a
//! manifest.
//!
//! The pipeline order is balance → split → augment-train-only. Each stage
//! draws from its own derived seed stream so no stage's shuffling is
//! correlated with another's.

use ensemblekit::csv::{load_feature_csv, save_feature_csv};
use ensemblekit::dataset::{ClassLabel, Dataset};
use ensemblekit::features::extract_dataset;
use ensemblekit::image::{augment, AugmentOp, Image};
use ensemblekit::ppm::load_image_dir;
use ensemblekit::rng::{derive_seed, SplitMix64};
use ensemblekit::split::{balance_classes, stratified_split, SplitSpec};
use serde::Serialize;

use crate::config::{parse_extractor, LoadedConfig};
use crate::error::CliError;

use super::{create_dir, require, write_text};

const BALANCE_STREAM: u64 = 1;
const SPLIT_STREAM: u64 = 2;
const AUGMENT_STREAM: u64 = 3;

pub fn run(ctx: &LoadedConfig) -> Result<(), CliError> {
    let cfg = &ctx.cfg;
    let out = require(&cfg.out, "output directory")?.clone();

    // reject bad fractions before touching any file
    let spec = SplitSpec {
        train_fraction: cfg.split.train_fraction,
        val_fraction: cfg.split.val_fraction,
        test_fraction: cfg.split.test_fraction,
        seed: derive_seed(cfg.seed, SPLIT_STREAM),
    };
    spec.validate()?;
    let source = require(&cfg.data.source, "data.source")?;

    let (train, val, test) = match cfg.data.format.as_str() {
        "csv" => {
            if cfg.split.augment {
                return Err(CliError::Config(
                    "split.augment requires image_dir input; a feature CSV has no pixels to transform"
                        .into(),
                ));
            }
            let mut ds = load_feature_csv(source)?;
            if let Some(n) = cfg.split.balance {
                ds = balance_classes(&ds, n, derive_seed(cfg.seed, BALANCE_STREAM))?;
            }
            stratified_split(&ds, &spec)?
        }
        "image_dir" => {
            let extractor = parse_extractor(&cfg.data.extractor)?;
            let (images, registry) = load_image_dir(source)?;
            // Balance and split are defined on feature datasets, so run them
            // on a proxy dataset whose single feature is the image index;
            // the surviving indices then pull images into each split.
            let rows: Vec<Vec<f64>> = (0..images.len()).map(|i| vec![i as f64]).collect();
            let labels: Vec<ClassLabel> = images.iter().map(|(_, l)| *l).collect();
            let mut proxy = Dataset::from_rows(rows, labels, registry.clone())?;
            if let Some(n) = cfg.split.balance {
                proxy = balance_classes(&proxy, n, derive_seed(cfg.seed, BALANCE_STREAM))?;
            }
            let (train_p, val_p, test_p) = stratified_split(&proxy, &spec)?;

            let mut train_imgs = gather(&images, &train_p);
            let val_imgs = gather(&images, &val_p);
            let test_imgs = gather(&images, &test_p);
            if cfg.split.augment {
                let mut rng = SplitMix64::new(derive_seed(cfg.seed, AUGMENT_STREAM));
                let originals = train_imgs.clone();
                for (img, label) in &originals {
                    let op = AugmentOp::ALL[rng.next_below(4) as usize];
                    train_imgs.push((augment(img, op), *label));
                }
            }
            (
                extract_dataset(&train_imgs, registry.clone(), extractor)?,
                extract_dataset(&val_imgs, registry.clone(), extractor)?,
                extract_dataset(&test_imgs, registry, extractor)?,
            )
        }
        other => {
            return Err(CliError::Config(format!(
                "unknown data format '{other}' (expected \"csv\" or \"image_dir\")"
            )))
        }
    };

    create_dir(&out)?;
    save_feature_csv(&train, out.join("train.csv"))?;
    save_feature_csv(&val, out.join("val.csv"))?;
    save_feature_csv(&test, out.join("test.csv"))?;
    write_text(&out.join("manifest.json"), &manifest_json(cfg.seed, ctx, &train, &val, &test))?;

    println!(
        "split {} -> {} (train={} val={} test={})",
        source.display(),
        out.display(),
        train.len(),
        val.len(),
        test.len()
    );
    Ok(())
}

fn gather(images: &[(Image, ClassLabel)], split: &Dataset) -> Vec<(Image, ClassLabel)> {
    (0..split.len())
        .map(|i| {
            let idx = split.row(i)[0] as usize;
            (images[idx].0.clone(), split.label(i))
        })
        .collect()
}

#[derive(Serialize)]
struct Manifest {
    seed: u64,
    fractions: Fractions,
    balance: Option<usize>,
    augment: bool,
    splits: Vec<SplitCounts>,
}

#[derive(Serialize)]
struct Fractions {
    train: f64,
    val: f64,
    test: f64,
}

#[derive(Serialize)]
struct SplitCounts {
    name: String,
    total: usize,
    per_class: Vec<ClassCount>,
}

#[derive(Serialize)]
struct ClassCount {
    class: String,
    count: usize,
}

fn split_counts(name: &str, ds: &Dataset) -> SplitCounts {
    let per_class = ds
        .registry()
        .names()
        .iter()
        .zip(ds.class_counts())
        .map(|(class, count)| ClassCount { class: class.clone(), count })
        .collect();
    SplitCounts { name: name.into(), total: ds.len(), per_class }
}

fn manifest_json(
    seed: u64,
    ctx: &LoadedConfig,
    train: &Dataset,
    val: &Dataset,
    test: &Dataset,
) -> String {
    let manifest = Manifest {
        seed,
        fractions: Fractions {
            train: ctx.cfg.split.train_fraction,
            val: ctx.cfg.split.val_fraction,
            test: ctx.cfg.split.test_fraction,
        },
        balance: ctx.cfg.split.balance,
        augment: ctx.cfg.split.augment,
        splits: vec![
            split_counts("train", train),
            split_counts("val", val),
            split_counts("test", test),
        ],
    };
    let mut s = serde_json::to_string_pretty(&manifest).expect("manifest serialization cannot fail");
    s.push('\n');
    s
}
