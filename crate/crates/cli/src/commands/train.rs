//! `ensemblekit train` — fit one ensemble and persist it.
//!
//! Outputs: `model.json` (the archive) and `training_log.csv`, whose
//! columns depend on the method — bagging logs each member's bootstrap
//! seed, boosting logs each accepted round's weighted error and model
//! weight, stacking logs its fit stages.

use ensemblekit::bagging::BaggingModel;
use ensemblekit::boosting::BoostModel;
use ensemblekit::csv::load_feature_csv;
use ensemblekit::dataset::Dataset;
use ensemblekit::learners::LearnerSpec;
use ensemblekit::stacking::StackingModel;

use crate::archive::{self, EnsembleModel};
use crate::config::{parse_boost_mode, parse_meta_policy, LoadedConfig, Method, RunConfig};
use crate::error::CliError;

use super::{create_dir, require, write_text};

pub fn run(ctx: &LoadedConfig) -> Result<(), CliError> {
    let cfg = &ctx.cfg;
    let out = require(&cfg.out, "output directory")?.clone();
    let method = Method::parse(require(&cfg.method, "method")?)?;
    let train_path = require(&cfg.data.train, "data.train")?;

    let ds = load_feature_csv(train_path)?;
    let (model, log) = fit_method(cfg, method, &ds)?;

    create_dir(&out)?;
    let archive = archive::from_model(&model, ctx.config_hash.clone(), cfg.seed);
    archive::save(&archive, &out.join("model.json"))?;
    write_text(&out.join("training_log.csv"), &log)?;

    println!(
        "trained {} on {} samples ({} classes) -> {}",
        method.name(),
        ds.len(),
        ds.num_classes(),
        out.join("model.json").display()
    );
    Ok(())
}

/// Fit `method` on `train` per the config, returning the model and its
/// training-log CSV. Shared with `compare`.
pub fn fit_method(
    cfg: &RunConfig,
    method: Method,
    train: &Dataset,
) -> Result<(EnsembleModel, String), CliError> {
    match method {
        Method::Bagging => {
            let spec = cfg.bagging.learner.to_spec()?;
            let model = BaggingModel::fit(train, cfg.bagging.members, &spec, cfg.seed)?;
            let mut log = String::from("member,seed\n");
            for (i, seed) in model.seeds().iter().enumerate() {
                log.push_str(&format!("{i},{seed}\n"));
            }
            Ok((EnsembleModel::Bagging(model), log))
        }
        Method::Boosting => {
            let spec = cfg.boosting.learner.to_spec()?;
            let mode = parse_boost_mode(&cfg.boosting.mode)?;
            let model = BoostModel::fit(train, cfg.boosting.rounds, &spec, mode, cfg.seed)?;
            let mut log = String::from("round,eps,alpha\n");
            for r in model.history() {
                log.push_str(&format!("{},{},{}\n", r.round, r.eps, r.alpha));
            }
            Ok((EnsembleModel::Boosting(model), log))
        }
        Method::Stacking => {
            let bases: Vec<LearnerSpec> = cfg
                .stacking
                .bases
                .iter()
                .map(|l| l.to_spec())
                .collect::<Result<_, _>>()?;
            if cfg.stacking.meta.kind != "logreg" {
                return Err(CliError::Config(
                    "stacking.meta must be a logreg learner".into(),
                ));
            }
            let meta = cfg.stacking.meta.to_spec()?;
            let policy = parse_meta_policy(&cfg.stacking.meta_leakage_mode)?;
            let model =
                StackingModel::fit(train, &bases, &meta, cfg.stacking.folds, policy, cfg.seed)?;
            let mut log = String::from("stage,fold,base\n");
            for fold in 0..model.folds() {
                for base in 0..bases.len() {
                    log.push_str(&format!("oof,{fold},{base}\n"));
                }
            }
            for base in 0..bases.len() {
                log.push_str(&format!("refit,,{base}\n"));
            }
            log.push_str("meta,,\n");
            Ok((EnsembleModel::Stacking(model), log))
        }
    }
}
