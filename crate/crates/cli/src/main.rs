use std::path::PathBuf;
use std::process;

use clap::{Args, Parser, Subcommand};

use ensemblekit_cli::commands;
use ensemblekit_cli::config::{self, LoadedConfig, Overrides};
use ensemblekit_cli::error::CliError;

#[derive(Parser)]
#[command(name = "ensemblekit", version, about = "Train, evaluate and compare classifier ensembles")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args)]
struct CmdArgs {
    /// Path to a JSON run configuration
    #[arg(long)]
    config: PathBuf,
    #[command(flatten)]
    overrides: Overrides,
}

type CommandFn = fn(&LoadedConfig) -> Result<(), CliError>;

#[derive(Subcommand)]
enum Cmd {
    /// Split a dataset into train/val/test CSVs (stratified, seeded)
    Split(CmdArgs),
    /// Train one ensemble method and write a model archive
    Train(CmdArgs),
    /// Evaluate a model archive on a labeled test CSV
    Evaluate(CmdArgs),
    /// Train and evaluate all three methods, then tabulate the results
    Compare(CmdArgs),
    /// Label an unlabeled feature CSV with a model archive
    Predict(CmdArgs),
}

fn run() -> Result<(), CliError> {
    let cli = Cli::parse();
    let (args, cmd): (&CmdArgs, CommandFn) = match &cli.command {
        Cmd::Split(a) => (a, commands::split::run),
        Cmd::Train(a) => (a, commands::train::run),
        Cmd::Evaluate(a) => (a, commands::evaluate::run),
        Cmd::Compare(a) => (a, commands::compare::run),
        Cmd::Predict(a) => (a, commands::predict::run),
    };
    let ctx = config::load(&args.config, &args.overrides)?;
    cmd(&ctx)
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        process::exit(e.exit_code());
    }
}
