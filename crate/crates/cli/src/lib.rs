//! Command-line front end for the [`ensemblekit`] library.
//!
//! The binary exposes five subcommands — `split`, `train`, `evaluate`,
//! `compare` and `predict` — all driven by a JSON config file plus optional
//! flag overrides. This library crate holds everything behind the thin
//! `main`, so integration tests can exercise config parsing, the model
//! archive format and the command implementations directly.
//!
//! Exit codes: `0` success, `2` configuration or validation error, `3` data
//! error (unreadable/malformed files, mismatched dimensions), `4` internal
//! error.

pub mod archive;
pub mod commands;
pub mod config;
pub mod error;
