//! Config-driven experiment runner for the `mcwave` waveform library.
//!
//! Experiments are described in TOML (see [`config::ExperimentConfig`]) or
//! chosen from the built-in [`presets`]. A run writes CSV files with
//! 17-significant-digit numbers and a `manifest.json` holding the config
//! snapshot, derived quantities and the SHA-256 of every output.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod config;
pub mod error;
pub mod experiments;
pub mod output;
pub mod presets;

pub use error::BenchError;
