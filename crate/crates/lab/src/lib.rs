//! Experiment runner for `krylov-core`.
//!
//! A run takes an [`ExperimentConfig`] naming a preset, executes it on a
//! rayon pool and writes one CSV per curve, `summary.json`, optional SVG
//! plots and a [`RunManifest`] with SHA-256 digests of everything written.

pub mod config;
pub mod ensemble;
pub mod error;
pub mod output;
pub mod presets;
mod runner;

pub use config::ExperimentConfig;
pub use error::{LabError, Result};
pub use output::{Curve, Output, RunManifest};
pub use runner::{execute, resolve_out_dir, run, validate, RunOptions, OUT_DIR_ENV};
