//! Experiment files, sweeps and result bundles behind the `mpspec` binary.
//!
//! An experiment file is TOML with an `[experiment]` table (tagged by
//! `command`) and optional `[[checks]]` on the metrics it reports. Every
//! experiment yields CSV tables and a flat map of named metrics.

mod config;
mod execute;
mod output;
mod reproduce;
mod sweep;

pub use config::{
    Axis, Check, Experiment, ExperimentFile, GridValue, KernelTask, StabilityTask, SweepMetric, SweepSpec,
    DEFAULT_CAP,
};
pub use execute::{execute, resolve_initial, run_experiment, Report};
pub use output::{evaluate, format_real, write_atomic, write_bundle, Cell, CheckResult, Format, Outcome, Summary, Table};
pub use reproduce::{reproduction, reproductions};
pub use sweep::{grid_points, run_sweep};

use thiserror::Error;

pub const TOOL: &str = "mpspec";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl From<schemes::SchemeError> for CliError {
    fn from(e: schemes::SchemeError) -> Self {
        use schemes::SchemeError::*;
        match e {
            Config(_) | Tau(_) | NonZeroMean(_) | Unresolved(_) | Expression(_) => CliError::Config(e.to_string()),
            _ => CliError::Numerical(e.to_string()),
        }
    }
}

impl From<kernel_lab::KernelError> for CliError {
    fn from(e: kernel_lab::KernelError) -> Self {
        use kernel_lab::KernelError::*;
        match e {
            Quadrature { .. } | NoSignChange { .. } => CliError::Numerical(e.to_string()),
            _ => CliError::Config(e.to_string()),
        }
    }
}

impl From<stability_lab::StabilityError> for CliError {
    fn from(e: stability_lab::StabilityError) -> Self {
        use stability_lab::StabilityError::*;
        match e {
            Domain(_) | WindowMismatch { .. } => CliError::Config(e.to_string()),
            Kernel(k) => k.into(),
            Scheme(s) => s.into(),
            Fourier(_) => CliError::Numerical(e.to_string()),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
