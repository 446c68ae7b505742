use crate::{CliError, Result};
use schemes::{AdversarialKernel, SchemeConfig};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// A TOML experiment file: one experiment plus optional checks on its metrics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub experiment: Experiment,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum Experiment {
    Run(SchemeConfig),
    Sweep(SweepSpec),
    Kernel(KernelTask),
    Stability(StabilityTask),
    /// Execute a shipped reproduction twice and compare the CSV bytes.
    Repeat { target: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "task", rename_all = "snake_case", deny_unknown_fields)]
pub enum KernelTask {
    Profile {
        d: usize,
        n: usize,
        beta: f64,
        s: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        refinement: Option<usize>,
    },
    /// `||K_{>N,beta}||_1` and its ratio over a list of cutoffs.
    Sweep { d: usize, beta: f64, ns: Vec<usize> },
    Sstar {
        #[serde(default = "default_sstar_tol")]
        tol: f64,
    },
    Abeta { beta: f64, s: f64 },
}

fn default_sstar_tol() -> f64 {
    1e-12
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "task", rename_all = "snake_case", deny_unknown_fields)]
pub enum StabilityTask {
    Envelope { tau: f64, alphas: Vec<f64> },
    Iterate { tau: f64, eta: f64, alpha0: f64, steps: usize },
    Tau1 {
        #[serde(default = "default_eta0")]
        eta0: f64,
        #[serde(default = "default_lo")]
        lo: f64,
        #[serde(default = "default_hi")]
        hi: f64,
        #[serde(default = "default_points")]
        points: usize,
    },
    Counterexample { nu: f64, n: usize },
    /// Kernel mass and `beta_j`; give either the time (`t` or `tau`) or the
    /// continuum scale (`k0` for heat, `k1` for the resolvent).
    Amplify {
        kernel: AdversarialKernel,
        n: usize,
        #[serde(default = "one")]
        nu: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        time: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        scale: Option<f64>,
        #[serde(default = "one_u32")]
        steps: u32,
    },
    /// Closed form against the full coefficient sum for each `b`.
    ClosedForm { b: Vec<f64> },
    Adversarial {
        kernels: Vec<AdversarialKernel>,
        ns: Vec<usize>,
        #[serde(default = "one")]
        nu: f64,
    },
}

fn default_eta0() -> f64 {
    1e-5
}
fn default_lo() -> f64 {
    0.5
}
fn default_hi() -> f64 {
    0.86
}
fn default_points() -> usize {
    10_000
}
fn one() -> f64 {
    1.0
}
fn one_u32() -> u32 {
    1
}

/// Integer or float grid value; kept apart so configs round-trip as written.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GridValue {
    Int(i64),
    Float(f64),
}

impl GridValue {
    pub fn as_f64(self) -> f64 {
        match self {
            GridValue::Int(i) => i as f64,
            GridValue::Float(f) => f,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Axis {
    /// One of `n`, `tau`, `nu`, `steps`, `t_final`, `seed`.
    pub param: String,
    pub values: Vec<GridValue>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepMetric {
    MaxMargin,
    MaxLinf,
    FinalLinf,
    /// Steps with `E^{n} > E^{n-1} + 1e-12`.
    EnergyIncreases,
    /// Max node difference of the final state against `reference`.
    FinalError,
}

pub const DEFAULT_CAP: usize = 10_000;

fn default_cap() -> usize {
    DEFAULT_CAP
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub base: SchemeConfig,
    pub grid: Vec<Axis>,
    pub metric: SweepMetric,
    /// Seeds `base.seed .. base.seed + seeds` per grid point; the metric is
    /// the maximum over them.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seeds: Option<u64>,
    /// Grid parameter used as abscissa of a log-log fit of the metric.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fit: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference: Option<SchemeConfig>,
    #[serde(default = "default_cap")]
    pub cap: usize,
}

/// Bounds on one metric; all given bounds must hold.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Check {
    pub label: String,
    pub metric: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max: Option<f64>,
    /// Strict lower bound.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub above: Option<f64>,
    /// Strict upper bound.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub below: Option<f64>,
}

impl Check {
    pub fn holds(&self, v: f64) -> bool {
        v.is_finite()
            && self.min.is_none_or(|m| v >= m)
            && self.max.is_none_or(|m| v <= m)
            && self.above.is_none_or(|m| v > m)
            && self.below.is_none_or(|m| v < m)
    }
}

impl ExperimentFile {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("experiment serialises")
    }

    /// SHA-256 of the canonical JSON form, in hex.
    pub fn hash(&self) -> String {
        let json = serde_json::to_vec(self).expect("experiment serialises");
        Sha256::digest(&json).iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Replace the seed of run and sweep experiments.
    pub fn with_seed(mut self, seed: u64) -> Self {
        match &mut self.experiment {
            Experiment::Run(c) => c.seed = seed,
            Experiment::Sweep(s) => s.base.seed = seed,
            _ => {}
        }
        self
    }
}
