use crate::config::ExperimentFile;
use crate::{CliError, Result};

const SHIPPED: &[(&str, &str)] = &[
    ("sstar", include_str!("../configs/sstar.toml")),
    ("tau1", include_str!("../configs/tau1.toml")),
    ("heat_table", include_str!("../configs/heat_table.toml")),
    ("resolvent_table", include_str!("../configs/resolvent_table.toml")),
    ("closed_form", include_str!("../configs/closed_form.toml")),
    ("abeta", include_str!("../configs/abeta.toml")),
    ("small_perturbation", include_str!("../configs/small_perturbation.toml")),
    ("tau2_counterexample", include_str!("../configs/tau2_counterexample.toml")),
    ("sharp_collocation", include_str!("../configs/sharp_collocation.toml")),
    ("blowup", include_str!("../configs/blowup.toml")),
    ("energy_monotone", include_str!("../configs/energy_monotone.toml")),
    ("margins_galerkin", include_str!("../configs/margins_galerkin.toml")),
    ("margins_collocation", include_str!("../configs/margins_collocation.toml")),
    ("margins_strang", include_str!("../configs/margins_strang.toml")),
    ("burgers_n", include_str!("../configs/burgers_n.toml")),
    ("burgers_tau", include_str!("../configs/burgers_tau.toml")),
    ("vorticity_n", include_str!("../configs/vorticity_n.toml")),
    ("vorticity_tau", include_str!("../configs/vorticity_tau.toml")),
    ("kernel_ratio_band", include_str!("../configs/kernel_ratio_band.toml")),
    ("strang_order", include_str!("../configs/strang_order.toml")),
    ("adversarial", include_str!("../configs/adversarial.toml")),
    ("determinism", include_str!("../configs/determinism.toml")),
];

/// Names of the shipped reproduction configs, in listing order.
pub fn reproductions() -> Vec<&'static str> {
    SHIPPED.iter().map(|(n, _)| *n).collect()
}

pub fn reproduction(name: &str) -> Result<ExperimentFile> {
    let (_, text) = SHIPPED
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| CliError::Config(format!("no reproduction named {name:?}; see `mpspec list`")))?;
    ExperimentFile::parse(text)
}
