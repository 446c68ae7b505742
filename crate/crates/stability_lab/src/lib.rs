//! Stability theory for the IMEX Allen-Cahn schemes: the cubic map
//! `f_tau(z) = (1 + tau) z - tau z^3` and its envelope, the tau = 2
//! counterexample, and the l1 masses of the collocation heat and resolvent
//! kernels together with data that attains them.

mod adversarial;
mod amplification;
mod counterexample;
mod cubic;

pub use adversarial::{adversarial_data, adversarial_mode, linear_step, AdversarialData};
pub use amplification::{
    discrete_weights, heat_amplification, heat_beta, heat_beta_abs_sum, heat_closed_form,
    heat_small_time_excess, resolvent_amplification, resolvent_beta, resolvent_bridge,
    AmplificationTable, KernelMode,
};
pub use counterexample::{counterexample_tau2, Tau2Witness};
pub use cubic::{
    cubic_envelope, f_tau, prototype_iteration, tau1_closed_form, tau1_grid_check, tau1_root,
    EnvelopeReport, IterationReport, Tau1,
};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum StabilityError {
    #[error("{0}")]
    Domain(String),
    #[error("window mismatch: the kernel for N = {n}, nu = {nu} has no negative part")]
    WindowMismatch { n: usize, nu: f64 },
    #[error(transparent)]
    Kernel(#[from] kernel_lab::KernelError),
    #[error(transparent)]
    Scheme(#[from] schemes::SchemeError),
    #[error(transparent)]
    Fourier(#[from] fourier_core::FourierError),
}

pub type Result<T> = std::result::Result<T, StabilityError>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(StabilityError::Domain(msg.into()))
}
