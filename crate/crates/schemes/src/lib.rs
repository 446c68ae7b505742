//! Time steppers for the spectral discretisations of Allen-Cahn, viscous
//! Burgers and the 2D vorticity equation, with norm and energy diagnostics.
//!
//! Galerkin schemes carry a [`SpectralField`] on a Galerkin grid (modes
//! `|k|_inf <= N`, dealiased products); collocation schemes carry node values
//! on an `N`-point collocation grid.

mod allen_cahn;
mod burgers;
mod config;
mod diagnostics;
mod energy;
mod initial;
pub mod integrator;
mod nse;
mod run;

pub use allen_cahn::{
    ac_collocation_imex_step, ac_collocation_ode_integrate, ac_galerkin_imex_step,
    ac_galerkin_ode_integrate, ac_strang_step, strang_nonlinear_flow,
};
pub use burgers::{
    aliasing_witness, burgers_collocation_ode_integrate, burgers_galerkin_euler_step,
    burgers_galerkin_ode_integrate, transport_defect, AliasingWitness,
};
pub use config::{AdversarialKernel, Equation, InitialData, Scheme, SchemeConfig};
pub use diagnostics::{field_linf, DiagRow, RunDiagnostics};
pub use energy::{energy, l2_energy};
pub use initial::build_initial;
pub use integrator::{integrate_field, OdeOptions, OdeStats, Trajectory};
pub use nse::{biot_savart, nse_galerkin_ode_integrate, nse_vorticity_step};
pub use run::{run, run_from, RunOutput};

pub use fourier_core::{GridSpec, SpectralField};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SchemeError {
    #[error(transparent)]
    Fourier(#[from] fourier_core::FourierError),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("time step must be positive, got {0}")]
    Tau(f64),
    #[error("step size collapsed to {h:e} at t = {t}")]
    StepCollapse { t: f64, h: f64 },
    #[error("vorticity must have zero mean, got {0:e}")]
    NonZeroMean(f64),
    #[error("initial data of kind {0} must be resolved to node samples first")]
    Unresolved(&'static str),
    #[error("bad expression: {0}")]
    Expression(String),
    #[error("non-finite state at step {0}")]
    NonFinite(usize),
}

pub type Result<T> = std::result::Result<T, SchemeError>;

pub(crate) fn check_tau(tau: f64) -> Result<()> {
    if tau > 0.0 && tau.is_finite() {
        Ok(())
    } else {
        Err(SchemeError::Tau(tau))
    }
}
