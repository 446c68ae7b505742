//! Truncated Helmholtz and Bessel kernels on the torus.
//!
//! `F_{N,s}(x) = sum_{|k|_inf <= N} (1 + 4 pi^2 beta |k|^2)^{-s/2} e^{2 pi i k.x}`;
//! `s = 2` is the Helmholtz kernel `K_{N,beta}` of `(Id - beta Delta)^{-1} Pi_N`.

mod abeta;
mod appendix_a;
mod bessel;
mod dirichlet;
mod discrete;
pub mod fit;
mod profile;
pub mod quad;
mod tail;

pub use abeta::{a_beta, ABeta};
pub use appendix_a::{appendix_a_fit, appendix_a_integrand, AppendixAFit};
pub use bessel::{
    critical_exponent, f1, h_s, h_s_infinity, scaled_kernel_limit, CriticalExponent,
    ScaledKernel,
};
pub use dirichlet::{dirichlet_sign_masses, SignMasses};
pub use discrete::{discrete_helmholtz_kernel, phi_n, DiscreteKernel};
pub use profile::{
    convexity_onset, kernel_eval, kernel_profile, multiplier, positivity_threshold,
    threshold_report, KernelProfile, Threshold, ThresholdReport,
};
pub use tail::{tail_l1_norm, TailNorm};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum KernelError {
    #[error("beta must be positive, got {0}")]
    Beta(f64),
    #[error("s must be positive, got {0}")]
    Exponent(f64),
    #[error("dimension {0} not supported")]
    Dimension(usize),
    #[error("{0}")]
    Domain(String),
    #[error("quadrature did not converge on [{a}, {b}] (residual {residual:e})")]
    Quadrature { a: f64, b: f64, residual: f64 },
    #[error("no sign change on [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },
}

pub type Result<T> = std::result::Result<T, KernelError>;

pub(crate) fn check_beta(beta: f64) -> Result<()> {
    if beta > 0.0 && beta.is_finite() {
        Ok(())
    } else {
        Err(KernelError::Beta(beta))
    }
}
