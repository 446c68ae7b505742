use crate::integrator::{integrate_field, OdeOptions, Trajectory};
use crate::{check_tau, Result, SchemeError};
use fourier_core::{dealiased_product, pointwise_product, SpectralField};
use std::f64::consts::PI;

fn k2(k: &[i64]) -> f64 {
    k.iter().map(|&x| (x * x) as f64).sum()
}

fn require(u: &SpectralField, galerkin: bool, what: &str) -> Result<()> {
    if u.grid().is_galerkin() != galerkin {
        let kind = if galerkin { "a Galerkin" } else { "a collocation" };
        return Err(SchemeError::Config(format!("{what} needs {kind} field")));
    }
    Ok(())
}

/// `f_tau(u) = (1 + tau) u - tau u^3` followed by `(1 - tau nu^2 Delta)^{-1}`.
fn imex(u: &SpectralField, cube: &SpectralField, nu: f64, tau: f64) -> Result<SpectralField> {
    let rhs = u.scale(1.0 + tau).axpy(-tau, cube)?;
    let b = 4.0 * PI * PI * nu * nu * tau;
    Ok(rhs.apply_real_multiplier(|k| 1.0 / (1.0 + b * k2(k))))
}

/// `u^{n+1} = (1 - tau nu^2 Delta)^{-1} Pi_N((1+tau) u^n - tau (u^n)^3)` with the exact cubic.
pub fn ac_galerkin_imex_step(u: &SpectralField, nu: f64, tau: f64) -> Result<SpectralField> {
    check_tau(tau)?;
    require(u, true, "ac_galerkin_imex_step")?;
    let cube = dealiased_product(&[u, u, u])?;
    imex(u, &cube, nu, tau)
}

/// `U^{n+1} = (I - nu^2 tau Delta_h)^{-1}((1+tau) U^n - tau (U^n)^3)`, cubic on the nodes.
pub fn ac_collocation_imex_step(u: &SpectralField, nu: f64, tau: f64) -> Result<SpectralField> {
    check_tau(tau)?;
    require(u, false, "ac_collocation_imex_step")?;
    let cube = pointwise_product(&[u, u, u])?;
    imex(u, &cube, nu, tau)
}

/// Exact flow of `a' = a - a^3` over time `tau`.
pub fn strang_nonlinear_flow(a: f64, tau: f64) -> f64 {
    let e = (-2.0 * tau).exp();
    a / (e + (1.0 - e) * a * a).sqrt()
}

/// `S_{tau/2} N_tau S_{tau/2}` with the heat multiplier `exp(-(2 pi k)^2 nu^2 tau / 2)`.
pub fn ac_strang_step(u: &SpectralField, nu: f64, tau: f64) -> Result<SpectralField> {
    check_tau(tau)?;
    require(u, false, "ac_strang_step")?;
    let b = 2.0 * PI * PI * nu * nu * tau;
    let half = |f: &SpectralField| f.apply_real_multiplier(|k| (-b * k2(k)).exp());
    let v = half(u);
    let w: Vec<f64> = v.values().iter().map(|&a| strang_nonlinear_flow(a, tau)).collect();
    Ok(half(&SpectralField::from_values(*u.grid(), w)?))
}

fn diffusion(nu: f64) -> impl Fn(&[i64]) -> f64 {
    let c = -4.0 * PI * PI * nu * nu;
    move |k| c * k2(k)
}

/// `u' = nu^2 Delta u - Pi_N(u^3 - u)` with the dealiased cubic.
pub fn ac_galerkin_ode_integrate(
    u0: &SpectralField,
    nu: f64,
    sample_times: &[f64],
    opts: &OdeOptions,
) -> Result<Trajectory<SpectralField>> {
    require(u0, true, "ac_galerkin_ode_integrate")?;
    integrate_field(u0, diffusion(nu), |u| Ok(u.axpy(-1.0, &dealiased_product(&[u, u, u])?)?), sample_times, opts)
}

/// `U' = nu^2 Delta_h U + U - U^3` on the nodes.
pub fn ac_collocation_ode_integrate(
    u0: &SpectralField,
    nu: f64,
    sample_times: &[f64],
    opts: &OdeOptions,
) -> Result<Trajectory<SpectralField>> {
    require(u0, false, "ac_collocation_ode_integrate")?;
    integrate_field(u0, diffusion(nu), |u| Ok(u.axpy(-1.0, &pointwise_product(&[u, u, u])?)?), sample_times, opts)
}
