use crate::integrator::{integrate_field, OdeOptions, Trajectory};
use crate::{check_tau, Result, SchemeError};
use fourier_core::{dealiased_product, pointwise_product, GridSpec, SpectralField};
use serde::Serialize;
use std::f64::consts::PI;

fn k2(k: &[i64]) -> f64 {
    (k[0] * k[0]) as f64
}

fn galerkin_1d(u: &SpectralField, what: &str) -> Result<()> {
    if !u.grid().is_galerkin() || u.grid().d() != 1 {
        return Err(SchemeError::Config(format!("{what} needs a 1D Galerkin field")));
    }
    Ok(())
}

/// `Pi_N(u u_x)` with the exact product.
fn advection(u: &SpectralField) -> Result<SpectralField> {
    Ok(dealiased_product(&[u, &u.derivative(0)])?)
}

/// `(u^{n+1} - u^n)/tau + Pi_N(u^n u^n_x) = nu^2 u^{n+1}_xx`.
pub fn burgers_galerkin_euler_step(u: &SpectralField, nu: f64, tau: f64) -> Result<SpectralField> {
    check_tau(tau)?;
    galerkin_1d(u, "burgers_galerkin_euler_step")?;
    let b = 4.0 * PI * PI * nu * nu * tau;
    Ok(u.axpy(-tau, &advection(u)?)?.apply_real_multiplier(|k| 1.0 / (1.0 + b * k2(k))))
}

/// `u_t + Pi_N(u u_x) = nu^2 u_xx`.
pub fn burgers_galerkin_ode_integrate(
    u0: &SpectralField,
    nu: f64,
    sample_times: &[f64],
    opts: &OdeOptions,
) -> Result<Trajectory<SpectralField>> {
    galerkin_1d(u0, "burgers_galerkin_ode_integrate")?;
    let c = -4.0 * PI * PI * nu * nu;
    integrate_field(u0, |k| c * k2(k), |u| Ok(advection(u)?.scale(-1.0)), sample_times, opts)
}

/// `U' + (1/2) d_h(U^2) = nu^2 Delta_h U` on the nodes (`nu = 1` is the standard form).
pub fn burgers_collocation_ode_integrate(
    u0: &SpectralField,
    nu: f64,
    sample_times: &[f64],
    opts: &OdeOptions,
) -> Result<Trajectory<SpectralField>> {
    if u0.grid().is_galerkin() || u0.grid().d() != 1 {
        return Err(SchemeError::Config("burgers_collocation_ode_integrate needs a 1D collocation field".into()));
    }
    let c = -4.0 * PI * PI * nu * nu;
    integrate_field(
        u0,
        |k| c * k2(k),
        |u| Ok(pointwise_product(&[u, u])?.derivative(0).scale(-0.5)),
        sample_times,
        opts,
    )
}

/// `<d_h(U^2), U>` in the discrete inner product; zero for Galerkin products
/// but not for the aliased collocation square.
pub fn transport_defect(u: &SpectralField) -> Result<f64> {
    let sq = pointwise_product(&[u, u])?.derivative(0);
    let n = u.values().len() as f64;
    Ok(sq.values().iter().zip(u.values()).map(|(a, b)| a * b).sum::<f64>() / n)
}

#[derive(Debug, Clone, Serialize)]
pub struct AliasingWitness {
    pub n: usize,
    pub m: usize,
    /// Mean and `cos(2 pi m x)` coefficient of `Q_N(u^2)`.
    pub mean: f64,
    pub cos_m: f64,
    /// `int Q_N(u^2) d_x u`.
    pub integral: f64,
}

/// `N = 6 k0`, `u = sin(2 pi m x)` with `m = N/3`: the node square aliases
/// `cos(4 pi m x)` onto `cos(2 pi m x)`.
pub fn aliasing_witness(k0: usize) -> Result<AliasingWitness> {
    if k0 == 0 {
        return Err(SchemeError::Config("aliasing witness needs k0 >= 1".into()));
    }
    let n = 6 * k0;
    let m = n / 3;
    let g = GridSpec::collocation(1, n)?;
    let u = SpectralField::from_fn(g, |x| (2.0 * PI * m as f64 * x[0]).sin());
    let q = pointwise_product(&[&u, &u])?;
    let p = 4 * n;
    let a = q.sample(p);
    let b = u.derivative(0).sample(p);
    let integral = a.iter().zip(&b).map(|(x, y)| x * y).sum::<f64>() / p as f64;
    Ok(AliasingWitness { n, m, mean: q.mean(), cos_m: 2.0 * q.coeff(&[m as i64]).re, integral })
}
