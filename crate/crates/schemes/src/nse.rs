use crate::integrator::{integrate_field, OdeOptions, Trajectory};
use crate::{check_tau, Result, SchemeError};
use fourier_core::{dealiased_product, Complex64, SpectralField};
use std::f64::consts::PI;

fn k2(k: &[i64]) -> f64 {
    k.iter().map(|&x| (x * x) as f64).sum()
}

fn check_vorticity(w: &SpectralField) -> Result<()> {
    let g = w.grid();
    if !g.is_galerkin() || g.d() != 2 {
        return Err(SchemeError::Config("vorticity must be a 2D Galerkin field".into()));
    }
    let mean = w.mean();
    if mean.abs() > 1e-12 * (1.0 + w.linf()) {
        return Err(SchemeError::NonZeroMean(mean));
    }
    Ok(())
}

/// `u = grad^perp Delta^{-1} omega = (-d_2 psi, d_1 psi)`, with `u_hat(0) = 0`.
pub fn biot_savart(w: &SpectralField) -> Result<[SpectralField; 2]> {
    check_vorticity(w)?;
    let comp = |axis: usize, sign: f64| {
        w.map_coeffs(|k, c| {
            let q = k2(k);
            if q == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            c * Complex64::new(0.0, sign * k[axis] as f64 / (2.0 * PI * q))
        })
    };
    Ok([comp(1, 1.0), comp(0, -1.0)])
}

/// `Pi_N(u . grad omega)` with exact products.
fn transport(w: &SpectralField) -> Result<SpectralField> {
    let [u1, u2] = biot_savart(w)?;
    let a = dealiased_product(&[&u1, &w.derivative(0)])?;
    let b = dealiased_product(&[&u2, &w.derivative(1)])?;
    Ok(a.axpy(1.0, &b)?)
}

/// `(omega^{n+1} - omega^n)/tau + Pi_N(u^n . grad omega^n) = nu^2 Delta omega^{n+1}`.
pub fn nse_vorticity_step(w: &SpectralField, nu: f64, tau: f64) -> Result<SpectralField> {
    check_tau(tau)?;
    let b = 4.0 * PI * PI * nu * nu * tau;
    Ok(w.axpy(-tau, &transport(w)?)?.apply_real_multiplier(|k| 1.0 / (1.0 + b * k2(k))))
}

/// `omega_t + Pi_N(u . grad omega) = nu^2 Delta omega`.
pub fn nse_galerkin_ode_integrate(
    w0: &SpectralField,
    nu: f64,
    sample_times: &[f64],
    opts: &OdeOptions,
) -> Result<Trajectory<SpectralField>> {
    check_vorticity(w0)?;
    let c = -4.0 * PI * PI * nu * nu;
    integrate_field(w0, |k| c * k2(k), |w| Ok(transport(w)?.scale(-1.0)), sample_times, opts)
}
