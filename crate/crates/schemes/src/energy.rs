use fourier_core::SpectralField;
use std::f64::consts::PI;

/// Allen-Cahn energy `int (nu^2/2 |grad u|^2 + (u^2 - 1)^2 / 4)`.
///
/// The gradient term is `(nu^2/2) sum 4 pi^2 |k|^2 |u_k|^2`, which on a
/// collocation grid is `(nu^2/2) <-Delta_h U, U>` (the Nyquist mode included).
/// The potential term is the node average of `F(u)`; on a Galerkin grid the
/// oversampling `M > 4N` makes it exact.
pub fn energy(u: &SpectralField, nu: f64) -> f64 {
    let grad: f64 = u
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let k = u.grid().wave_vector(i);
            let k2: f64 = k.iter().map(|&x| (x * x) as f64).sum();
            4.0 * PI * PI * k2 * c.norm_sqr()
        })
        .sum();
    let vals = u.values();
    let pot = vals.iter().map(|&v| 0.25 * (v * v - 1.0).powi(2)).sum::<f64>() / vals.len() as f64;
    0.5 * nu * nu * grad + pot
}

/// `(1/2) ||u||_2^2`, the energy reported for Burgers and vorticity runs.
pub fn l2_energy(u: &SpectralField) -> f64 {
    0.5 * u.l2_norm().powi(2)
}
