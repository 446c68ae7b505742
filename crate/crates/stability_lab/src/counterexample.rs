use crate::{Result, StabilityError};
use fourier_core::{GridSpec, SpectralField};
use kernel_lab::kernel_eval;
use schemes::{ac_galerkin_imex_step, field_linf};
use serde::Serialize;
use std::f64::consts::{PI, SQRT_2};

const TAU: f64 = 2.0;
/// Oversampled grid on which `eta` is analysed, so its coefficients are
/// accurate well beyond the band.
const M_FINE: usize = 4096;

#[derive(Debug, Clone, Serialize)]
pub struct Tau2Witness {
    pub nu: f64,
    pub n: usize,
    /// `1/(2 sqrt 3 pi nu) <= N <= nu^{-1/2} e^{1/(12 nu)}`.
    pub in_window: bool,
    pub delta: f64,
    /// `||u_0||_inf` of the unprojected datum, at most `sqrt 2`.
    pub u0_linf: f64,
    /// `||Pi_N u_0||_inf` (sampled), which may exceed `sqrt 2` by Gibbs ringing.
    pub projected_linf: f64,
    /// `||u^1||_inf - sqrt 2`.
    pub overshoot: f64,
    /// First-order prediction `9 delta (T eta)(0)`.
    pub predicted: f64,
    /// `(T eta)(0)`, computed spectrally, with `T = (1 - 2 nu^2 d_xx)^{-1} Pi_N`.
    pub t_eta_at_zero: f64,
    /// `int (K_N^-)^2`, which equals `(T eta)(0)` for `eta = -K_N^-`.
    pub negative_energy: f64,
}

/// One Galerkin IMEX step with `tau = 2` from `u_0 = sqrt 2 + delta eta`,
/// `eta = -K_N^-`, where `K_N` is the kernel of `(1 - 2 nu^2 d_xx)^{-1} Pi_N`.
/// `delta` is halved from 1/2 until the step overshoots and agrees with the
/// linear prediction to within half of it.
pub fn counterexample_tau2(nu: f64, n: usize) -> Result<Tau2Witness> {
    if !(nu > 0.0 && nu.is_finite()) || n == 0 {
        return Err(StabilityError::Domain(format!("need nu > 0 and N >= 1, got ({nu}, {n})")));
    }
    let beta = TAU * nu * nu;
    let grid = GridSpec::galerkin_with_m(1, n, M_FINE)?;
    let k_minus = |x: f64| (-kernel_eval(1, n, beta, 2.0, &[x])).max(0.0);
    let eta = SpectralField::from_fn(grid, |x| -k_minus(x[0]));
    if eta.values().iter().all(|&v| v == 0.0) {
        return Err(StabilityError::WindowMismatch { n, nu });
    }
    let b = 4.0 * PI * PI * beta;
    let t_eta = eta.apply_real_multiplier(|k| 1.0 / (1.0 + b * (k[0] * k[0]) as f64));
    let t_eta_at_zero = t_eta.eval(&[0.0]);
    // rectangle rule on the fine grid; K_N^- is Lipschitz
    let negative_energy = (0..M_FINE).map(|i| k_minus(i as f64 / M_FINE as f64).powi(2)).sum::<f64>() / M_FINE as f64;

    let eta_min = eta.values().iter().cloned().fold(0.0, f64::min);
    let mut delta = 0.5f64.min(SQRT_2 / -eta_min);
    for _ in 0..60 {
        let u0 = SpectralField::from_fn(grid, |x| SQRT_2 - delta * k_minus(x[0]));
        let u0_linf = (0..M_FINE)
            .map(|i| (SQRT_2 - delta * k_minus(i as f64 / M_FINE as f64)).abs())
            .fold(0.0, f64::max);
        let projected_linf = field_linf(&u0);
        let u1 = ac_galerkin_imex_step(&u0, nu, TAU)?;
        let overshoot = field_linf(&u1).max(u1.eval(&[0.0]).abs()) - SQRT_2;
        let predicted = 9.0 * delta * t_eta_at_zero;
        if overshoot > 0.0 && (overshoot - predicted).abs() <= 0.5 * predicted {
            let lo = 1.0 / (2.0 * 3f64.sqrt() * PI * nu);
            let hi = nu.powf(-0.5) * (1.0 / (12.0 * nu)).exp();
            return Ok(Tau2Witness {
                nu,
                n,
                in_window: (n as f64) >= lo && (n as f64) <= hi,
                delta,
                u0_linf,
                projected_linf,
                overshoot,
                predicted,
                t_eta_at_zero,
                negative_energy,
            });
        }
        delta *= 0.5;
    }
    Err(StabilityError::Domain(format!("no delta resolved the overshoot for N = {n}, nu = {nu}")))
}
