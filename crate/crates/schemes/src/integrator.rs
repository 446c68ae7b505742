//! Dormand-Prince 5(4) in integrating-factor form for `y' = L y + N(y)` with
//! a diagonal, non-positive `L` (a Fourier multiplier).
//!
//! Each stage propagates the linear part exactly, so the step size is limited
//! by the nonlinearity only. Steps are shortened to land on the sample times.

use crate::{Result, SchemeError};
use fourier_core::Complex64;

const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const B: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const B_HAT: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

#[derive(Debug, Clone, Copy)]
pub struct OdeOptions {
    pub atol: f64,
    pub rtol: f64,
    pub h_init: Option<f64>,
    pub h_max: f64,
    pub max_steps: usize,
}

impl Default for OdeOptions {
    fn default() -> Self {
        OdeOptions { atol: 1e-8, rtol: 1e-6, h_init: None, h_max: f64::INFINITY, max_steps: 10_000_000 }
    }
}

impl OdeOptions {
    pub fn with_tol(atol: f64, rtol: f64) -> Self {
        OdeOptions { atol, rtol, ..Default::default() }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OdeStats {
    pub accepted: usize,
    pub rejected: usize,
    pub rhs_evals: usize,
}

/// Sampled solution of an ODE run.
#[derive(Debug, Clone)]
pub struct Trajectory<S> {
    pub times: Vec<f64>,
    pub states: Vec<S>,
    pub stats: OdeStats,
}

fn err_norm(err: &[Complex64], y0: &[Complex64], y1: &[Complex64], o: &OdeOptions) -> f64 {
    let mut s = 0.0;
    for i in 0..err.len() {
        let sc = o.atol + o.rtol * y0[i].norm().max(y1[i].norm());
        s += (err[i].norm() / sc).powi(2);
    }
    (s / err.len().max(1) as f64).sqrt()
}

/// Integrate `y' = diag(lambda) y + rhs(y)` from `t = 0`, calling `on_sample`
/// at each of the increasing `sample_times` (a time of zero samples `y0`).
pub fn integrate_if<F, G>(
    lambda: &[f64],
    y0: Vec<Complex64>,
    sample_times: &[f64],
    mut rhs: F,
    mut on_sample: G,
    opts: &OdeOptions,
) -> Result<(Vec<Complex64>, OdeStats)>
where
    F: FnMut(&[Complex64]) -> Result<Vec<Complex64>>,
    G: FnMut(f64, &[Complex64]) -> Result<()>,
{
    let n = y0.len();
    if lambda.len() != n {
        return Err(SchemeError::Config(format!("{} multipliers for {} unknowns", lambda.len(), n)));
    }
    if sample_times.windows(2).any(|w| w[1] < w[0]) || sample_times.first().is_some_and(|&t| t < 0.0) {
        return Err(SchemeError::Config("sample times must be non-negative and increasing".into()));
    }
    let t_end = sample_times.last().copied().unwrap_or(0.0);
    let mut stats = OdeStats::default();
    let mut y = y0;
    let mut t = 0.0;
    let mut next = 0;
    while next < sample_times.len() && sample_times[next] <= 0.0 {
        on_sample(0.0, &y)?;
        next += 1;
    }
    if next == sample_times.len() {
        return Ok((y, stats));
    }
    let mut k1 = rhs(&y)?;
    stats.rhs_evals += 1;
    let mut h = opts.h_init.unwrap_or(1e-3 * t_end.max(1e-12)).min(opts.h_max);
    let mut err_prev: f64 = 1e-4;
    let mut stages: Vec<Vec<Complex64>> = vec![Vec::new(); 7];
    while next < sample_times.len() {
        if stats.accepted + stats.rejected >= opts.max_steps {
            return Err(SchemeError::StepCollapse { t, h });
        }
        let target = sample_times[next];
        let clipped = t + h >= target;
        let hs = if clipped { target - t } else { h };
        if hs <= 1e-14 * (1.0 + t.abs()) {
            if clipped {
                t = target;
                on_sample(t, &y)?;
                next += 1;
                continue;
            }
            return Err(SchemeError::StepCollapse { t, h: hs });
        }
        stages[0].clone_from(&k1);
        let mut u = vec![Complex64::new(0.0, 0.0); n];
        for i in 1..7 {
            for (m, ui) in u.iter_mut().enumerate() {
                let mut acc = y[m] * (lambda[m] * C[i] * hs).exp();
                for j in 0..i {
                    let a = A[i][j];
                    if a != 0.0 {
                        acc += stages[j][m] * (hs * a * (lambda[m] * (C[i] - C[j]) * hs).exp());
                    }
                }
                *ui = acc;
            }
            stages[i] = rhs(&u)?;
            stats.rhs_evals += 1;
        }
        // stage 7 sits at c = 1 with the weights of the 5th-order solution, so u is y_{n+1}
        let mut err = vec![Complex64::new(0.0, 0.0); n];
        for m in 0..n {
            let mut e = Complex64::new(0.0, 0.0);
            for j in 0..7 {
                e += stages[j][m] * ((B[j] - B_HAT[j]) * (lambda[m] * (1.0 - C[j]) * hs).exp());
            }
            err[m] = e * hs;
        }
        let en = err_norm(&err, &y, &u, opts);
        if !en.is_finite() {
            return Err(SchemeError::StepCollapse { t, h: hs });
        }
        if en <= 1.0 {
            t = if clipped { target } else { t + hs };
            y = u;
            k1 = std::mem::take(&mut stages[6]);
            stats.accepted += 1;
            let fac = 0.9 * en.max(1e-10).powf(-0.7 / 5.0) * err_prev.powf(0.4 / 5.0);
            let fac = fac.clamp(0.2, 5.0);
            // a clipped step says nothing about the natural step size
            if !clipped || hs >= h {
                h = (hs * fac).min(opts.h_max);
            }
            err_prev = en.max(1e-4);
            if clipped {
                on_sample(t, &y)?;
                next += 1;
            }
        } else {
            stats.rejected += 1;
            h = hs * (0.9 * en.powf(-0.2)).max(0.2);
        }
    }
    Ok((y, stats))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn linear_part_is_exact() {
        let lam = [-1e6, -3.0, 0.0];
        let mut out = vec![];
        integrate_if(&lam, vec![c(1.0), c(2.0), c(3.0)], &[0.5, 1.0], |y| Ok(vec![c(0.0); y.len()]), |t, y| {
            out.push((t, y.to_vec()));
            Ok(())
        }, &OdeOptions::default())
        .unwrap();
        assert_eq!(out.len(), 2);
        assert!((out[1].1[1].re - 2.0 * (-3.0f64).exp()).abs() < 1e-14);
        assert!((out[1].1[2].re - 3.0).abs() < 1e-14);
        assert!(out[1].1[0].re.abs() < 1e-300);
    }

    #[test]
    fn logistic_against_closed_form() {
        // y' = -y + 2 y - y^2 = y - y^2 split as L = -1, N(y) = 2y - y^2
        let y0 = 0.1;
        let times: Vec<f64> = (1..=10).map(|i| i as f64 * 0.5).collect();
        let mut worst: f64 = 0.0;
        integrate_if(&[-1.0], vec![c(y0)], &times, |y| Ok(vec![y[0] * 2.0 - y[0] * y[0]]), |t, y| {
            let exact = 1.0 / (1.0 + (1.0 / y0 - 1.0) * (-t).exp());
            worst = worst.max((y[0].re - exact).abs());
            Ok(())
        }, &OdeOptions::with_tol(1e-12, 1e-12))
        .unwrap();
        assert!(worst < 1e-10, "{worst}");
    }

    #[test]
    fn fifth_order_convergence() {
        let run = |h: f64| {
            let mut o = OdeOptions::with_tol(1e3, 1e3);
            o.h_init = Some(h);
            o.h_max = h;
            let mut last = 0.0;
            integrate_if(&[-2.0], vec![c(1.0)], &[1.0], |y| Ok(vec![y[0] * y[0]]), |_, y| {
                last = y[0].re;
                Ok(())
            }, &o)
            .unwrap();
            last
        };
        // y' = -2y + y^2, y(0) = 1: y = 2 / (1 + e^{2t})
        let exact = 2.0 / (1.0 + 2f64.exp());
        let e1 = (run(0.1) - exact).abs();
        let e2 = (run(0.05) - exact).abs();
        let order = (e1 / e2).log2();
        assert!(order > 4.5, "order {order}");
    }
}

/// [`integrate_if`] on the coefficients of a field, with the linear part given
/// as a real multiplier of the wave vector and the nonlinearity acting on
/// fields. Returns the field at every sample time.
pub fn integrate_field<F>(
    u0: &fourier_core::SpectralField,
    multiplier: impl Fn(&[i64]) -> f64,
    mut nonlinear: F,
    sample_times: &[f64],
    opts: &OdeOptions,
) -> Result<Trajectory<fourier_core::SpectralField>>
where
    F: FnMut(&fourier_core::SpectralField) -> Result<fourier_core::SpectralField>,
{
    let grid = *u0.grid();
    let d = grid.d();
    let lambda: Vec<f64> = (0..grid.band_len()).map(|i| multiplier(&grid.wave_vector(i)[..d])).collect();
    let mut times = Vec::with_capacity(sample_times.len());
    let mut states = Vec::with_capacity(sample_times.len());
    let (_, stats) = integrate_if(
        &lambda,
        u0.coeffs().to_vec(),
        sample_times,
        |y| {
            let u = fourier_core::SpectralField::from_coeffs(grid, y.to_vec())?;
            Ok(nonlinear(&u)?.coeffs().to_vec())
        },
        |t, y| {
            times.push(t);
            states.push(fourier_core::SpectralField::from_coeffs(grid, y.to_vec())?);
            Ok(())
        },
        opts,
    )?;
    Ok(Trajectory { times, states, stats })
}
