use crate::profile::{multiplier, sample_kernel};
use crate::{check_beta, KernelError, Result};
use fourier_core::{fft::fft_nd, next_fft_size, Complex64};
use serde::Serialize;
use std::f64::consts::PI;

#[derive(Debug, Clone, Serialize)]
pub struct TailNorm {
    pub d: usize,
    pub n: usize,
    pub beta: f64,
    /// `||K_{>N,beta}||_{L1}`.
    pub l1: f64,
    /// Quadrature of `K_{>N}` itself; zero up to round-off.
    pub mean: f64,
    /// `l1 (1 + beta N^2) / log(N+2)^d`.
    pub ratio: f64,
    /// Reference cutoff used for `K_inf` (d >= 2 only).
    pub n_ref: Option<usize>,
    /// L2 bound for the modes above `n_ref` (d >= 2 only).
    pub truncation_bound: f64,
}

/// `K_inf(x) = (1/(2 sqrt beta)) sum_n e^{-|x+n|/sqrt beta}` in closed form on `[0,1)`.
pub fn helmholtz_full_1d(beta: f64, x: f64) -> f64 {
    let a = beta.sqrt();
    let x = x.rem_euclid(1.0);
    // cosh((x-1/2)/a) / (2 a sinh(1/(2a))), written to avoid overflow
    let u = (x - 0.5).abs() / a;
    let h = 0.5 / a;
    (0.5 / a) * ((u - h).exp() + (-u - h).exp()) / (1.0 - (-2.0 * h).exp())
}

/// `||K_inf - K_N||_1` for the Helmholtz kernel (`s = 2`).
pub fn tail_l1_norm(d: usize, n: usize, beta: f64) -> Result<TailNorm> {
    check_beta(beta)?;
    if n < 1 {
        return Err(KernelError::Domain("tail_l1_norm needs N >= 1".into()));
    }
    let (vals, n_ref, bound) = match d {
        1 => {
            let p = next_fft_size((64 * (2 * n + 1)).max(8192));
            let kn = sample_kernel(1, n, beta, 2.0, p);
            let v: Vec<f64> = kn
                .iter()
                .enumerate()
                .map(|(j, k)| helmholtz_full_1d(beta, j as f64 / p as f64) - k)
                .collect();
            (v, None, 0.0)
        }
        2 | 3 => {
            // the cube of a 2(2 n_ref + 1) grid caps the reference cutoff in 3D
            let n_ref = if d == 2 { 8 * n } else { 4 * n };
            let p = next_fft_size(2 * (2 * n_ref + 1));
            let v = shell_samples(d, n, n_ref, beta, p);
            // sum over |k| > n_ref of (4 pi^2 beta |k|^2)^{-2}, bounded by an integral
            let r = (n_ref as f64 - 1.0).max(1.0);
            let c = 1.0 / (16.0 * PI.powi(4) * beta * beta);
            let tail_sq = match d {
                2 => 2.0 * PI * c / (2.0 * r * r),
                _ => 4.0 * PI * c / r,
            };
            (v, Some(n_ref), (2.0 * tail_sq).sqrt())
        }
        _ => return Err(KernelError::Dimension(d)),
    };
    let m = vals.len() as f64;
    let l1 = vals.iter().map(|v| v.abs()).sum::<f64>() / m;
    let mean = vals.iter().sum::<f64>() / m;
    let ratio = l1 * (1.0 + beta * (n * n) as f64) / ((n as f64 + 2.0).ln()).powi(d as i32);
    Ok(TailNorm { d, n, beta, l1, mean, ratio, n_ref, truncation_bound: bound })
}

/// Samples of `sum_{N < |k|_inf <= n_ref} c_k e^{2 pi i k.x}`.
fn shell_samples(d: usize, n: usize, n_ref: usize, beta: f64, p: usize) -> Vec<f64> {
    let mut buf = vec![Complex64::new(0.0, 0.0); p.pow(d as u32)];
    let w = 2 * n_ref + 1;
    for mut i in 0..w.pow(d as u32) {
        let mut idx = 0usize;
        let mut k2 = 0.0;
        let mut kinf = 0i64;
        for _ in 0..d {
            let k = (i % w) as i64 - n_ref as i64;
            i /= w;
            idx = idx * p + k.rem_euclid(p as i64) as usize;
            k2 += (k * k) as f64;
            kinf = kinf.max(k.abs());
        }
        if kinf as usize > n {
            buf[idx] += multiplier(beta, 2.0, k2);
        }
    }
    fft_nd(&mut buf, p, d, true);
    buf.iter().map(|z| z.re).collect()
}
