use crate::profile::kernel_eval;
use crate::quad::{bisect, integrate_pieces};
use crate::{check_beta, KernelError, Result};
use serde::Serialize;
use std::f64::consts::{FRAC_PI_2, PI};

const TOL: f64 = 1e-14;

/// `f_1(s) = int_0^{3 pi/2} xi^{1-s} sin(xi) d xi`.
pub fn f1(s: f64) -> Result<f64> {
    let g = |x: f64| x.powf(1.0 - s) * x.sin();
    integrate_pieces(&g, &[0.0, FRAC_PI_2, PI, 1.5 * PI], TOL)
}

#[derive(Debug, Clone, Serialize)]
pub struct CriticalExponent {
    pub s_star: f64,
    pub bracket: (f64, f64),
    pub f_lo: f64,
    pub f_hi: f64,
    pub iterations: u32,
}

/// Root of `f_1` on `(0, 1)` by bisection, bracket narrower than `tol`.
pub fn critical_exponent(tol: f64) -> Result<CriticalExponent> {
    if !(tol >= 1e-12) {
        return Err(KernelError::Domain(format!("tolerance {tol:e} below 1e-12")));
    }
    let (lo, hi, iterations) = bisect(&f1, 0.0, 1.0, tol)?;
    let (f_lo, f_hi) = (f1(lo)?, f1(hi)?);
    if !(f_lo <= 0.0 && f_hi >= 0.0) {
        return Err(KernelError::NoSignChange { lo, hi });
    }
    Ok(CriticalExponent { s_star: 0.5 * (lo + hi), bracket: (lo, hi), f_lo, f_hi, iterations })
}

fn quarter_breaks(y: f64) -> Vec<f64> {
    let mut b = vec![0.0];
    let mut t = FRAC_PI_2;
    while t < y {
        b.push(t);
        t += FRAC_PI_2;
    }
    b.push(y);
    b
}

/// `h_s(y) = int_0^y t^{-s} cos t dt`.
pub fn h_s(s: f64, y: f64) -> Result<f64> {
    if y <= 0.0 {
        return Ok(0.0);
    }
    let g = |t: f64| t.powf(-s) * t.cos();
    integrate_pieces(&g, &quarter_breaks(y), 1e-13)
}

/// `h_s(inf) = s (1+s) int_0^inf t^{-s-2} (1 - cos t) dt`.
pub fn h_s_infinity(s: f64) -> Result<f64> {
    if !(s > 0.0 && s < 1.0) {
        return Err(KernelError::Domain(format!("h_s(inf) needs 0 < s < 1, got {s}")));
    }
    let a = s + 2.0;
    let g = |t: f64| {
        let h = (0.5 * t).sin();
        t.powf(-a) * 2.0 * h * h
    };
    let t_end = 2.0 * PI * 500.0;
    let head = integrate_pieces(&g, &quarter_breaks(t_end), 1e-13)?;
    // int_T^inf t^{-a}(1 - cos t) with sin T = 0, cos T = 1
    let tail = t_end.powf(1.0 - a) / (a - 1.0) - a * t_end.powf(-a - 1.0);
    Ok(s * (1.0 + s) * (head + tail))
}

#[derive(Debug, Clone, Serialize)]
pub struct ScaledKernel {
    pub n: usize,
    pub beta: f64,
    pub s: f64,
    pub y: f64,
    /// `N^{-(1-s)} F_{N,s}(y/N)`.
    pub finite: f64,
    /// `2 (2 pi sqrt beta)^{-s} (2 pi y)^{-(1-s)} h_s(2 pi y)`.
    pub limit: f64,
    pub difference: f64,
    /// `(1 + beta^{-1/2}) N^{-(1-s)}`, the scale of the expected difference.
    pub error_scale: f64,
}

pub fn scaled_kernel_limit(n: usize, beta: f64, s: f64, y: f64) -> Result<ScaledKernel> {
    check_beta(beta)?;
    if !(s > 0.0 && s < 1.0) || !(y > 0.0) {
        return Err(KernelError::Domain(format!("need 0 < s < 1 and y > 0, got s={s}, y={y}")));
    }
    let scale = (n as f64).powf(-(1.0 - s));
    let finite = scale * kernel_eval(1, n, beta, s, &[y / n as f64]);
    let z = 2.0 * PI * y;
    let limit = 2.0 * (2.0 * PI * beta.sqrt()).powf(-s) * z.powf(-(1.0 - s)) * h_s(s, z)?;
    Ok(ScaledKernel {
        n,
        beta,
        s,
        y,
        finite,
        limit,
        difference: (finite - limit).abs(),
        error_scale: (1.0 + beta.powf(-0.5)) * scale,
    })
}
