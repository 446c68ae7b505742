use crate::{domain, Result};
use fourier_core::{GridSpec, SpectralField};
use kernel_lab::quad::integrate_pieces;
use serde::{Deserialize, Serialize};
use statrs::function::erf::erf;
use std::f64::consts::PI;

const QUAD_TOL: f64 = 1e-14;
/// Number of `beta_j` (j = 0..=TABLE_LEN-1) reported in a table.
const TABLE_LEN: usize = 9;
/// `beta_j` beyond this index are summed from their asymptotic expansion.
const DIRECT_TERMS: usize = 400;

/// Linear collocation step whose kernel mass is measured.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum KernelMode {
    /// `exp(nu^2 t Delta_h)`.
    Heat { t: f64 },
    /// `(Id - nu^2 tau Delta_h)^{-n}`.
    Resolvent { tau: f64, n: u32 },
}

impl KernelMode {
    pub(crate) fn multiplier(self, nu: f64) -> impl Fn(i64) -> f64 {
        move |k| {
            let q = 4.0 * PI * PI * nu * nu * (k * k) as f64;
            match self {
                KernelMode::Heat { t } => (-q * t).exp(),
                KernelMode::Resolvent { tau, n } => (1.0 + q * tau).powi(-(n as i32)),
            }
        }
    }
}

/// `w_j = (1/N) Re sum_{-N/2 < k <= N/2} m(k) e^{2 pi i k j / N}`, so that the
/// step maps node values `U` to `sum_j w_j U_{l-j}`.
pub fn discrete_weights(n: usize, nu: f64, mode: KernelMode) -> Result<Vec<f64>> {
    let g = GridSpec::collocation(1, n)?;
    let m = mode.multiplier(nu);
    let field = SpectralField::zeros(g).map_coeffs(|k, _| m(k[0]).into());
    Ok(field.values().iter().map(|v| v / n as f64).collect())
}

/// Kernel mass of a collocation step with the `beta_j` of its continuum limit.
#[derive(Debug, Clone, Serialize)]
pub struct AmplificationTable {
    pub kernel: KernelMode,
    pub n: usize,
    pub nu: f64,
    /// `k0 = 2 N nu sqrt(t)` (heat) or `k1 = N nu sqrt(tau)` (resolvent).
    pub scale: f64,
    /// `b = pi^2 k0^2 / 4` (heat only).
    pub b: Option<f64>,
    /// `beta_0 ..= beta_8`; empty for resolvent powers `n > 1`.
    pub coefficients: Vec<f64>,
    /// `sum_{|j| <= 3} beta_j` and `sum_{|j| <= 3} |beta_j|`.
    pub signed_sum3: Option<f64>,
    pub abs_sum3: Option<f64>,
    /// `A_{N,t}` or `B_{N,n}` = `sum_j |w_j|`, from the discrete weights.
    pub total: f64,
    /// `sum_{j in Z} |beta_j|` (heat only).
    pub beta_abs_sum: Option<f64>,
    /// `2 int_0^1 e^{-b s^2} ds - e^{-b}`, valid for `b <= 1/2`.
    pub closed_form: Option<f64>,
}

fn sums3(c: &[f64]) -> (Option<f64>, Option<f64>) {
    if c.len() < 4 {
        return (None, None);
    }
    let s = c[0] + 2.0 * (c[1] + c[2] + c[3]);
    let a = c[0].abs() + 2.0 * (c[1].abs() + c[2].abs() + c[3].abs());
    (Some(s), Some(a))
}

fn check_even(n: usize) -> Result<()> {
    if n < 2 || n % 2 != 0 {
        return domain(format!("N must be even and at least 2, got {n}"));
    }
    Ok(())
}

fn cos_moment(g: impl Fn(f64) -> f64, j: usize) -> Result<f64> {
    let pieces = j.max(1);
    let breaks: Vec<f64> = (0..=pieces).map(|i| i as f64 / pieces as f64).collect();
    let w = PI * j as f64;
    Ok(integrate_pieces(&|s| g(s) * (w * s).cos(), &breaks, QUAD_TOL * pieces as f64)?)
}

/// `beta_j = int_0^1 e^{-b s^2} cos(pi j s) ds`.
pub fn heat_beta(b: f64, j: usize) -> Result<f64> {
    cos_moment(|s| (-b * s * s).exp(), j)
}

/// `beta_j = int_0^1 cos(pi j s) / (1 + (k1 pi s)^2) ds`.
pub fn resolvent_beta(k1: f64, j: usize) -> Result<f64> {
    cos_moment(|s| 1.0 / (1.0 + (k1 * PI * s).powi(2)), j)
}

/// `2 int_0^1 e^{-b s^2} ds - e^{-b}`.
pub fn heat_closed_form(b: f64) -> f64 {
    let int = if b > 0.0 { 0.5 * (PI / b).sqrt() * erf(b.sqrt()) } else { 1.0 };
    2.0 * int - (-b).exp()
}

/// `sum_{j >= a} j^{-p}` by Euler-Maclaurin (a large).
fn zeta_tail(p: f64, a: f64) -> f64 {
    a.powf(1.0 - p) / (p - 1.0) + 0.5 * a.powf(-p) + p / 12.0 * a.powf(-p - 1.0)
        - p * (p + 1.0) * (p + 2.0) / 720.0 * a.powf(-p - 3.0)
}

/// Physicists' Hermite polynomials `H_0 ..= H_n` at `x`.
fn hermite(n: usize, x: f64) -> Vec<f64> {
    let mut h = vec![1.0, 2.0 * x];
    for k in 1..n {
        h.push(2.0 * x * h[k] - 2.0 * k as f64 * h[k - 1]);
    }
    h.truncate(n + 1);
    h
}

/// `sum_{j in Z} |beta_j|` for the heat coefficients. Terms up to
/// `j = 400` are integrated; beyond that `beta_j` follows
/// `(-1)^j sum_m (-1)^m g^{(2m+1)}(1) / (pi j)^{2m+2}` with `g = e^{-b s^2}`,
/// whose sign is eventually fixed.
pub fn heat_beta_abs_sum(b: f64) -> Result<f64> {
    if !(b >= 0.0 && b.is_finite()) {
        return domain(format!("b must be non-negative, got {b}"));
    }
    let mut s = heat_beta(b, 0)?.abs();
    for j in 1..=DIRECT_TERMS {
        s += 2.0 * heat_beta(b, j)?.abs();
    }
    let rb = b.sqrt();
    let h = hermite(5, rb);
    let deriv = |n: usize| (-rb).powi(n as i32) * h[n] * (-b).exp();
    let a = (DIRECT_TERMS + 1) as f64;
    let tail: f64 = (0..3)
        .map(|m| {
            let p = (2 * m + 2) as f64;
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            sign * deriv(2 * m + 1) * PI.powf(-p) * zeta_tail(p, a)
        })
        .sum();
    Ok(s + 2.0 * tail.abs())
}

pub fn heat_amplification(n: usize, t: f64, nu: f64) -> Result<AmplificationTable> {
    check_even(n)?;
    if !(t > 0.0 && nu > 0.0) {
        return domain(format!("heat amplification needs t, nu > 0, got ({t}, {nu})"));
    }
    let kernel = KernelMode::Heat { t };
    let total = discrete_weights(n, nu, kernel)?.iter().map(|w| w.abs()).sum();
    let k0 = 2.0 * n as f64 * nu * t.sqrt();
    let b = 0.25 * PI * PI * k0 * k0;
    let coefficients = (0..TABLE_LEN).map(|j| heat_beta(b, j)).collect::<Result<Vec<_>>>()?;
    let (signed_sum3, abs_sum3) = sums3(&coefficients);
    Ok(AmplificationTable {
        kernel,
        n,
        nu,
        scale: k0,
        b: Some(b),
        coefficients,
        signed_sum3,
        abs_sum3,
        total,
        beta_abs_sum: Some(heat_beta_abs_sum(b)?),
        closed_form: (b <= 0.5).then(|| heat_closed_form(b)),
    })
}

pub fn resolvent_amplification(n: usize, tau: f64, steps: u32, nu: f64) -> Result<AmplificationTable> {
    check_even(n)?;
    if !(tau > 0.0 && nu > 0.0 && steps >= 1) {
        return domain(format!("resolvent amplification needs tau, nu > 0 and n >= 1, got ({tau}, {nu}, {steps})"));
    }
    let kernel = KernelMode::Resolvent { tau, n: steps };
    let total = discrete_weights(n, nu, kernel)?.iter().map(|w| w.abs()).sum();
    let k1 = n as f64 * nu * tau.sqrt();
    let coefficients = if steps == 1 {
        (0..TABLE_LEN).map(|j| resolvent_beta(k1, j)).collect::<Result<Vec<_>>>()?
    } else {
        Vec::new()
    };
    let (signed_sum3, abs_sum3) = sums3(&coefficients);
    Ok(AmplificationTable {
        kernel,
        n,
        nu,
        scale: k1,
        b: None,
        coefficients,
        signed_sum3,
        abs_sum3,
        total,
        beta_abs_sum: None,
        closed_form: None,
    })
}

/// `sup (A_{N,t} - 1)` over `samples` log-spaced times with
/// `N^2 nu^2 t` in `[1e-4, 100 log N)`. Returns the excess and its time.
pub fn heat_small_time_excess(n: usize, nu: f64, samples: usize) -> Result<(f64, f64)> {
    check_even(n)?;
    let scale = (n as f64 * nu).powi(2);
    let (lo, hi) = (1e-4f64.ln(), (100.0 * (n as f64).ln()).ln());
    let mut best = (f64::NEG_INFINITY, 0.0);
    for i in 0..samples.max(2) {
        let t = (lo + (hi - lo) * i as f64 / samples.max(2) as f64).exp() / scale;
        let a: f64 = discrete_weights(n, nu, KernelMode::Heat { t })?.iter().map(|w| w.abs()).sum();
        if a - 1.0 > best.0 {
            best = (a - 1.0, t);
        }
    }
    Ok(best)
}

/// Both sides of `a^{-n} = (1/(n-1)!) int_0^inf e^{-s a} s^{n-1} ds`.
pub fn resolvent_bridge(a: f64, n: u32) -> Result<(f64, f64)> {
    if !(a > 0.0 && n >= 1) {
        return domain(format!("bridge needs a > 0 and n >= 1, got ({a}, {n})"));
    }
    let fact: f64 = (1..n).map(f64::from).product();
    let f = |s: f64| (-s * a).exp() * s.powi(n as i32 - 1) / fact;
    // the integrand peaks at (n-1)/a and is below e^{-60} relative past this
    let end = (n as f64 + 60.0) / a;
    let breaks: Vec<f64> = (0..=64).map(|i| end * i as f64 / 64.0).collect();
    Ok((a.powi(-(n as i32)), integrate_pieces(&f, &breaks, 1e-15)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_have_unit_mass() {
        for mode in [KernelMode::Heat { t: 1e-4 }, KernelMode::Resolvent { tau: 1e-3, n: 3 }] {
            let w = discrete_weights(64, 0.7, mode).unwrap();
            assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-13);
            assert!((w[1] - w[63]).abs() < 1e-15);
        }
    }

    #[test]
    fn closed_form_limits() {
        assert!((heat_closed_form(0.0) - 1.0).abs() < 1e-15);
        assert!((heat_closed_form(1e-9) - 1.0).abs() < 1e-8);
        let h = hermite(3, 0.5);
        assert_eq!(h, vec![1.0, 1.0, -1.0, -5.0]);
    }
}
