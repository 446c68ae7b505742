use crate::{KernelError, Result, Threshold};
use serde::Serialize;
use std::f64::consts::PI;

#[derive(Debug, Clone, Serialize)]
pub struct DiscreteKernel {
    pub n: usize,
    pub nu: f64,
    pub tau: f64,
    /// `nu sqrt(tau)`.
    pub beta: f64,
    /// Kernel at the nodes `l/N`, `l = 0..N`.
    pub values: Vec<f64>,
    pub min_value: f64,
    pub positive: bool,
    /// `4 + e^{1/(2 beta)} / (pi^2 beta)`.
    pub threshold: Threshold,
    /// Whether `N` clears the threshold.
    pub above_threshold: bool,
    /// `(1/N) sum_l K_h(l/N)`; one up to round-off.
    pub mean: f64,
    /// `(1/N) sum_l |K_h(l/N)|`.
    pub discrete_l1: f64,
}

/// `Re sum_{-N/2 < k <= N/2} (1 + s k^2)^{-1} e^{2 pi i k x}`.
pub fn phi_n(n: usize, s: f64, x: f64) -> Result<f64> {
    if n == 0 || n % 2 == 1 {
        return Err(KernelError::Domain(format!("phi_N needs even N, got {n}")));
    }
    let h = (n / 2) as i64;
    let mut sum = 1.0;
    for k in 1..h {
        let kf = k as f64;
        sum += 2.0 * (2.0 * PI * kf * x).cos() / (1.0 + s * kf * kf);
    }
    let hf = h as f64;
    sum += (2.0 * PI * hf * x).cos() / (1.0 + s * hf * hf);
    Ok(sum)
}

/// Collocation kernel of `(1 - nu^2 tau Delta_h)^{-1}` at the `N` nodes.
pub fn discrete_helmholtz_kernel(n: usize, nu: f64, tau: f64) -> Result<DiscreteKernel> {
    if n == 0 || n % 2 == 1 {
        return Err(KernelError::Domain(format!("discrete kernel needs even N, got {n}")));
    }
    if !(nu > 0.0 && tau > 0.0) {
        return Err(KernelError::Domain(format!("need nu, tau > 0, got {nu}, {tau}")));
    }
    let beta = nu * tau.sqrt();
    let s = 4.0 * PI * PI * beta * beta;
    let c: Vec<f64> = (0..=n / 2).map(|k| 1.0 / (1.0 + s * (k * k) as f64)).collect();
    let h = n / 2;
    let values: Vec<f64> = (0..n)
        .map(|l| {
            let mut v = c[0];
            for (k, ck) in c.iter().enumerate().take(h).skip(1) {
                // index arithmetic keeps the cosine argument exact
                let r = (k * l) % n;
                v += 2.0 * ck * (2.0 * PI * r as f64 / n as f64).cos();
            }
            v + c[h] * if l % 2 == 0 { 1.0 } else { -1.0 }
        })
        .collect();
    let log_threshold = -(PI * PI * beta).ln() + 0.5 / beta;
    let threshold = if log_threshold > 53.0 * 2f64.ln() {
        Threshold::Astronomical { log_value: log_threshold }
    } else {
        Threshold::Finite { value: 4.0 + log_threshold.exp() }
    };
    let above_threshold = threshold.value().is_some_and(|t| n as f64 >= t);
    let min_value = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let nf = n as f64;
    Ok(DiscreteKernel {
        n,
        nu,
        tau,
        beta,
        mean: values.iter().sum::<f64>() / nf,
        discrete_l1: values.iter().map(|v| v.abs()).sum::<f64>() / nf,
        min_value,
        positive: min_value > 0.0,
        threshold,
        above_threshold,
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases_by_hand() {
        let s = 0.05;
        let p = |x| phi_n(4, s, x).unwrap();
        assert!((p(0.0) - (1.0 + 2.0 / (1.0 + s) + 1.0 / (1.0 + 4.0 * s))).abs() < 1e-14);
        assert!((p(0.25) - (1.0 - 1.0 / (1.0 + 4.0 * s))).abs() < 1e-14);
        assert!((p(0.5) - (1.0 - 2.0 / (1.0 + s) + 1.0 / (1.0 + 4.0 * s))).abs() < 1e-14);
        assert!(phi_n(3, s, 0.0).is_err());
    }

    #[test]
    fn nodes_agree_with_phi() {
        let (nu, tau) = (0.3, 0.01);
        let k = discrete_helmholtz_kernel(12, nu, tau).unwrap();
        let s = 4.0 * PI * PI * nu * nu * tau;
        for (l, v) in k.values.iter().enumerate() {
            assert!((v - phi_n(12, s, l as f64 / 12.0).unwrap()).abs() < 1e-12);
        }
        assert!(discrete_helmholtz_kernel(7, nu, tau).is_err());
    }
}
