use crate::{domain, Result};
use serde::Serialize;

/// `(1 + tau) z - tau z^3`.
pub fn f_tau(z: f64, tau: f64) -> f64 {
    (1.0 + tau) * z - tau * z * z * z
}

/// `max_{|x| <= alpha} |f_tau(x)|` with its landmarks.
#[derive(Debug, Clone, Serialize)]
pub struct EnvelopeReport {
    pub tau: f64,
    pub alpha: f64,
    pub envelope: f64,
    /// Positive critical point `sqrt((1 + tau) / (3 tau))`.
    pub critical_point: f64,
    /// `f_tau(x_c) = (2/3)(1 + tau)^{3/2} / sqrt(3 tau)`.
    pub critical_value: f64,
    /// `sqrt((2 + tau) / tau) = sqrt(1 + 2/tau)`, where `f_tau(x) = -x`.
    pub reflection_point: f64,
    /// `1 - 2 tau`, the slope of `f_tau` at 1.
    pub theta: f64,
    /// Maximum over `10^5` uniform samples of `[0, alpha]`.
    pub sampled: f64,
}

pub fn cubic_envelope(tau: f64, alpha: f64) -> Result<EnvelopeReport> {
    if !(tau > 0.0 && alpha > 0.0 && tau.is_finite() && alpha.is_finite()) {
        return domain(format!("cubic_envelope needs tau, alpha > 0, got ({tau}, {alpha})"));
    }
    let xc = ((1.0 + tau) / (3.0 * tau)).sqrt();
    let pc = 2.0 / 3.0 * (1.0 + tau).powf(1.5) / (3.0 * tau).sqrt();
    let mut envelope = f_tau(alpha, tau).abs();
    if xc <= alpha {
        envelope = envelope.max(pc);
    }
    // f_tau is odd, so [0, alpha] suffices
    let m = 100_000;
    let sampled = (0..=m).map(|i| f_tau(alpha * i as f64 / m as f64, tau).abs()).fold(0.0, f64::max);
    Ok(EnvelopeReport {
        tau,
        alpha,
        envelope,
        critical_point: xc,
        critical_value: pc,
        reflection_point: ((2.0 + tau) / tau).sqrt(),
        theta: 1.0 - 2.0 * tau,
        sampled,
    })
}

fn envelope_value(tau: f64, alpha: f64) -> f64 {
    let xc = ((1.0 + tau) / (3.0 * tau)).sqrt();
    let e = f_tau(alpha, tau).abs();
    if xc <= alpha {
        e.max(f_tau(xc, tau))
    } else {
        e
    }
}

/// Orbit of `alpha_{n+1} = envelope(tau, alpha_n) + eta`.
#[derive(Debug, Clone, Serialize)]
pub struct IterationReport {
    pub tau: f64,
    pub eta: f64,
    pub alpha: Vec<f64>,
    /// The orbit overflowed before `n_max`.
    pub diverged: bool,
    /// For `tau <= 1/2`: `1 + eta <= alpha_n <= 1 + theta^n + eta (1 - theta^n)/(1 - theta)`
    /// for all `n >= 1`.
    pub decay_bounds: Option<bool>,
    /// For `1/2 <= tau <= 2`: `f_tau(x_c) + eta <= alpha_n <= alpha_0` for all `n >= 1`.
    pub trapped: Option<bool>,
}

pub fn prototype_iteration(tau: f64, eta: f64, alpha0: f64, n_max: usize) -> Result<IterationReport> {
    if !(tau > 0.0 && eta >= 0.0 && alpha0 > 0.0) {
        return domain(format!("prototype_iteration needs tau > 0, eta >= 0, alpha0 > 0, got ({tau}, {eta}, {alpha0})"));
    }
    let mut alpha = vec![alpha0];
    let mut diverged = false;
    for _ in 0..n_max {
        let next = envelope_value(tau, *alpha.last().unwrap()) + eta;
        if !next.is_finite() || next > 1e150 {
            diverged = true;
            break;
        }
        alpha.push(next);
    }
    let theta = 1.0 - 2.0 * tau;
    let tol = 1e-14;
    let decay_bounds = (tau <= 0.5).then(|| {
        alpha.iter().enumerate().skip(1).all(|(n, &a)| {
            let tn = theta.powi(n as i32);
            let upper = 1.0 + tn + eta * (1.0 - tn) / (1.0 - theta);
            a >= 1.0 + eta - tol && a <= upper + tol
        }) && !diverged
    });
    let trapped = (0.5..=2.0).contains(&tau).then(|| {
        let pc = 2.0 / 3.0 * (1.0 + tau).powf(1.5) / (3.0 * tau).sqrt();
        alpha.iter().skip(1).all(|&a| a >= pc + eta - tol && a <= alpha0 + tol) && !diverged
    });
    Ok(IterationReport { tau, eta, alpha, diverged, decay_bounds, trapped })
}

/// The largest step for which `1/2 + 1/tau >= (3/2) f_tau(x_c)^2`.
#[derive(Debug, Clone, Serialize)]
pub struct Tau1 {
    pub root: f64,
    pub closed_form: f64,
    /// `1/2 + 1/tau - (3/2) f_tau(x_c)^2` at the root.
    pub residual: f64,
    pub iterations: u32,
}

/// `1/2 + 1/x - (2/9)(1 + x)^3 / x`.
fn tau1_equation(x: f64) -> f64 {
    0.5 + 1.0 / x - 2.0 * (1.0 + x).powi(3) / (9.0 * x)
}

pub fn tau1_closed_form() -> f64 {
    let r6 = 6f64.sqrt();
    0.5 * (-2.0 + (9.0 - 3.0 * r6).cbrt() + (9.0 + 3.0 * r6).cbrt())
}

/// Bisection on `(1/2, 1)` followed by Newton polishing on the cubic
/// `4(1+x)^3 - 9x - 18 = 0`.
pub fn tau1_root() -> Tau1 {
    let (mut lo, mut hi) = (0.5, 1.0);
    let mut iterations = 0;
    while hi - lo > 1e-10 {
        let mid = 0.5 * (lo + hi);
        if tau1_equation(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..4 {
        let p = 4.0 * (1.0 + x).powi(3) - 9.0 * x - 18.0;
        let dp = 12.0 * (1.0 + x).powi(2) - 9.0;
        x -= p / dp;
        iterations += 1;
    }
    Tau1 { root: x, closed_form: tau1_closed_form(), residual: tau1_equation(x), iterations }
}

/// Smallest slack of `1/2 + 1/tau - (3/2)(f_tau(x_c) + eta0)^2` over
/// `points` uniform values of `tau` in `[lo, hi]`.
pub fn tau1_grid_check(eta0: f64, lo: f64, hi: f64, points: usize) -> f64 {
    (0..points)
        .map(|i| {
            let tau = lo + (hi - lo) * i as f64 / (points - 1).max(1) as f64;
            let m = 2.0 / 3.0 * (1.0 + tau).powf(1.5) / (3.0 * tau).sqrt() + eta0;
            0.5 + 1.0 / tau - 1.5 * m * m
        })
        .fold(f64::INFINITY, f64::min)
}
