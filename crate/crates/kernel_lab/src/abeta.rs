use crate::quad::integrate;
use crate::{check_beta, KernelError, Result};
use serde::Serialize;
use statrs::function::gamma::gamma;
use std::f64::consts::PI;

#[derive(Debug, Clone, Serialize)]
pub struct ABeta {
    pub beta: f64,
    pub s: f64,
    /// `A_beta(s) = first_integral - second_term`.
    pub value: f64,
    /// `int (<x>^{-s} - |x|^{-s}) dx` by quadrature.
    pub first_integral: f64,
    /// `sqrt(pi) Gamma((s-1)/2) / Gamma(s/2)`.
    pub first_closed_form: f64,
    /// `s c int <x>^{-s-2} x {x/c} dx` with `c = 2 pi sqrt(beta)`.
    pub second_term: f64,
}

const PIECE_TOL: f64 = 1e-13;

fn first_integral(s: f64) -> Result<f64> {
    let inner = integrate(&|x: f64| (-0.5 * s * (x * x).ln_1p()).exp() - x.powf(-s), 0.0, 1.0, PIECE_TOL)?;
    // x = 1/t on (1, inf)
    let outer = integrate(
        &|t: f64| t.powf(s - 2.0) * (-0.5 * s * (t * t).ln_1p()).exp_m1(),
        0.0,
        1.0,
        PIECE_TOL,
    )?;
    Ok(2.0 * (inner + outer))
}

/// `int_0^inf g(x) (2{x/c} - 1) dx` with `g = <x>^{-s-2} x`; the negative half-line
/// folds onto the positive one because `{-y} = 1 - {y}` off the integers.
fn sawtooth_integral(s: f64, c: f64) -> Result<f64> {
    let g = |x: f64| x * (1.0 + x * x).powf(-0.5 * s - 1.0);
    // past X the remainder is -(c/6) g(X) + O(c^3 X^{-s-4})
    let pieces = (400.0f64.max(400.0 / c)).ceil() as usize;
    let mut sum = 0.0;
    for j in 0..pieces {
        let a = j as f64 * c;
        let f = |x: f64| g(x) * (2.0 * (x / c - j as f64) - 1.0);
        sum += integrate(&f, a, a + c, PIECE_TOL)?;
    }
    let x_end = pieces as f64 * c;
    Ok(sum - c / 6.0 * g(x_end))
}

pub fn a_beta(beta: f64, s: f64) -> Result<ABeta> {
    check_beta(beta)?;
    if !(s > 0.0 && s < 1.0) {
        return Err(KernelError::Domain(format!("A_beta(s) needs 0 < s < 1, got {s}")));
    }
    let c = 2.0 * PI * beta.sqrt();
    let first = first_integral(s)?;
    let second = s * c * sawtooth_integral(s, c)?;
    Ok(ABeta {
        beta,
        s,
        value: first - second,
        first_integral: first,
        first_closed_form: PI.sqrt() * gamma(0.5 * (s - 1.0)) / gamma(0.5 * s),
        second_term: second,
    })
}
