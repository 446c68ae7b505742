use crate::{KernelError, Result};
use serde::Serialize;
use std::f64::consts::PI;

#[derive(Debug, Clone, Serialize)]
pub struct SignMasses {
    pub n: usize,
    /// `int_{Omega^+} D_N`.
    pub pos_mass: f64,
    /// `int_{Omega^-} (-D_N)`.
    pub neg_mass: f64,
    /// `Leb(Omega^+) = (N+1)/(2N+1)`.
    pub pos_measure: f64,
    /// Mass of `D_N` on each interval `(2j/(2N+1), (2j+1)/(2N+1))`.
    pub pos_intervals: Vec<f64>,
}

/// Antiderivative `x + sum_{k<=N} sin(2 pi k x)/(pi k)` of `D_N = 1 + 2 sum cos(2 pi k x)`.
fn primitive(n: usize, x: f64) -> f64 {
    x + (1..=n).map(|k| (2.0 * PI * k as f64 * x).sin() / (PI * k as f64)).sum::<f64>()
}

/// Positive and negative masses of the Dirichlet kernel `D_N` on `[0,1]`.
pub fn dirichlet_sign_masses(n: usize) -> Result<SignMasses> {
    if n < 1 {
        return Err(KernelError::Domain("dirichlet_sign_masses needs N >= 1".into()));
    }
    let w = 1.0 / (2 * n + 1) as f64;
    let piece = |i: usize| primitive(n, (i + 1) as f64 * w) - primitive(n, i as f64 * w);
    let pos_intervals: Vec<f64> = (0..=n).map(|j| piece(2 * j)).collect();
    let neg_mass = -(0..n).map(|j| piece(2 * j + 1)).sum::<f64>();
    Ok(SignMasses {
        n,
        pos_mass: pos_intervals.iter().sum(),
        neg_mass,
        pos_measure: (n + 1) as f64 / (2 * n + 1) as f64,
        pos_intervals,
    })
}
