use crate::fit::linear_fit;
use crate::quad::integrate;
use crate::{KernelError, Result};
use serde::Serialize;

/// `F(z) = e^{-z} int_0^inf e^{-zt} (t + t^2/2)^{-1/2} dt`.
pub fn appendix_a_integrand(z: f64) -> Result<f64> {
    if !(z > 0.0) {
        return Err(KernelError::Domain(format!("F(z) needs z > 0, got {z}")));
    }
    // t = u^2 on [0, 1]
    let head = integrate(&|u: f64| 2.0 * (-z * u * u).exp() / (1.0 + 0.5 * u * u).sqrt(), 0.0, 1.0, 1e-13)?;
    // t = e^u on [1, inf), cut where z t reaches e^5
    let u_end = (5.0 - z.ln()).max(1.0);
    let f = |u: f64| (-z * u.exp()).exp() / ((-u).exp() + 0.5).sqrt();
    let mut tail = 0.0;
    let mut a = 0.0;
    while a < u_end {
        let b = (a + 1.0).min(u_end);
        tail += integrate(&f, a, b, 1e-13)?;
        a = b;
    }
    Ok((-z).exp() * (head + tail))
}

#[derive(Debug, Clone, Serialize)]
pub struct AppendixAFit {
    pub z_min: f64,
    pub z_max: f64,
    /// Constant term of `F(z) ~ c1 - c2 log z`.
    pub c1: f64,
    pub c2: f64,
    pub max_residual: f64,
    /// `max |residual| / (z |log z|)` over the grid.
    pub scaled_residual: f64,
    pub samples: Vec<(f64, f64)>,
}

/// Fit `c1 - c2 log z` on `points` log-spaced values in `[z_min, z_max]`.
pub fn appendix_a_fit(z_min: f64, z_max: f64, points: usize) -> Result<AppendixAFit> {
    if !(z_min > 0.0 && z_max > z_min && z_max < 1.0) || points < 2 {
        return Err(KernelError::Domain(format!(
            "fit window needs 0 < z_min < z_max < 1 and 2+ points, got [{z_min}, {z_max}], {points}"
        )));
    }
    let (la, lb) = (z_min.ln(), z_max.ln());
    let samples = (0..points)
        .map(|i| {
            let z = (la + (lb - la) * i as f64 / (points - 1) as f64).exp();
            appendix_a_integrand(z).map(|f| (z, f))
        })
        .collect::<Result<Vec<_>>>()?;
    let x: Vec<f64> = samples.iter().map(|p| p.0.ln()).collect();
    let y: Vec<f64> = samples.iter().map(|p| p.1).collect();
    let line = linear_fit(&x, &y).expect("distinct abscissae");
    let (mut max_residual, mut scaled_residual) = (0.0f64, 0.0f64);
    for &(z, f) in &samples {
        let r = (f - line.intercept - line.slope * z.ln()).abs();
        max_residual = max_residual.max(r);
        scaled_residual = scaled_residual.max(r / (z * z.ln().abs()));
    }
    Ok(AppendixAFit {
        z_min,
        z_max,
        c1: line.intercept,
        c2: -line.slope,
        max_residual,
        scaled_residual,
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn large_z_laplace_asymptotics() {
        // as z -> inf, F(z) ~ e^{-z} sqrt(pi / z)
        let z: f64 = 400.0;
        let f = appendix_a_integrand(z).unwrap();
        let lead = (-z).exp() * (std::f64::consts::PI / z).sqrt();
        assert!((f / lead - 1.0).abs() < 1e-2);
        assert!(appendix_a_integrand(0.0).is_err());
    }
}
