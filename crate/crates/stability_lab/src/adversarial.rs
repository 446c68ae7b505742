use crate::amplification::{discrete_weights, KernelMode};
use crate::{domain, Result};
use fourier_core::{GridSpec, SpectralField};
use schemes::{AdversarialKernel, InitialData};
use serde::Serialize;

/// Apply one linear collocation step (heat flow or resolvent power) to node values.
pub fn linear_step(values: &[f64], nu: f64, mode: KernelMode) -> Result<Vec<f64>> {
    let g = GridSpec::collocation(1, values.len())?;
    let u = SpectralField::from_values(g, values.to_vec())?;
    let m = mode.multiplier(nu);
    Ok(u.apply_real_multiplier(|k| m(k[0])).into_values())
}

/// The step at which the sign data is evaluated: heat time `t = nu^{-2} N^{-2} / 4`
/// or one resolvent step with `tau = nu^{-2} N^{-2} / 4`.
pub fn adversarial_mode(n: usize, nu: f64, kernel: AdversarialKernel) -> KernelMode {
    let s = 0.25 / (nu * nu * (n * n) as f64);
    match kernel {
        AdversarialKernel::Heat => KernelMode::Heat { t: s },
        AdversarialKernel::Resolvent => KernelMode::Resolvent { tau: s, n: 1 },
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AdversarialData {
    pub n: usize,
    pub nu: f64,
    pub step: KernelMode,
    /// Witness node `l = floor(N/4)`.
    pub node: usize,
    /// Zero buffer `4 <= |j| <= floor(N^{1/3})` around the witness.
    pub buffer: usize,
    pub initial: InitialData,
    /// `sum_{|j| <= 3} |w_j|`, the value the sign pattern collects.
    pub predicted: f64,
    /// `|(step U)(l)|` from running the step.
    pub witness: f64,
}

/// Node data in `[-1, 1]` whose image under one heat/resolvent step exceeds 1
/// at `l = floor(N/4)`: `U_{l+j} = sgn(w_j)` for `|j| <= 3`, where `w_j` are
/// the discrete kernel weights, and zero at every other node.
pub fn adversarial_data(n: usize, nu: f64, kernel: AdversarialKernel) -> Result<AdversarialData> {
    if n < 64 || n % 2 != 0 {
        return domain(format!("adversarial data needs even N >= 64, got {n}"));
    }
    if !(nu > 0.0 && nu.is_finite()) {
        return domain(format!("nu must be positive, got {nu}"));
    }
    let step = adversarial_mode(n, nu, kernel);
    let w = discrete_weights(n, nu, step)?;
    let node = n / 4;
    let buffer = (n as f64).cbrt().floor() as usize;
    let mut values = vec![0.0; n];
    let mut predicted = 0.0;
    for j in -3i64..=3 {
        let wj = w[j.rem_euclid(n as i64) as usize];
        values[(node as i64 + j).rem_euclid(n as i64) as usize] = wj.signum();
        predicted += wj.abs();
    }
    let out = linear_step(&values, nu, step)?;
    Ok(AdversarialData {
        n,
        nu,
        step,
        node,
        buffer,
        initial: InitialData::NodeSamples { values },
        predicted,
        witness: out[node].abs(),
    })
}
