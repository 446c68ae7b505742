use crate::{check_beta, KernelError, Result};
use fourier_core::{fft::fft_nd, next_fft_size, Complex64};
use serde::Serialize;
use std::f64::consts::PI;

/// `(1 + 4 pi^2 beta |k|^2)^{-s/2}`.
pub fn multiplier(beta: f64, s: f64, k2: f64) -> f64 {
    (1.0 + 4.0 * PI * PI * beta * k2).powf(-0.5 * s)
}

#[derive(Debug, Clone, Serialize)]
pub struct KernelProfile {
    pub d: usize,
    pub n: usize,
    pub beta: f64,
    pub s: f64,
    pub points_per_axis: usize,
    #[serde(skip)]
    pub samples: Vec<f64>,
    pub min_value: f64,
    pub argmin: Vec<f64>,
    /// Riemann-sum estimate of the L1 norm from the samples.
    pub l1_norm: f64,
    /// Lower bound on the true minimum from the sampled minimum and a
    /// derivative bound.
    pub certified_lower: f64,
    pub positive: bool,
}

fn default_refinement(d: usize) -> usize {
    match d {
        1 => 64,
        2 => 16,
        _ => 4,
    }
}

fn band(d: usize, n: usize) -> impl Iterator<Item = [i64; 3]> {
    let w = 2 * n + 1;
    let len = w.pow(d as u32);
    (0..len).map(move |mut i| {
        let mut k = [0i64; 3];
        for ax in (0..d).rev() {
            k[ax] = (i % w) as i64 - n as i64;
            i /= w;
        }
        k
    })
}

fn norm2(k: &[i64; 3]) -> f64 {
    k.iter().map(|&x| (x * x) as f64).sum()
}

/// Direct evaluation of `F_{N,s}` at a point.
pub fn kernel_eval(d: usize, n: usize, beta: f64, s: f64, x: &[f64]) -> f64 {
    if d == 1 {
        let mut acc = 1.0;
        for k in 1..=n {
            acc += 2.0 * multiplier(beta, s, (k * k) as f64) * (2.0 * PI * k as f64 * x[0]).cos();
        }
        return acc;
    }
    band(d, n)
        .map(|k| {
            let ph: f64 = (0..d).map(|ax| k[ax] as f64 * x[ax]).sum();
            multiplier(beta, s, norm2(&k)) * (2.0 * PI * ph).cos()
        })
        .sum()
}

fn validate(d: usize, beta: f64, s: f64) -> Result<()> {
    check_beta(beta)?;
    if !(s > 0.0) {
        return Err(KernelError::Exponent(s));
    }
    if !(1..=3).contains(&d) {
        return Err(KernelError::Dimension(d));
    }
    Ok(())
}

/// Samples of `F_{N,s}` on `p^d` uniform nodes via one inverse FFT.
pub(crate) fn sample_kernel(d: usize, n: usize, beta: f64, s: f64, p: usize) -> Vec<f64> {
    let mut buf = vec![Complex64::new(0.0, 0.0); p.pow(d as u32)];
    for k in band(d, n) {
        let mut idx = 0usize;
        for &kk in &k[..d] {
            idx = idx * p + kk.rem_euclid(p as i64) as usize;
        }
        buf[idx] += multiplier(beta, s, norm2(&k));
    }
    fft_nd(&mut buf, p, d, true);
    buf.iter().map(|z| z.re).collect()
}

/// Dense profile of `F_{N,s}` with a positivity certificate.
///
/// Samples `refinement (2N+1)` points per axis, refines the smallest local
/// minima by golden-section (d = 1) or compass search (d > 1), and bounds
/// the true minimum below using `|grad F| <= sum 2 pi |k| c_k` and the
/// multilinear interpolation error `h^2/8 sum 4 pi^2 |k|^2 c_k`.
pub fn kernel_profile(
    d: usize,
    n: usize,
    beta: f64,
    s: f64,
    refinement: Option<usize>,
) -> Result<KernelProfile> {
    validate(d, beta, s)?;
    let p = next_fft_size(refinement.unwrap_or_else(|| default_refinement(d)) * (2 * n + 1));
    let samples = sample_kernel(d, n, beta, s, p);
    let h = 1.0 / p as f64;

    let (mut imin, mut vmin) = (0usize, f64::INFINITY);
    for (i, &v) in samples.iter().enumerate() {
        if v < vmin {
            vmin = v;
            imin = i;
        }
    }
    let l1_norm = samples.iter().map(|v| v.abs()).sum::<f64>() / samples.len() as f64;

    let (mut g1, mut g2) = (0.0, 0.0);
    for k in band(d, n) {
        let c = multiplier(beta, s, norm2(&k));
        let l1k: f64 = k.iter().map(|x| x.unsigned_abs() as f64).sum();
        g1 += 2.0 * PI * l1k * c;
        g2 += 4.0 * PI * PI * norm2(&k) * c;
    }
    let slack = (0.5 * h * g1).min(0.125 * h * h * g2);
    let certified_lower = vmin - slack;

    let mut argmin = node_coords(imin, p, d);
    let mut min_value = vmin;
    let f = |x: &[f64]| kernel_eval(d, n, beta, s, x);
    if d == 1 {
        for i in smallest_local_minima(&samples, 5) {
            let a = (i as f64 - 1.0) * h;
            let (x, v) = golden(&|x| f(&[x]), a, a + 2.0 * h);
            if v < min_value || (v == min_value && x.rem_euclid(1.0) < argmin[0]) {
                min_value = v;
                argmin = vec![x.rem_euclid(1.0)];
            }
        }
    } else {
        let (x, v) = compass(&f, &argmin, h);
        if v < min_value {
            min_value = v;
            argmin = x.iter().map(|c| c.rem_euclid(1.0)).collect();
        }
    }
    let positive = min_value > 0.0 && certified_lower > 0.0;
    Ok(KernelProfile {
        d,
        n,
        beta,
        s,
        points_per_axis: p,
        samples,
        min_value,
        argmin,
        l1_norm,
        certified_lower,
        positive,
    })
}

fn node_coords(mut i: usize, p: usize, d: usize) -> Vec<f64> {
    let mut x = vec![0.0; d];
    for ax in (0..d).rev() {
        x[ax] = (i % p) as f64 / p as f64;
        i /= p;
    }
    x
}

fn smallest_local_minima(v: &[f64], count: usize) -> Vec<usize> {
    let n = v.len();
    let mut mins: Vec<usize> = (0..n)
        .filter(|&i| v[i] <= v[(i + n - 1) % n] && v[i] <= v[(i + 1) % n])
        .collect();
    mins.sort_by(|&a, &b| v[a].total_cmp(&v[b]).then(a.cmp(&b)));
    mins.truncate(count);
    mins
}

fn golden(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - r * (b - a);
    let mut e = a + r * (b - a);
    let (mut fc, mut fe) = (f(c), f(e));
    for _ in 0..80 {
        if fc <= fe {
            b = e;
            e = c;
            fe = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = e;
            fc = fe;
            e = a + r * (b - a);
            fe = f(e);
        }
        if b - a < 1e-15 {
            break;
        }
    }
    if fc <= fe {
        (c, fc)
    } else {
        (e, fe)
    }
}

fn compass(f: &impl Fn(&[f64]) -> f64, x0: &[f64], h: f64) -> (Vec<f64>, f64) {
    let mut x = x0.to_vec();
    let mut fx = f(&x);
    let mut step = h;
    while step > h * 1e-6 {
        let mut improved = false;
        for ax in 0..x.len() {
            for sgn in [-1.0, 1.0] {
                let mut y = x.clone();
                y[ax] += sgn * step;
                let fy = f(&y);
                if fy < fx {
                    x = y;
                    fx = fy;
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    (x, fx)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Threshold {
    Finite { value: f64 },
    /// Above `2^53`; only the natural log is reported.
    Astronomical { log_value: f64 },
}

impl Threshold {
    pub fn value(&self) -> Option<f64> {
        match self {
            Threshold::Finite { value } => Some(*value),
            Threshold::Astronomical { .. } => None,
        }
    }
}

/// `N_0(beta) = e^{1/(2 sqrt beta)} / (2 pi^2 sqrt beta)`, evaluated in log space.
pub fn positivity_threshold(beta: f64) -> Result<Threshold> {
    check_beta(beta)?;
    let sb = beta.sqrt();
    let log_value = 0.5 / sb - (2.0 * PI * PI * sb).ln();
    if log_value > 53.0 * 2f64.ln() {
        Ok(Threshold::Astronomical { log_value })
    } else {
        Ok(Threshold::Finite { value: log_value.exp() })
    }
}

/// `1 / (2 sqrt 3 pi sqrt beta)`: from here on the Helmholtz multipliers are convex in k.
pub fn convexity_onset(beta: f64) -> f64 {
    1.0 / (2.0 * 3f64.sqrt() * PI * beta.sqrt())
}

#[derive(Debug, Clone, Serialize)]
pub struct ThresholdReport {
    pub beta: f64,
    pub formula_n0: Threshold,
    /// Smallest N such that every N' in `N..=scanned_up_to` is certified positive.
    pub empirical_n0: Option<usize>,
    /// Smallest and largest scanned N with a negative kernel minimum.
    pub window: Option<(usize, usize)>,
    pub scanned_up_to: usize,
}

/// Scan the 1D Helmholtz kernel for `N = 1..=n_max`.
pub fn threshold_report(beta: f64, n_max: usize) -> Result<ThresholdReport> {
    let formula_n0 = positivity_threshold(beta)?;
    let mut verdicts = Vec::with_capacity(n_max);
    let mut window: Option<(usize, usize)> = None;
    for n in 1..=n_max {
        let p = kernel_profile(1, n, beta, 2.0, None)?;
        if p.min_value < 0.0 {
            window = Some(window.map_or((n, n), |(lo, _)| (lo, n)));
        }
        verdicts.push(p.positive);
    }
    let mut empirical_n0 = None;
    for n in (1..=n_max).rev() {
        if verdicts[n - 1] {
            empirical_n0 = Some(n);
        } else {
            break;
        }
    }
    Ok(ThresholdReport { beta, formula_n0, empirical_n0, window, scanned_up_to: n_max })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fft_samples_match_direct_sum() {
        let p = 40;
        let v = sample_kernel(1, 5, 0.3, 1.3, p);
        for (j, vj) in v.iter().enumerate() {
            let x = j as f64 / p as f64;
            assert!((vj - kernel_eval(1, 5, 0.3, 1.3, &[x])).abs() < 1e-12);
        }
        let v2 = sample_kernel(2, 3, 0.1, 2.0, 16);
        let x = [3.0 / 16.0, 5.0 / 16.0];
        assert!((v2[3 * 16 + 5] - kernel_eval(2, 3, 0.1, 2.0, &x)).abs() < 1e-12);
    }

    #[test]
    fn zero_cutoff_is_constant() {
        let p = kernel_profile(1, 0, 0.7, 1.5, None).unwrap();
        assert!(p.positive);
        assert!((p.min_value - 1.0).abs() < 1e-14);
        assert!((p.l1_norm - 1.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(kernel_profile(1, 3, 0.0, 2.0, None).is_err());
        assert!(kernel_profile(1, 3, 1.0, 0.0, None).is_err());
        assert!(kernel_profile(4, 3, 1.0, 2.0, None).is_err());
    }

    #[test]
    fn threshold_formula() {
        let t = positivity_threshold(1.0).unwrap().value().unwrap();
        assert!((t - 0.5f64.exp() / (2.0 * PI * PI)).abs() < 1e-15);
        assert!(matches!(positivity_threshold(1e-4).unwrap(), Threshold::Astronomical { .. }));
    }

    #[test]
    fn golden_finds_parabola_minimum() {
        let (x, v) = golden(&|x| (x - 0.3) * (x - 0.3) + 1.0, 0.0, 1.0);
        assert!((x - 0.3).abs() < 1e-7);
        assert!((v - 1.0).abs() < 1e-14);
    }
}
