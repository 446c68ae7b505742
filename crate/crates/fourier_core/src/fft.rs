//! Thin wrappers over `rustfft` for periodic d-dimensional data.

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::sync::{Arc, Mutex, OnceLock};

fn planner() -> &'static Mutex<FftPlanner<f64>> {
    static P: OnceLock<Mutex<FftPlanner<f64>>> = OnceLock::new();
    P.get_or_init(|| Mutex::new(FftPlanner::new()))
}

fn plan(len: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    let mut p = planner().lock().expect("fft planner poisoned");
    if inverse {
        p.plan_fft_inverse(len)
    } else {
        p.plan_fft_forward(len)
    }
}

/// Unnormalised in-place transform of an `m^d` array along every axis.
/// Forward uses `exp(-2 pi i k j / m)`, inverse `exp(+2 pi i k j / m)`.
pub fn fft_nd(data: &mut [Complex64], m: usize, d: usize, inverse: bool) {
    debug_assert_eq!(data.len(), m.pow(d as u32));
    let f = plan(m, inverse);
    if d == 1 {
        f.process(data);
        return;
    }
    let mut line = vec![Complex64::new(0.0, 0.0); m];
    let total = data.len();
    for ax in 0..d {
        let stride = m.pow((d - 1 - ax) as u32);
        if stride == 1 {
            f.process(data);
            continue;
        }
        let block = stride * m;
        for base in (0..total).step_by(block) {
            for off in 0..stride {
                for (i, v) in line.iter_mut().enumerate() {
                    *v = data[base + off + i * stride];
                }
                f.process(&mut line);
                for (i, v) in line.iter().enumerate() {
                    data[base + off + i * stride] = *v;
                }
            }
        }
    }
}

/// `(1/m) sum_j x_j exp(-2 pi i k j / m)` for a real 1D signal.
pub fn dft_normalized(x: &[f64]) -> Vec<Complex64> {
    let m = x.len();
    let mut buf: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    fft_nd(&mut buf, m, 1, false);
    let s = 1.0 / m as f64;
    buf.iter_mut().for_each(|c| *c *= s);
    buf
}

/// Real part of `sum_k c_k exp(2 pi i k j / m)` for FFT-ordered `c`.
pub fn synthesize_real(c: &[Complex64]) -> Vec<f64> {
    let m = c.len();
    let mut buf = c.to_vec();
    fft_nd(&mut buf, m, 1, true);
    buf.iter().map(|z| z.re).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_direct_dft() {
        let x: Vec<f64> = (0..12).map(|j| ((j * j) as f64 * 0.37).sin()).collect();
        let c = dft_normalized(&x);
        for (k, ck) in c.iter().enumerate() {
            let mut s = Complex64::new(0.0, 0.0);
            for (j, xj) in x.iter().enumerate() {
                let th = -2.0 * std::f64::consts::PI * (k * j) as f64 / 12.0;
                s += Complex64::from_polar(*xj, th);
            }
            assert!((s / 12.0 - ck).norm() < 1e-14);
        }
        let back = synthesize_real(&c);
        for (a, b) in back.iter().zip(&x) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn two_dimensional_round_trip() {
        let m = 6;
        let orig: Vec<Complex64> =
            (0..m * m).map(|i| Complex64::new((i as f64).cos(), 0.0)).collect();
        let mut buf = orig.clone();
        fft_nd(&mut buf, m, 2, false);
        fft_nd(&mut buf, m, 2, true);
        for (a, b) in buf.iter().zip(&orig) {
            assert!((a / (m * m) as f64 - b).norm() < 1e-13);
        }
    }
}
