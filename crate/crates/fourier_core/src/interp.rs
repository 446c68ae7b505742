use crate::fft::dft_normalized;
use crate::{FourierError, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Trigonometric interpolant `Q_N U` of node values `U_j = U(j/N)`.
#[derive(Debug, Clone)]
pub struct CollocationInterpolant {
    n: usize,
    /// `U~_k` for `k = 0..=N/2`; negative modes follow by symmetry.
    half: Vec<Complex64>,
}

pub fn collocation_interpolant(u: &[f64]) -> Result<CollocationInterpolant> {
    let n = u.len();
    if n == 0 || n % 2 != 0 {
        return Err(FourierError::OddCollocation(n));
    }
    let c = dft_normalized(u);
    Ok(CollocationInterpolant { n, half: c[..=n / 2].to_vec() })
}

impl CollocationInterpolant {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeff(&self, k: i64) -> Complex64 {
        let h = self.n as i64 / 2;
        if k == 0 || (k > 0 && k <= h) {
            self.half[k as usize]
        } else if k < 0 && k > -h {
            self.half[(-k) as usize].conj()
        } else {
            Complex64::new(0.0, 0.0)
        }
    }

    /// `Re sum_{|k|<N/2} U~_k e^{2 pi i k x} + U~_{N/2} cos(pi N x)`.
    pub fn eval(&self, x: f64) -> f64 {
        let h = self.n / 2;
        let mut s = self.half[0].re;
        for k in 1..h {
            let z = self.half[k] * Complex64::from_polar(1.0, 2.0 * PI * k as f64 * x);
            s += 2.0 * z.re;
        }
        s + self.half[h].re * (PI * self.n as f64 * x).cos()
    }
}

/// `G_N(y) = sin(N pi y) / (N tan(pi y))`, the cardinal function of `Q_N`.
pub fn dirichlet_g(n: usize, y: f64) -> f64 {
    let y = y - y.round();
    if y.abs() < 1e-12 {
        return 1.0;
    }
    (n as f64 * PI * y).sin() / (n as f64 * (PI * y).tan())
}
