use crate::fft::fft_nd;
use crate::{Convention, FourierError, GridSpec, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Real periodic field carried both as node values and band coefficients.
///
/// For Galerkin grids the node values are always the synthesis of the stored
/// band, so a field built from arbitrary samples is implicitly projected.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField {
    grid: GridSpec,
    coeffs: Vec<Complex64>,
    values: Vec<f64>,
}

impl SpectralField {
    pub fn from_values(grid: GridSpec, values: Vec<f64>) -> Result<Self> {
        let n_nodes = grid.node_count();
        if values.len() != n_nodes {
            return Err(FourierError::Length { expected: n_nodes, got: values.len() });
        }
        let coeffs = analyse(&grid, &values);
        let values = match grid.convention() {
            Convention::Collocation => values,
            Convention::Galerkin => synthesise(&grid, &coeffs),
        };
        Ok(SpectralField { grid, coeffs, values })
    }

    /// Coefficients are replaced by their Hermitian part, which is what the
    /// (real) node values see.
    pub fn from_coeffs(grid: GridSpec, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != grid.band_len() {
            return Err(FourierError::Length { expected: grid.band_len(), got: coeffs.len() });
        }
        let coeffs = hermitian_part(&grid, &coeffs);
        let values = synthesise(&grid, &coeffs);
        Ok(SpectralField { grid, coeffs, values })
    }

    pub fn from_fn(grid: GridSpec, f: impl Fn(&[f64]) -> f64) -> Self {
        let d = grid.d();
        let values = (0..grid.node_count()).map(|j| f(&grid.node(j)[..d])).collect();
        Self::from_values(grid, values).expect("node count matches grid")
    }

    pub fn constant(grid: GridSpec, c: f64) -> Self {
        let mut coeffs = vec![ZERO; grid.band_len()];
        let i0 = grid.band_index(&[0, 0, 0]).expect("zero mode in band");
        coeffs[i0] = Complex64::new(c, 0.0);
        Self::from_coeffs(grid, coeffs).expect("band length matches")
    }

    pub fn zeros(grid: GridSpec) -> Self {
        Self::constant(grid, 0.0)
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Coefficient of wave vector `k` (zero outside the stored band).
    pub fn coeff(&self, k: &[i64]) -> Complex64 {
        self.grid.band_index(k).map_or(ZERO, |i| self.coeffs[i])
    }

    pub fn mean(&self) -> f64 {
        self.coeff(&[0, 0, 0]).re
    }

    /// New field with every coefficient replaced by `f(k, c_k)`.
    pub fn map_coeffs(&self, f: impl Fn(&[i64], Complex64) -> Complex64) -> Self {
        let d = self.grid.d();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| f(&self.grid.wave_vector(i)[..d], c))
            .collect();
        Self::from_coeffs(self.grid, coeffs).expect("same band")
    }

    /// Multiply by a real Fourier multiplier `m(k)`.
    pub fn apply_real_multiplier(&self, m: impl Fn(&[i64]) -> f64) -> Self {
        self.map_coeffs(|k, c| c * m(k))
    }

    pub fn scale(&self, a: f64) -> Self {
        SpectralField {
            grid: self.grid,
            coeffs: self.coeffs.iter().map(|c| c * a).collect(),
            values: self.values.iter().map(|v| v * a).collect(),
        }
    }

    /// `self + a * other`.
    pub fn axpy(&self, a: f64, other: &SpectralField) -> Result<Self> {
        if self.grid != other.grid {
            return Err(FourierError::GridMismatch);
        }
        Ok(SpectralField {
            grid: self.grid,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(x, y)| x + y * a).collect(),
            values: self.values.iter().zip(&other.values).map(|(x, y)| x + y * a).collect(),
        })
    }

    /// Spectral derivative along `axis`. On collocation grids the unpaired
    /// `k = N/2` mode is dropped so the result stays real.
    pub fn derivative(&self, axis: usize) -> Self {
        let nyq = self.nyquist();
        self.map_coeffs(|k, c| {
            if nyq.is_some_and(|q| k[axis] == q) {
                ZERO
            } else {
                c * Complex64::new(0.0, 2.0 * PI * k[axis] as f64)
            }
        })
    }

    /// Multiplier `-(2 pi |k|)^2`, including the `N/2` mode on collocation grids.
    pub fn laplacian(&self) -> Self {
        self.apply_real_multiplier(|k| -4.0 * PI * PI * k2(k))
    }

    /// `(1/|T^d|) int u^2` evaluated on the grid; exact for Galerkin fields.
    pub fn l2_norm(&self) -> f64 {
        let s: f64 = self.values.iter().map(|v| v * v).sum();
        (s / self.values.len() as f64).sqrt()
    }

    /// Sum of `|c_k|^2`.
    pub fn coeff_energy(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Max of `|u|` over the field's own nodes.
    pub fn linf(&self) -> f64 {
        self.values.iter().fold(0.0, |a, v| a.max(v.abs()))
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Values of the band-limited interpolant on a uniform grid with
    /// `m_out` points per axis. Collocation fields split the `N/2` mode
    /// evenly between `+-N/2` as in the symmetric interpolant.
    pub fn sample(&self, m_out: usize) -> Vec<f64> {
        let g = &self.grid;
        let d = g.d();
        assert!(m_out > 2 * g.k_max() as usize, "sampling grid too coarse");
        let mut buf = vec![ZERO; m_out.pow(d as u32)];
        let nyq = self.nyquist();
        for (i, &c) in self.coeffs.iter().enumerate() {
            let k = g.wave_vector(i);
            scatter(&mut buf, &k[..d], c, nyq, m_out, 0, 0);
        }
        fft_nd(&mut buf, m_out, d, true);
        buf.iter().map(|z| z.re).collect()
    }

    /// Sup-norm estimate from `sample(m_out)`.
    pub fn linf_sampled(&self, m_out: usize) -> f64 {
        self.sample(m_out).iter().fold(0.0, |a, v| a.max(v.abs()))
    }

    /// Evaluate the band-limited interpolant at a point.
    pub fn eval(&self, x: &[f64]) -> f64 {
        let g = &self.grid;
        let d = g.d();
        let nyq = self.nyquist();
        let mut s = 0.0;
        for (i, &c) in self.coeffs.iter().enumerate() {
            let k = g.wave_vector(i);
            let mut z = c;
            for ax in 0..d {
                let th = 2.0 * PI * k[ax] as f64 * x[ax];
                if nyq.is_some_and(|q| k[ax] == q) {
                    z *= th.cos();
                } else {
                    z *= Complex64::from_polar(1.0, th);
                }
            }
            s += z.re;
        }
        s
    }

    fn nyquist(&self) -> Option<i64> {
        match self.grid.convention() {
            Convention::Collocation => Some(self.grid.k_max()),
            Convention::Galerkin => None,
        }
    }

    /// Same coefficients viewed on a grid with a smaller cutoff.
    pub(crate) fn restrict(&self, grid: GridSpec) -> Self {
        let d = grid.d();
        let coeffs =
            (0..grid.band_len()).map(|i| self.coeff(&grid.wave_vector(i)[..d])).collect();
        Self::from_coeffs(grid, coeffs).expect("band length matches")
    }
}

fn k2(k: &[i64]) -> f64 {
    k.iter().map(|&x| (x * x) as f64).sum()
}

fn scatter(
    buf: &mut [Complex64],
    k: &[i64],
    c: Complex64,
    nyq: Option<i64>,
    m: usize,
    ax: usize,
    acc: usize,
) {
    if ax == k.len() {
        buf[acc] += c;
        return;
    }
    let kk = k[ax];
    if nyq.is_some_and(|q| kk == q) {
        for s in [kk, -kk] {
            let idx = acc * m + s.rem_euclid(m as i64) as usize;
            scatter(buf, k, c * 0.5, nyq, m, ax + 1, idx);
        }
    } else {
        let idx = acc * m + kk.rem_euclid(m as i64) as usize;
        scatter(buf, k, c, nyq, m, ax + 1, idx);
    }
}

fn analyse(grid: &GridSpec, values: &[f64]) -> Vec<Complex64> {
    let m = grid.m();
    let d = grid.d();
    let mut buf: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    fft_nd(&mut buf, m, d, false);
    let s = 1.0 / buf.len() as f64;
    let raw: Vec<Complex64> =
        (0..grid.band_len()).map(|i| buf[grid.fft_index(&grid.wave_vector(i), m)] * s).collect();
    hermitian_part(grid, &raw)
}

/// `(c_k + conj(c_{-k})) / 2`. Without this the FFT round-off leaves an
/// anti-Hermitian remainder that is invisible in the node values but is
/// amplified by multipliers larger than one.
fn hermitian_part(grid: &GridSpec, c: &[Complex64]) -> Vec<Complex64> {
    let d = grid.d();
    let q = grid.k_max();
    let aliased = !grid.is_galerkin();
    (0..c.len())
        .map(|i| {
            let mut k = grid.wave_vector(i);
            for kk in k.iter_mut().take(d) {
                // on collocation grids -N/2 is the stored N/2
                *kk = if aliased && *kk == q { q } else { -*kk };
            }
            let j = grid.band_index(&k[..d]).expect("band is symmetric");
            (c[i] + c[j].conj()) * 0.5
        })
        .collect()
}

fn synthesise(grid: &GridSpec, coeffs: &[Complex64]) -> Vec<f64> {
    let m = grid.m();
    let d = grid.d();
    let mut buf = vec![ZERO; grid.node_count()];
    for (i, &c) in coeffs.iter().enumerate() {
        buf[grid.fft_index(&grid.wave_vector(i), m)] += c;
    }
    fft_nd(&mut buf, m, d, true);
    buf.iter().map(|z| z.re).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_mode_coefficients() {
        let g = GridSpec::galerkin(1, 4).unwrap();
        let f = SpectralField::from_fn(g, |x| (2.0 * PI * 3.0 * x[0]).cos());
        assert!((f.coeff(&[3]).re - 0.5).abs() < 1e-14);
        assert!((f.coeff(&[-3]).re - 0.5).abs() < 1e-14);
        assert!(f.coeff(&[1]).norm() < 1e-14);
    }

    #[test]
    fn collocation_round_trip_exact() {
        let g = GridSpec::collocation(1, 10).unwrap();
        let vals: Vec<f64> = (0..10).map(|j| (j as f64 * 1.3).sin() + 0.2).collect();
        let f = SpectralField::from_values(g, vals.clone()).unwrap();
        let back = SpectralField::from_coeffs(g, f.coeffs().to_vec()).unwrap();
        for (a, b) in back.values().iter().zip(&vals) {
            assert!((a - b).abs() < 1e-13);
        }
    }

    #[test]
    fn eval_reproduces_nodes_with_nyquist() {
        let g = GridSpec::collocation(1, 8).unwrap();
        let vals = vec![1.0, -1.0, 0.5, 0.0, 2.0, -0.3, 0.1, 0.7];
        let f = SpectralField::from_values(g, vals.clone()).unwrap();
        for (j, v) in vals.iter().enumerate() {
            assert!((f.eval(&[j as f64 / 8.0]) - v).abs() < 1e-13);
        }
        let fine = f.sample(32);
        for (j, v) in vals.iter().enumerate() {
            assert!((fine[4 * j] - v).abs() < 1e-13);
        }
        assert!((fine[3] - f.eval(&[3.0 / 32.0])).abs() < 1e-13);
    }

    #[test]
    fn derivative_of_sine() {
        let g = GridSpec::galerkin(1, 3).unwrap();
        let f = SpectralField::from_fn(g, |x| (2.0 * PI * x[0]).sin());
        let df = f.derivative(0);
        for (j, v) in df.values().iter().enumerate() {
            let x = g.node(j)[0];
            assert!((v - 2.0 * PI * (2.0 * PI * x).cos()).abs() < 1e-12);
        }
    }

    #[test]
    fn two_dimensional_laplacian() {
        let g = GridSpec::galerkin(2, 2).unwrap();
        let f = SpectralField::from_fn(g, |x| (2.0 * PI * (x[0] + 2.0 * x[1])).cos());
        let lap = f.laplacian();
        for (a, b) in lap.values().iter().zip(f.values()) {
            assert!((a + 4.0 * PI * PI * 5.0 * b).abs() < 1e-10);
        }
    }

    #[test]
    fn coefficients_are_exactly_hermitian() {
        for g in [GridSpec::galerkin(2, 5).unwrap(), GridSpec::collocation(2, 6).unwrap()] {
            let f = SpectralField::from_fn(g, |x| (x[0] * 7.1).sin() * (x[1] * 3.3 + 0.2).exp());
            for i in 0..g.band_len() {
                let k = g.wave_vector(i);
                let q = g.k_max();
                let neg: Vec<i64> =
                    k[..2].iter().map(|&x| if !g.is_galerkin() && x == q { q } else { -x }).collect();
                assert_eq!(f.coeffs()[i], f.coeff(&neg).conj());
            }
        }
    }
}
