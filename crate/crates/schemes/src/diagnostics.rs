use fourier_core::{next_fft_size, SpectralField};
use serde::Serialize;

/// Sup norm of the represented function. Galerkin fields are resampled on a
/// finer grid (`8(2N+1)` points in 1D, `4(2N+1)` per axis in 2D); collocation
/// fields use their node values.
pub fn field_linf(u: &SpectralField) -> f64 {
    let g = u.grid();
    if !g.is_galerkin() {
        return u.linf();
    }
    let per_band = if g.d() == 1 { 8 } else { 4 };
    u.linf_sampled(next_fft_size(per_band * (2 * g.n() + 1)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiagRow {
    pub step: usize,
    pub t: f64,
    pub linf: f64,
    pub l2: f64,
    pub energy: f64,
    /// `linf - bound`.
    pub margin: f64,
    pub mean: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunDiagnostics {
    pub config_hash: String,
    pub bound: f64,
    pub rows: Vec<DiagRow>,
    pub wall_time_s: f64,
}

impl RunDiagnostics {
    pub fn max_linf(&self) -> f64 {
        self.rows.iter().map(|r| r.linf).fold(0.0, f64::max)
    }

    pub fn max_margin(&self) -> f64 {
        self.rows.iter().map(|r| r.margin).fold(f64::NEG_INFINITY, f64::max)
    }

    /// Number of steps where the energy rose by more than `tol`.
    pub fn energy_increases(&self, tol: f64) -> usize {
        self.rows.windows(2).filter(|w| w[1].energy > w[0].energy + tol).count()
    }

    /// Largest `|mean - mean_0|` along the run.
    pub fn mean_drift(&self) -> f64 {
        let m0 = self.rows.first().map_or(0.0, |r| r.mean);
        self.rows.iter().map(|r| (r.mean - m0).abs()).fold(0.0, f64::max)
    }
}
