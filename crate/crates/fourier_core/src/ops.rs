use crate::{FourierError, Result, SpectralField};
use std::f64::consts::PI;

/// `Pi_N f`: keep the modes `|k|_inf <= n`.
pub fn project_galerkin(f: &SpectralField, n: usize) -> Result<SpectralField> {
    let grid = f.grid().with_cutoff(n)?;
    Ok(f.restrict(grid))
}

/// `(Id - beta Delta)^{-1}`, multiplier `1 / (1 + 4 pi^2 beta |k|^2)`.
pub fn apply_helmholtz_inverse(f: &SpectralField, beta: f64) -> Result<SpectralField> {
    if !(beta > 0.0) {
        return Err(FourierError::NonPositiveBeta(beta));
    }
    Ok(f.apply_real_multiplier(|k| {
        let k2: f64 = k.iter().map(|&x| (x * x) as f64).sum();
        1.0 / (1.0 + 4.0 * PI * PI * beta * k2)
    }))
}

/// `Pi_N` of the exact product of Galerkin fields.
///
/// The product is formed on the oversampled grid and truncated; this equals
/// the coefficient convolution as long as no product mode aliases into the
/// band, i.e. `M > (factors + 1) N`.
pub fn dealiased_product(fields: &[&SpectralField]) -> Result<SpectralField> {
    let first = fields.first().ok_or(FourierError::Length { expected: 1, got: 0 })?;
    let grid = *first.grid();
    if !grid.is_galerkin() {
        return Err(FourierError::NotGalerkin("dealiased_product"));
    }
    if fields.iter().any(|f| *f.grid() != grid) {
        return Err(FourierError::GridMismatch);
    }
    let p = fields.len();
    if grid.m() <= (p + 1) * grid.n() {
        return Err(FourierError::ProductNotExact { factors: p, n: grid.n(), m: grid.m() });
    }
    SpectralField::from_values(grid, node_product(fields))
}

/// Node-wise product without dealiasing (the collocation nonlinearity).
pub fn pointwise_product(fields: &[&SpectralField]) -> Result<SpectralField> {
    let first = fields.first().ok_or(FourierError::Length { expected: 1, got: 0 })?;
    let grid = *first.grid();
    if fields.iter().any(|f| *f.grid() != grid) {
        return Err(FourierError::GridMismatch);
    }
    SpectralField::from_values(grid, node_product(fields))
}

fn node_product(fields: &[&SpectralField]) -> Vec<f64> {
    let mut out = fields[0].values().to_vec();
    for f in &fields[1..] {
        out.iter_mut().zip(f.values()).for_each(|(a, b)| *a *= b);
    }
    out
}
