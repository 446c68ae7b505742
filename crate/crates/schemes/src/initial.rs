use crate::{InitialData, Result, SchemeConfig, SchemeError};
use fourier_core::{GridSpec, SpectralField};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub(crate) fn grid_for(cfg: &SchemeConfig) -> Result<GridSpec> {
    Ok(if cfg.scheme.is_galerkin() {
        GridSpec::galerkin(cfg.d, cfg.n)?
    } else {
        GridSpec::collocation(cfg.d, cfg.n)?
    })
}

fn expression_field(grid: GridSpec, expr: &str) -> Result<SpectralField> {
    let e: meval::Expr = expr.parse().map_err(|e: meval::Error| SchemeError::Expression(e.to_string()))?;
    let f = e.bind2("x", "y").map_err(|e| SchemeError::Expression(e.to_string()))?;
    let field = SpectralField::from_fn(grid, |x| f(x[0], if x.len() > 1 { x[1] } else { 0.0 }));
    if field.values().iter().any(|v| !v.is_finite()) {
        return Err(SchemeError::Expression(format!("{expr} is not finite on the grid")));
    }
    Ok(field)
}

/// Initial field for `cfg`. Adversarial data has to be resolved into
/// `NodeSamples` by the caller.
pub fn build_initial(cfg: &SchemeConfig) -> Result<SpectralField> {
    let grid = grid_for(cfg)?;
    match &cfg.initial {
        InitialData::BandLimitedExpression { expr } => expression_field(grid, expr),
        InitialData::NodeSamples { values } => Ok(SpectralField::from_values(grid, values.clone())?),
        InitialData::RoughLinf { bound } => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let values = (0..grid.node_count()).map(|_| rng.gen_range(-1.0..=1.0) * bound).collect();
            Ok(SpectralField::from_values(grid, values)?)
        }
        InitialData::Adversarial { .. } => Err(SchemeError::Unresolved("adversarial")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Equation, Scheme};

    fn cfg(initial: InitialData) -> SchemeConfig {
        SchemeConfig {
            equation: Equation::AllenCahn,
            scheme: Scheme::CollocationImex,
            d: 1,
            nu: 1.0,
            tau: Some(0.5),
            n: 16,
            steps: Some(1),
            t_final: None,
            initial,
            seed: 11,
            bound: None,
            samples: 10,
            atol: None,
            rtol: None,
        }
    }

    #[test]
    fn expression_on_nodes() {
        let u = build_initial(&cfg(InitialData::BandLimitedExpression { expr: "cos(2*pi*x)^2".into() })).unwrap();
        for (j, v) in u.values().iter().enumerate() {
            let x = j as f64 / 16.0;
            assert!((v - (2.0 * std::f64::consts::PI * x).cos().powi(2)).abs() < 1e-14);
        }
        assert!(build_initial(&cfg(InitialData::BandLimitedExpression { expr: "cos(".into() })).is_err());
    }

    #[test]
    fn rough_data_is_seeded_and_bounded() {
        let c = cfg(InitialData::RoughLinf { bound: 0.7 });
        let a = build_initial(&c).unwrap();
        let b = build_initial(&c).unwrap();
        assert_eq!(a.values(), b.values());
        assert!(a.linf() <= 0.7);
        let mut c2 = c.clone();
        c2.seed = 12;
        assert_ne!(build_initial(&c2).unwrap().values(), a.values());
    }

    #[test]
    fn node_samples_length_checked() {
        assert!(build_initial(&cfg(InitialData::NodeSamples { values: vec![0.0; 15] })).is_err());
        assert!(build_initial(&cfg(InitialData::NodeSamples { values: vec![0.0; 16] })).is_ok());
    }
}
