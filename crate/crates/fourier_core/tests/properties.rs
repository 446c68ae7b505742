use fourier_core::{
    apply_helmholtz_inverse, dealiased_product, project_galerkin, Complex64, GridSpec,
    SpectralField,
};
use proptest::prelude::*;
use std::f64::consts::PI;

fn random_band(grid: GridSpec, raw: &[f64]) -> SpectralField {
    // Hermitian coefficients from raw reals: fill k >= 0 freely, mirror k < 0.
    let d = grid.d();
    let mut c = vec![Complex64::new(0.0, 0.0); grid.band_len()];
    for i in 0..grid.band_len() {
        let k = grid.wave_vector(i);
        let j = grid.band_index(&[-k[0], -k[1], -k[2]][..d]).unwrap();
        if j < i {
            continue;
        }
        let a = raw[(2 * i) % raw.len()];
        let b = raw[(2 * i + 1) % raw.len()];
        if i == j {
            c[i] = Complex64::new(a, 0.0);
        } else {
            c[i] = Complex64::new(a, b);
            c[j] = Complex64::new(a, -b);
        }
    }
    SpectralField::from_coeffs(grid, c).unwrap()
}

fn brute_convolution(u: &SpectralField, v: &SpectralField, k: i64) -> Complex64 {
    let n = u.grid().n() as i64;
    let mut s = Complex64::new(0.0, 0.0);
    for p in -n..=n {
        s += u.coeff(&[p]) * v.coeff(&[k - p]);
    }
    s
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn parseval_galerkin(n in 1usize..12, raw in prop::collection::vec(-1.0f64..1.0, 8..64)) {
        let f = random_band(GridSpec::galerkin(1, n).unwrap(), &raw);
        let lhs = f.l2_norm().powi(2);
        let rhs = f.coeff_energy();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1e-300));
    }

    #[test]
    fn parseval_collocation(half in 1usize..16, vals in prop::collection::vec(-2.0f64..2.0, 64)) {
        let n = 2 * half;
        let f = SpectralField::from_values(GridSpec::collocation(1, n).unwrap(), vals[..n].to_vec()).unwrap();
        let lhs = f.l2_norm().powi(2);
        let rhs = f.coeff_energy();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1e-300));
    }

    #[test]
    fn hermitian_and_round_trip(half in 1usize..16, vals in prop::collection::vec(-2.0f64..2.0, 64)) {
        let n = 2 * half;
        let g = GridSpec::collocation(1, n).unwrap();
        let f = SpectralField::from_values(g, vals[..n].to_vec()).unwrap();
        let scale = f.coeffs().iter().fold(0.0f64, |a, c| a.max(c.norm()));
        for k in 1..(n as i64 / 2) {
            prop_assert!((f.coeff(&[-k]) - f.coeff(&[k]).conj()).norm() <= 1e-12 * scale);
        }
        let back = SpectralField::from_coeffs(g, f.coeffs().to_vec()).unwrap();
        for (a, b) in back.values().iter().zip(&vals[..n]) {
            prop_assert!((a - b).abs() <= 1e-12 * scale.max(1.0) * 4.0);
        }
    }

    #[test]
    fn projection_contracts_and_is_idempotent(n in 2usize..12, cut in 0usize..12,
                                              raw in prop::collection::vec(-1.0f64..1.0, 8..64)) {
        let cut = cut.min(n);
        let f = random_band(GridSpec::galerkin(1, n).unwrap(), &raw);
        let p = project_galerkin(&f, cut).unwrap();
        let pp = project_galerkin(&p, cut).unwrap();
        prop_assert!(p.l2_norm() <= f.l2_norm() + 1e-14);
        prop_assert_eq!(p.coeffs(), pp.coeffs());
        for i in 0..p.grid().band_len() {
            let k = p.grid().wave_vector(i);
            prop_assert_eq!(p.coeff(&k[..1]), f.coeff(&k[..1]));
        }
    }

    #[test]
    fn helmholtz_inverse_pair(n in 1usize..10, beta in 1e-3f64..2.0,
                              raw in prop::collection::vec(-1.0f64..1.0, 8..64)) {
        let f = random_band(GridSpec::galerkin(2, n).unwrap(), &raw);
        let h = apply_helmholtz_inverse(&f, beta).unwrap();
        let back = h.axpy(-beta, &h.laplacian()).unwrap();
        for (a, b) in back.coeffs().iter().zip(f.coeffs()) {
            prop_assert!((a - b).norm() <= 1e-12 * b.norm().max(1.0));
        }
    }

    #[test]
    fn product_matches_brute_convolution(n in 1usize..=16,
                                         ra in prop::collection::vec(-1.0f64..1.0, 8..40),
                                         rb in prop::collection::vec(-1.0f64..1.0, 8..40)) {
        let g = GridSpec::galerkin(1, n).unwrap();
        let u = random_band(g, &ra);
        let v = random_band(g, &rb);
        let w = dealiased_product(&[&u, &v]).unwrap();
        for k in -(n as i64)..=(n as i64) {
            let want = brute_convolution(&u, &v, k);
            prop_assert!((w.coeff(&[k]) - want).norm() <= 1e-12 * (1.0 + want.norm()));
        }
    }
}

#[test]
fn collocation_interpolant_reproduces_symmetric_band() {
    // f with f^(N/2) = f^(-N/2) sampled at nodes, compared at 1024 off-grid points.
    let n = 16usize;
    let f = |x: f64| {
        0.3 + (2.0 * PI * x).cos() - 0.7 * (2.0 * PI * 5.0 * x).sin()
            + 0.4 * (2.0 * PI * 8.0 * x).cos()
    };
    let nodes: Vec<f64> = (0..n).map(|j| f(j as f64 / n as f64)).collect();
    let q = fourier_core::collocation_interpolant(&nodes).unwrap();
    for i in 0..1024 {
        let x = (i as f64 + 0.37) / 1024.0;
        assert!((q.eval(x) - f(x)).abs() < 1e-10, "x = {x}");
    }
    for (j, v) in nodes.iter().enumerate() {
        assert!((q.eval(j as f64 / n as f64) - v).abs() < 1e-13);
    }
}
