use kernel_lab::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn value_at_origin_is_positive(d in 1usize..=3, n in 1usize..12, lb in -4.0f64..1.0, s in 0.05f64..3.0) {
        let beta = 10f64.powf(lb);
        prop_assert!(kernel_eval(d, n, beta, s, &[0.0, 0.0, 0.0]) > 0.0);
    }

    #[test]
    fn kernel_is_even(n in 1usize..40, lb in -4.0f64..1.0, s in 0.05f64..3.0, x in 0.0f64..1.0, y in 0.0f64..1.0) {
        let beta = 10f64.powf(lb);
        let a = kernel_eval(1, n, beta, s, &[x]);
        let b = kernel_eval(1, n, beta, s, &[-x]);
        prop_assert!((a - b).abs() < 1e-12);
        let a = kernel_eval(2, n.min(10), beta, s, &[x, y]);
        let b = kernel_eval(2, n.min(10), beta, s, &[-x, -y]);
        prop_assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn discrete_mean_is_one(k in 1usize..64, nu in 0.01f64..2.0, tau in 1e-5f64..1.0) {
        let d = discrete_helmholtz_kernel(2 * k, nu, tau).unwrap();
        prop_assert!((d.mean - 1.0).abs() < 1e-12);
        prop_assert!(d.discrete_l1 >= 1.0 - 1e-12);
    }

    #[test]
    fn dirichlet_mass_balance(n in 1usize..300) {
        let m = dirichlet_sign_masses(n).unwrap();
        prop_assert!((m.pos_mass - m.neg_mass - 1.0).abs() < 1e-10);
        prop_assert!(m.neg_mass > 0.0);
    }
}
