use proptest::prelude::*;
use stability_lab::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn envelope_is_monotone_in_alpha(tau in 0.01f64..4.0, a in 0.01f64..3.0, da in 0.0f64..1.0) {
        let lo = cubic_envelope(tau, a).unwrap().envelope;
        let hi = cubic_envelope(tau, a + da).unwrap().envelope;
        prop_assert!(hi >= lo - 1e-14);
    }

    #[test]
    fn envelope_contracts_for_small_steps(tau in 0.001f64..0.5, u in 0.0f64..1.0) {
        let top = (1.0 + 2.0 / tau).sqrt();
        let alpha = 1.0 + u * (top - 1.0);
        let e = cubic_envelope(tau, alpha).unwrap();
        prop_assert!(e.envelope <= alpha * (1.0 + 1e-14));
        prop_assert!(e.envelope <= e.sampled + 1e-9);
    }

    #[test]
    fn envelope_contracts_for_moderate_steps(tau in 0.5f64..2.0, u in 0.0f64..1.0) {
        let probe = cubic_envelope(tau, 1.0).unwrap();
        let alpha = probe.critical_value + u * (probe.reflection_point - probe.critical_value);
        let e = cubic_envelope(tau, alpha).unwrap();
        prop_assert!(e.envelope <= alpha * (1.0 + 1e-14));
    }

    #[test]
    fn heat_mass_is_at_least_one(half in 4usize..64, x in -6.0f64..3.0) {
        let n = 2 * half;
        let t = 10f64.powf(x) / (n * n) as f64;
        let w = discrete_weights(n, 1.0, KernelMode::Heat { t }).unwrap();
        prop_assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        prop_assert!(w.iter().map(|v| v.abs()).sum::<f64>() >= 1.0 - 1e-12);
    }

    #[test]
    fn heat_coefficient_signs_for_small_b(b in 0.0f64..0.5, j in 1usize..40) {
        let beta = heat_beta(b, j).unwrap();
        if j % 2 == 1 {
            prop_assert!(beta >= -1e-15);
        } else {
            prop_assert!(beta <= 1e-15);
        }
    }

    #[test]
    fn resolvent_weights_have_unit_mass(half in 4usize..64, tau in 1e-6f64..1.0, steps in 1u32..20) {
        let w = discrete_weights(2 * half, 0.3, KernelMode::Resolvent { tau, n: steps }).unwrap();
        prop_assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }
}
