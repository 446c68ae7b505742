use cli_io::*;
use proptest::prelude::*;
use schemes::{Equation, InitialData, Scheme, SchemeConfig};

fn scheme_config(nu: f64, tau: f64, n: usize, seed: u64, bound: f64) -> SchemeConfig {
    SchemeConfig {
        equation: Equation::AllenCahn,
        scheme: Scheme::CollocationImex,
        d: 1,
        nu,
        tau: Some(tau),
        n,
        steps: Some(4),
        t_final: None,
        initial: InitialData::RoughLinf { bound },
        seed,
        bound: None,
        samples: 100,
        atol: None,
        rtol: None,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn run_configs_round_trip(nu in 1e-6f64..10.0, tau in 1e-6f64..5.0, n in 1usize..512, seed in 0u64..(i64::MAX as u64), bound in 0.0f64..2.0) {
        let f = ExperimentFile {
            name: Some("p".into()),
            description: None,
            experiment: Experiment::Run(scheme_config(nu, tau, n, seed, bound)),
            checks: vec![Check { label: "l".into(), metric: "max_linf".into(), min: Some(-bound), max: None, above: None, below: Some(nu) }],
        };
        let back = ExperimentFile::parse(&f.to_toml()).unwrap();
        prop_assert_eq!(back.hash(), f.hash());
        prop_assert_eq!(back, f);
    }

    #[test]
    fn sweep_configs_round_trip(vals in prop::collection::vec(1e-4f64..1.0, 1..6), ns in prop::collection::vec(2i64..64, 1..4), cap in 1usize..20_000) {
        let spec = SweepSpec {
            base: scheme_config(0.1, 0.1, 8, 0, 1.0),
            grid: vec![
                Axis { param: "tau".into(), values: vals.into_iter().map(GridValue::Float).collect() },
                Axis { param: "n".into(), values: ns.into_iter().map(GridValue::Int).collect() },
            ],
            metric: SweepMetric::MaxMargin,
            seeds: Some(3),
            fit: Some("tau".into()),
            reference: None,
            cap,
        };
        let f = ExperimentFile { name: None, description: Some("d".into()), experiment: Experiment::Sweep(spec), checks: Vec::new() };
        let back = ExperimentFile::parse(&f.to_toml()).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn csv_reals_parse_back_exactly(x in any::<f64>().prop_filter("finite", |x| x.is_finite())) {
        prop_assert_eq!(format_real(x).parse::<f64>().unwrap().to_bits(), x.to_bits());
    }

    #[test]
    fn seeded_runs_give_identical_tables(seed in 0u64..1000, n in 2usize..16) {
        let e = Experiment::Run(scheme_config(0.3, 0.2, 2 * n, seed, 1.0));
        let a = execute(&e).unwrap();
        let b = execute(&e).unwrap();
        prop_assert_eq!(a.tables[0].to_csv(), b.tables[0].to_csv());
    }
}
