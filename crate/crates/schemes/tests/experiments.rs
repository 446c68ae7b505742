use schemes::*;
use std::f64::consts::PI;

fn slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

fn log_slope(x: &[f64], y: &[f64]) -> f64 {
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    slope(&lx, &ly)
}

fn clamp(v: f64) -> f64 {
    v.clamp(-1.0, 1.0)
}

fn cfg(equation: Equation, scheme: Scheme, n: usize, nu: f64, tau: f64, steps: usize, expr: &str) -> SchemeConfig {
    SchemeConfig {
        equation,
        scheme,
        d: if equation == Equation::Nse2d { 2 } else { 1 },
        nu,
        tau: Some(tau),
        n,
        steps: Some(steps),
        t_final: None,
        initial: InitialData::BandLimitedExpression { expr: expr.into() },
        seed: 0,
        bound: None,
        samples: 100,
        atol: None,
        rtol: None,
    }
}

#[test]
fn small_perturbation_of_one_overshoots() {
    // u0 = 1 - 2 delta cos^2(2 pi x), delta = 0.05: one step exceeds 1 by more than (3/8) delta^2
    let c = cfg(Equation::AllenCahn, Scheme::GalerkinImex, 2, 1e-3, 0.5, 1, "1 - 2*0.05*cos(2*pi*x)^2");
    let out = run(&c).unwrap();
    let u1 = &out.final_state;
    let top = u1.sample(512).into_iter().fold(f64::NEG_INFINITY, f64::max);
    assert!(top - 1.0 > 0.375 * 0.05 * 0.05, "{}", top - 1.0);
}

#[test]
fn large_step_blows_up_from_critical_constant() {
    let c = cfg(Equation::AllenCahn, Scheme::GalerkinImex, 4, 0.1, 3.0, 100, "sqrt(4/9)");
    let out = run(&c).unwrap();
    let rows = &out.diagnostics.rows;
    let first_big = rows.iter().position(|r| r.linf > 1e3).expect("no blow-up");
    assert!(first_big <= 50, "{first_big}");
    assert!(rows.iter().take(101).any(|r| r.linf > 10.0));
    assert!(out.blew_up);
}

#[test]
fn collocation_sharp_maximum_on_rough_data() {
    for seed in 0..20 {
        let mut c = cfg(Equation::AllenCahn, Scheme::CollocationImex, 8, 1.0, 0.5, 200, "0");
        c.initial = InitialData::RoughLinf { bound: 1.0 };
        c.seed = seed;
        let out = run(&c).unwrap();
        assert!(out.diagnostics.max_linf() <= 1.0, "seed {seed}: {}", out.diagnostics.max_linf());
    }
}

#[test]
fn galerkin_energy_is_monotone() {
    for tau in [0.1, 0.5, 0.86] {
        let c = cfg(Equation::AllenCahn, Scheme::GalerkinImex, 64, 0.1, tau, 200, "1.28*sin(2*pi*x)*cos(4*pi*x)");
        let out = run(&c).unwrap();
        assert!(out.diagnostics.rows[0].linf <= 1.29);
        assert_eq!(out.diagnostics.energy_increases(1e-12), 0, "tau = {tau}");
    }
}

#[test]
fn margin_contracts_geometrically() {
    // linearising f_tau at 1 gives the factor 1 - 2 tau
    let tau = 0.25;
    let c = cfg(Equation::AllenCahn, Scheme::GalerkinImex, 16, 0.1, tau, 12, "1 + 0.2*cos(2*pi*x)");
    let out = run(&c).unwrap();
    let (n, m): (Vec<f64>, Vec<f64>) =
        out.diagnostics.rows.iter().skip(2).map(|r| (r.step as f64, r.margin.ln())).unzip();
    let rate = slope(&n, &m);
    assert!(rate <= (1.0 - 2.0 * tau).ln() + 0.05, "{rate}");
}

#[test]
fn strang_is_second_order() {
    let g = GridSpec::collocation(1, 32).unwrap();
    let nu = 0.1;
    let u0 = SpectralField::from_fn(g, |x| 0.8 * (2.0 * PI * x[0]).sin() + 0.3 * (4.0 * PI * x[0]).cos());
    let reference = ac_collocation_ode_integrate(&u0, nu, &[0.5], &OdeOptions::with_tol(1e-12, 1e-12)).unwrap();
    let reference = reference.states[0].values().to_vec();
    let steps = [20usize, 40, 80, 160];
    let errs: Vec<f64> = steps
        .iter()
        .map(|&m| {
            let mut u = u0.clone();
            for _ in 0..m {
                u = ac_strang_step(&u, nu, 0.5 / m as f64).unwrap();
            }
            u.values().iter().zip(&reference).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
        })
        .collect();
    let taus: Vec<f64> = steps.iter().map(|&m| 0.5 / m as f64).collect();
    let p = log_slope(&taus, &errs);
    assert!((p - 2.0).abs() < 0.1, "{p} {errs:?}");
}

#[test]
fn imex_converges_to_the_ode_at_first_order() {
    let g = GridSpec::galerkin(1, 16).unwrap();
    let nu = 0.1;
    let u0 = SpectralField::from_fn(g, |x| 0.9 * (2.0 * PI * x[0]).sin());
    let r = ac_galerkin_ode_integrate(&u0, nu, &[0.4], &OdeOptions::with_tol(1e-12, 1e-12)).unwrap();
    let steps = [40usize, 80, 160, 320];
    let errs: Vec<f64> = steps
        .iter()
        .map(|&m| {
            let mut u = u0.clone();
            for _ in 0..m {
                u = ac_galerkin_imex_step(&u, nu, 0.4 / m as f64).unwrap();
            }
            u.axpy(-1.0, &r.states[0]).unwrap().l2_norm()
        })
        .collect();
    let taus: Vec<f64> = steps.iter().map(|&m| 0.4 / m as f64).collect();
    let p = log_slope(&taus, &errs);
    assert!((p - 1.0).abs() < 0.1, "{p}");
}

#[test]
fn ode_energy_decreases() {
    let mut c = cfg(Equation::AllenCahn, Scheme::CollocationOde, 32, 0.05, 0.0, 0, "0");
    c.tau = None;
    c.steps = None;
    c.t_final = Some(2.0);
    c.samples = 40;
    c.initial = InitialData::RoughLinf { bound: 1.0 };
    let out = run(&c).unwrap();
    assert_eq!(out.diagnostics.energy_increases(1e-9), 0);
    c.scheme = Scheme::GalerkinOde;
    c.initial = InitialData::BandLimitedExpression { expr: "sin(2*pi*x) + 0.5*cos(6*pi*x)".into() };
    let out = run(&c).unwrap();
    assert_eq!(out.diagnostics.energy_increases(1e-9), 0);
}

fn burgers_overshoot(n: usize, tau: f64, nu: f64, t: f64, against_data: bool) -> f64 {
    let g = GridSpec::galerkin(1, n).unwrap();
    let u0 = SpectralField::from_fn(g, |x| clamp(2.0 * (2.0 * PI * x[0]).sin()));
    let bound = if against_data { field_linf(&u0) } else { 1.0 };
    let mut u = u0;
    let mut top = field_linf(&u);
    for _ in 0..(t / tau).round() as usize {
        u = burgers_galerkin_euler_step(&u, nu, tau).unwrap();
        top = top.max(field_linf(&u));
    }
    top - bound
}

#[test]
fn burgers_overshoot_decays_in_n_and_tau() {
    // against the bound of the unprojected data the truncation overshoot falls with N
    let ns = [32.0, 64.0, 128.0];
    let o: Vec<f64> = ns.iter().map(|&n| burgers_overshoot(n as usize, 1e-4, 0.1, 0.2, false)).collect();
    assert!(o.iter().all(|&v| v > 0.0) && o.windows(2).all(|w| w[1] < w[0]), "{o:?}");
    assert!(log_slope(&ns, &o) < 0.0);
    // against the projected data, the time-stepping overshoot falls with tau
    let taus = [0.008, 0.006, 0.005, 0.004];
    let o: Vec<f64> = taus.iter().map(|&t| burgers_overshoot(256, t, 0.05, 0.5, true)).collect();
    assert!(o.iter().all(|&v| v > 0.0) && o.windows(2).all(|w| w[1] < w[0]), "{o:?}");
    assert!(log_slope(&taus, &o) > 0.0);
}

fn nse_overshoot(n: usize, tau: f64, nu: f64, t: f64, amp: f64, against_data: bool) -> f64 {
    let g = GridSpec::galerkin(2, n).unwrap();
    let w0 = SpectralField::from_fn(g, |x| {
        clamp(amp * ((2.0 * PI * x[0]).sin() + 0.8 * (2.0 * PI * (x[0] + x[1])).cos()))
    });
    let bound = if against_data { field_linf(&w0) } else { 1.0 };
    let mut w = w0;
    let mut top = field_linf(&w);
    for _ in 0..(t / tau).round() as usize {
        w = nse_vorticity_step(&w, nu, tau).unwrap();
        top = top.max(field_linf(&w));
    }
    top - bound
}

#[test]
fn vorticity_overshoot_decays_in_n_and_tau() {
    let ns = [8.0, 16.0, 32.0];
    let o: Vec<f64> = ns.iter().map(|&n| nse_overshoot(n as usize, 5e-3, 0.1, 0.1, 2.0, false)).collect();
    assert!(o.iter().all(|&v| v > 0.0) && o.windows(2).all(|w| w[1] < w[0]), "{o:?}");
    let taus = [0.2, 0.15, 0.1, 0.08];
    let o: Vec<f64> = taus.iter().map(|&t| nse_overshoot(32, t, 0.02, 1.0, 4.0, true)).collect();
    assert!(o.iter().all(|&v| v > 0.0) && o.windows(2).all(|w| w[1] < w[0]), "{o:?}");
    assert!(log_slope(&taus, &o) > 0.0);
}

#[test]
fn mean_is_conserved() {
    let c = cfg(Equation::Burgers, Scheme::GalerkinEuler, 32, 0.2, 1e-3, 300, "0.3 + sin(2*pi*x) + 0.4*cos(6*pi*x)");
    let out = run(&c).unwrap();
    assert!(out.diagnostics.mean_drift() < 1e-13, "{}", out.diagnostics.mean_drift());
    let c = cfg(Equation::Nse2d, Scheme::GalerkinEuler, 16, 0.1, 1e-2, 50, "sin(2*pi*x)*cos(4*pi*y) + cos(2*pi*(x+y))");
    let out = run(&c).unwrap();
    assert!(out.diagnostics.mean_drift() < 1e-13);
}

#[test]
fn runs_are_bit_identical() {
    let mut c = cfg(Equation::AllenCahn, Scheme::Strang, 64, 0.05, 0.01, 50, "0");
    c.initial = InitialData::RoughLinf { bound: 1.0 };
    c.seed = 42;
    let a = run(&c).unwrap();
    let b = run(&c).unwrap();
    assert_eq!(a.final_state.values(), b.final_state.values());
    let strip = |o: &RunOutput| serde_json::to_string(&o.diagnostics.rows).unwrap();
    assert_eq!(strip(&a), strip(&b));
    assert_eq!(a.diagnostics.config_hash, b.diagnostics.config_hash);
}

#[test]
fn aliasing_breaks_transport_cancellation() {
    for k0 in [1, 2, 5] {
        let w = aliasing_witness(k0).unwrap();
        assert!((w.mean - 0.5).abs() < 1e-13 && (w.cos_m + 0.5).abs() < 1e-13);
        assert!((w.integral + PI * w.m as f64 / 2.0).abs() < 1e-10, "{w:?}");
    }
    let g = GridSpec::galerkin(1, 8).unwrap();
    let u = SpectralField::from_fn(g, |x| (2.0 * PI * x[0]).sin() + (10.0 * PI * x[0]).cos());
    let tu = dealiased_transport_pairing(&u);
    assert!(tu.abs() < 1e-12);
}

fn dealiased_transport_pairing(u: &SpectralField) -> f64 {
    // int u^2 u_x = 0 for the exact product
    let p = fourier_core::dealiased_product(&[u, u, &u.derivative(0)]).unwrap();
    p.mean()
}

#[test]
fn velocity_is_divergence_free() {
    let g = GridSpec::galerkin(2, 8).unwrap();
    let w = SpectralField::from_fn(g, |x| (2.0 * PI * (x[0] + 2.0 * x[1])).sin() + (6.0 * PI * x[1]).cos());
    let [u1, u2] = biot_savart(&w).unwrap();
    let div = u1.derivative(0).axpy(1.0, &u2.derivative(1)).unwrap();
    assert!(div.linf() < 1e-12);
    // curl u recovers omega
    let curl = u2.derivative(0).axpy(-1.0, &u1.derivative(1)).unwrap();
    assert!(curl.axpy(-1.0, &w).unwrap().linf() < 1e-12);
    let shifted = SpectralField::from_fn(g, |x| 1.0 + (2.0 * PI * x[0]).sin());
    assert!(matches!(biot_savart(&shifted), Err(SchemeError::NonZeroMean(_))));
}
