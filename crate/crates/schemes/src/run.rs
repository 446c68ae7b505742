use crate::diagnostics::{field_linf, DiagRow, RunDiagnostics};
use crate::initial::build_initial;
use crate::integrator::OdeOptions;
use crate::*;
use std::time::Instant;

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub diagnostics: RunDiagnostics,
    pub final_state: SpectralField,
    /// The state stopped being finite and the run was cut short.
    pub blew_up: bool,
}

fn row(cfg: &SchemeConfig, step: usize, t: f64, u: &SpectralField, bound: f64) -> DiagRow {
    let linf = field_linf(u);
    let energy = match cfg.equation {
        Equation::AllenCahn => energy(u, cfg.nu),
        _ => l2_energy(u),
    };
    DiagRow { step, t, linf, l2: u.l2_norm(), energy, margin: linf - bound, mean: u.mean() }
}

/// Run `cfg` from its own initial data.
pub fn run(cfg: &SchemeConfig) -> Result<RunOutput> {
    cfg.validate()?;
    let u0 = build_initial(cfg)?;
    run_from(cfg, u0)
}

/// Run `cfg` from an explicit initial field (used for resolved adversarial data).
pub fn run_from(cfg: &SchemeConfig, u0: SpectralField) -> Result<RunOutput> {
    cfg.validate()?;
    let expected = crate::initial::grid_for(cfg)?;
    if *u0.grid() != expected {
        return Err(SchemeError::Config("initial field does not live on the configured grid".into()));
    }
    let start = Instant::now();
    let bound = cfg.bound.unwrap_or(match cfg.equation {
        Equation::AllenCahn => 1.0,
        _ => field_linf(&u0),
    });
    let mut rows = vec![row(cfg, 0, 0.0, &u0, bound)];
    let mut blew_up = false;
    let final_state = if cfg.scheme.is_ode() {
        let t_final = cfg.t_final.expect("validated");
        let times: Vec<f64> = (1..=cfg.samples).map(|i| t_final * i as f64 / cfg.samples as f64).collect();
        let defaults = OdeOptions::default();
        let opts = OdeOptions::with_tol(cfg.atol.unwrap_or(defaults.atol), cfg.rtol.unwrap_or(defaults.rtol));
        let traj = match (cfg.equation, cfg.scheme) {
            (Equation::AllenCahn, Scheme::GalerkinOde) => ac_galerkin_ode_integrate(&u0, cfg.nu, &times, &opts)?,
            (Equation::AllenCahn, _) => ac_collocation_ode_integrate(&u0, cfg.nu, &times, &opts)?,
            (Equation::Burgers, Scheme::GalerkinOde) => burgers_galerkin_ode_integrate(&u0, cfg.nu, &times, &opts)?,
            (Equation::Burgers, _) => burgers_collocation_ode_integrate(&u0, cfg.nu, &times, &opts)?,
            (Equation::Nse2d, _) => nse_galerkin_ode_integrate(&u0, cfg.nu, &times, &opts)?,
        };
        for (i, (t, u)) in traj.times.iter().zip(&traj.states).enumerate() {
            rows.push(row(cfg, i + 1, *t, u, bound));
        }
        traj.states.last().cloned().unwrap_or(u0)
    } else {
        let tau = cfg.tau.expect("validated");
        let step: fn(&SpectralField, f64, f64) -> Result<SpectralField> = match (cfg.equation, cfg.scheme) {
            (Equation::AllenCahn, Scheme::GalerkinImex) => ac_galerkin_imex_step,
            (Equation::AllenCahn, Scheme::CollocationImex) => ac_collocation_imex_step,
            (Equation::AllenCahn, Scheme::Strang) => ac_strang_step,
            (Equation::Burgers, _) => burgers_galerkin_euler_step,
            (Equation::Nse2d, _) => nse_vorticity_step,
            _ => unreachable!("validated"),
        };
        let mut u = u0;
        for n in 1..=cfg.step_count() {
            let next = step(&u, cfg.nu, tau)?;
            if next.values().iter().any(|v| !v.is_finite()) {
                blew_up = true;
                break;
            }
            u = next;
            rows.push(row(cfg, n, n as f64 * tau, &u, bound));
        }
        u
    };
    let diagnostics = RunDiagnostics {
        config_hash: cfg.hash(),
        bound,
        rows,
        wall_time_s: start.elapsed().as_secs_f64(),
    };
    Ok(RunOutput { diagnostics, final_state, blew_up })
}
