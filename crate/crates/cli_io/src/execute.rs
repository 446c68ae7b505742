use crate::config::{Experiment, ExperimentFile, KernelTask, StabilityTask};
use crate::output::{evaluate, Cell, CheckResult, Outcome, Summary, Table};
use crate::{reproduction, run_sweep, CliError, Result, TOOL, VERSION};
use kernel_lab::fit::log_log_fit;
use rayon::prelude::*;
use schemes::{AdversarialKernel, InitialData, RunOutput, Scheme, SchemeConfig};
use stability_lab::KernelMode;
use std::time::Instant;

/// An executed experiment with its check verdicts.
#[derive(Debug, Clone)]
pub struct Report {
    pub file: ExperimentFile,
    pub outcome: Outcome,
    pub checks: Vec<CheckResult>,
    pub runtime_s: f64,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn summary(&self) -> Summary {
        let command = match &self.file.experiment {
            Experiment::Run(_) => "run",
            Experiment::Sweep(_) => "sweep",
            Experiment::Kernel(_) => "kernel",
            Experiment::Stability(_) => "stability",
            Experiment::Repeat { .. } => "repeat",
        };
        Summary {
            tool: TOOL,
            version: VERSION,
            name: self.file.name.clone().unwrap_or_else(|| command.to_string()),
            command: command.into(),
            config_hash: self.file.hash(),
            metrics: self.outcome.metrics.clone(),
            checks: self.checks.clone(),
            passed: self.passed(),
            tables: self.outcome.tables.iter().map(|t| format!("{}.csv", t.name)).collect(),
            runtime_s: self.runtime_s,
        }
    }

    /// One line: name, verdict and the checked values.
    pub fn verdict_line(&self) -> String {
        let name = self.file.name.as_deref().unwrap_or("experiment");
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let detail: Vec<String> = self
            .checks
            .iter()
            .map(|c| match c.value {
                Some(v) => format!("{} = {v:.6e}{}", c.metric, if c.passed { "" } else { " (failed)" }),
                None => format!("{} missing", c.metric),
            })
            .collect();
        if detail.is_empty() {
            format!("{name}: done")
        } else {
            format!("{name}: {status} [{}]", detail.join(", "))
        }
    }
}

pub fn run_experiment(file: &ExperimentFile) -> Result<Report> {
    let start = Instant::now();
    let outcome = execute(&file.experiment)?;
    let checks = evaluate(&file.checks, &outcome.metrics);
    Ok(Report { file: file.clone(), outcome, checks, runtime_s: start.elapsed().as_secs_f64() })
}

pub fn execute(exp: &Experiment) -> Result<Outcome> {
    match exp {
        Experiment::Run(cfg) => execute_run(cfg),
        Experiment::Sweep(spec) => run_sweep(spec),
        Experiment::Kernel(task) => execute_kernel(task),
        Experiment::Stability(task) => execute_stability(task),
        Experiment::Repeat { target } => execute_repeat(target),
    }
}

/// Replace adversarial initial data by the node samples it stands for.
pub fn resolve_initial(cfg: &SchemeConfig) -> Result<SchemeConfig> {
    let InitialData::Adversarial { kernel } = cfg.initial else {
        return Ok(cfg.clone());
    };
    if cfg.d != 1 || !matches!(cfg.scheme, Scheme::CollocationImex | Scheme::CollocationOde | Scheme::Strang) {
        return Err(CliError::Config("adversarial data needs a 1D collocation scheme".into()));
    }
    let data = stability_lab::adversarial_data(cfg.n, cfg.nu, kernel)?;
    Ok(SchemeConfig { initial: data.initial, ..cfg.clone() })
}

pub(crate) fn simulate(cfg: &SchemeConfig) -> Result<RunOutput> {
    let cfg = resolve_initial(cfg)?;
    Ok(schemes::run(&cfg)?)
}

pub(crate) fn energy_increases(out: &RunOutput) -> usize {
    out.diagnostics.rows.windows(2).filter(|w| w[1].energy > w[0].energy + 1e-12).count()
}

fn execute_run(cfg: &SchemeConfig) -> Result<Outcome> {
    let out = simulate(cfg)?;
    let rows = &out.diagnostics.rows;
    let mut table = Table::new("diagnostics", &["step", "t", "linf", "l2", "energy", "margin"]);
    for r in rows {
        table.push(vec![r.step.into(), r.t.into(), r.linf.into(), r.l2.into(), r.energy.into(), r.margin.into()]);
    }
    let mut o = Outcome::default();
    let after = if rows.len() > 1 { &rows[1..] } else { &rows[..] };
    let last = rows.last().expect("initial row");
    o.metric("initial_linf", rows[0].linf);
    o.metric("max_linf", after.iter().map(|r| r.linf).fold(f64::NEG_INFINITY, f64::max));
    o.metric("max_margin", after.iter().map(|r| r.margin).fold(f64::NEG_INFINITY, f64::max));
    o.metric("final_linf", last.linf);
    o.metric("final_l2", last.l2);
    o.metric("final_energy", last.energy);
    o.metric("bound", out.diagnostics.bound);
    o.metric("steps_run", (rows.len() - 1) as f64);
    o.metric("energy_increases", energy_increases(&out) as f64);
    o.metric("mean_drift", out.diagnostics.mean_drift());
    o.flag("blew_up", out.blew_up);
    o.tables.push(table);
    Ok(o)
}

fn execute_kernel(task: &KernelTask) -> Result<Outcome> {
    let mut o = Outcome::default();
    match *task {
        KernelTask::Profile { d, n, beta, s, refinement } => {
            let p = kernel_lab::kernel_profile(d, n, beta, s, refinement)?;
            let cols: Vec<&str> = ["x0", "x1", "x2"][..d].iter().copied().chain(["value"]).collect();
            let mut t = Table::new("profile", &cols);
            let m = p.points_per_axis;
            for (i, v) in p.samples.iter().enumerate() {
                let mut row = Vec::with_capacity(d + 1);
                let mut rest = i;
                let mut coords = vec![0.0; d];
                for ax in (0..d).rev() {
                    coords[ax] = (rest % m) as f64 / m as f64;
                    rest /= m;
                }
                row.extend(coords.into_iter().map(Cell::Real));
                row.push((*v).into());
                t.push(row);
            }
            o.metric("min_value", p.min_value);
            o.metric("l1_norm", p.l1_norm);
            o.metric("certified_lower", p.certified_lower);
            o.flag("positive", p.positive);
            o.tables.push(t);
        }
        KernelTask::Sweep { d, beta, ref ns } => {
            if ns.is_empty() {
                return Err(CliError::Config("empty sweep".into()));
            }
            let norms: Vec<_> = ns
                .par_iter()
                .map(|&n| kernel_lab::tail_l1_norm(d, n, beta))
                .collect::<std::result::Result<_, _>>()?;
            let mut t = Table::new("tail", &["n", "l1", "ratio", "truncation_bound"]);
            for r in &norms {
                t.push(vec![r.n.into(), r.l1.into(), r.ratio.into(), r.truncation_bound.into()]);
            }
            let ratios: Vec<f64> = norms.iter().map(|r| r.ratio).collect();
            let lo = ratios.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            o.metric("ratio_min", lo);
            o.metric("ratio_max", hi);
            o.metric("band", hi / lo);
            let x: Vec<f64> = ns.iter().map(|&n| n as f64).collect();
            let y: Vec<f64> = norms.iter().map(|r| r.l1).collect();
            if let Some(f) = log_log_fit(&x, &y) {
                o.metric("slope", f.slope);
                o.metric("r2", f.r2);
            }
            o.tables.push(t);
        }
        KernelTask::Sstar { tol } => {
            let c = kernel_lab::critical_exponent(tol)?;
            let mut t = Table::new("f1", &["s", "f1"]);
            for s in [0.0, c.bracket.0, 0.308443, 0.308444, c.bracket.1, 1.0] {
                t.push(vec![s.into(), kernel_lab::f1(s)?.into()]);
            }
            o.metric("s_star", c.s_star);
            o.metric("bracket_lo", c.bracket.0);
            o.metric("bracket_hi", c.bracket.1);
            o.metric("f1_bracket_lo", c.f_lo);
            o.metric("f1_bracket_hi", c.f_hi);
            o.metric("f1_at_0_308443", kernel_lab::f1(0.308443)?);
            o.metric("f1_at_0_308444", kernel_lab::f1(0.308444)?);
            o.tables.push(t);
        }
        KernelTask::Abeta { beta, s } => {
            let a = kernel_lab::a_beta(beta, s)?;
            o.metric("value", a.value);
            o.metric("minus_value", -a.value);
            o.metric("first_integral", a.first_integral);
            o.metric("first_closed_form", a.first_closed_form);
            o.metric("first_gap", (a.first_integral - a.first_closed_form).abs());
            o.metric("second_term", a.second_term);
        }
    }
    Ok(o)
}

fn kernel_code(k: AdversarialKernel) -> usize {
    match k {
        AdversarialKernel::Heat => 0,
        AdversarialKernel::Resolvent => 1,
    }
}

fn execute_stability(task: &StabilityTask) -> Result<Outcome> {
    let mut o = Outcome::default();
    match task {
        StabilityTask::Envelope { tau, alphas } => {
            let mut t = Table::new("envelope", &["alpha", "envelope", "sampled", "ratio"]);
            let (mut worst, mut gap) = (f64::NEG_INFINITY, 0.0f64);
            let mut last = None;
            for &a in alphas {
                let e = stability_lab::cubic_envelope(*tau, a)?;
                worst = worst.max(e.envelope / a);
                gap = gap.max((e.envelope - e.sampled).abs());
                t.push(vec![a.into(), e.envelope.into(), e.sampled.into(), (e.envelope / a).into()]);
                last = Some(e);
            }
            let e = last.ok_or_else(|| CliError::Config("envelope needs at least one alpha".into()))?;
            o.metric("critical_point", e.critical_point);
            o.metric("critical_value", e.critical_value);
            o.metric("reflection_point", e.reflection_point);
            o.metric("theta", e.theta);
            o.metric("max_ratio", worst);
            o.metric("max_sampling_gap", gap);
            o.tables.push(t);
        }
        StabilityTask::Iterate { tau, eta, alpha0, steps } => {
            let r = stability_lab::prototype_iteration(*tau, *eta, *alpha0, *steps)?;
            let mut t = Table::new("iterates", &["n", "alpha"]);
            for (i, a) in r.alpha.iter().enumerate() {
                t.push(vec![i.into(), (*a).into()]);
            }
            o.flag("diverged", r.diverged);
            o.metric("final_alpha", *r.alpha.last().expect("alpha0"));
            o.metric("steps_run", (r.alpha.len() - 1) as f64);
            if let Some(b) = r.decay_bounds {
                o.flag("decay_bounds", b);
            }
            if let Some(b) = r.trapped {
                o.flag("trapped", b);
            }
            o.tables.push(t);
        }
        StabilityTask::Tau1 { eta0, lo, hi, points } => {
            let r = stability_lab::tau1_root();
            o.metric("root", r.root);
            o.metric("closed_form", r.closed_form);
            o.metric("closed_form_gap", (r.root - r.closed_form).abs());
            o.metric("residual", r.residual);
            o.metric("grid_slack", stability_lab::tau1_grid_check(*eta0, *lo, *hi, *points));
        }
        StabilityTask::Counterexample { nu, n } => {
            let w = stability_lab::counterexample_tau2(*nu, *n)?;
            o.flag("in_window", w.in_window);
            o.metric("delta", w.delta);
            o.metric("u0_linf", w.u0_linf);
            o.metric("projected_linf", w.projected_linf);
            o.metric("u1_linf", std::f64::consts::SQRT_2 + w.overshoot);
            o.metric("overshoot", w.overshoot);
            o.metric("predicted", w.predicted);
            o.metric("t_eta_at_zero", w.t_eta_at_zero);
            o.metric("negative_energy", w.negative_energy);
        }
        StabilityTask::Amplify { kernel, n, nu, time, scale, steps } => {
            let (n, nu) = (*n, *nu);
            let t = match (time, scale) {
                (Some(t), None) => *t,
                (None, Some(k)) => match kernel {
                    AdversarialKernel::Heat => (k / (2.0 * n as f64 * nu)).powi(2),
                    AdversarialKernel::Resolvent => (k / (n as f64 * nu)).powi(2),
                },
                _ => return Err(CliError::Config("amplify needs exactly one of time and scale".into())),
            };
            let a = match kernel {
                AdversarialKernel::Heat => stability_lab::heat_amplification(n, t, nu)?,
                AdversarialKernel::Resolvent => stability_lab::resolvent_amplification(n, t, *steps, nu)?,
            };
            let mut tb = Table::new("coefficients", &["j", "beta"]);
            for (j, b) in a.coefficients.iter().enumerate() {
                tb.push(vec![j.into(), (*b).into()]);
                o.metric(&format!("beta_{j}"), *b);
            }
            o.metric("time", t);
            o.metric("scale", a.scale);
            o.metric("total", a.total);
            let optional = [
                ("b", a.b),
                ("signed_sum3", a.signed_sum3),
                ("abs_sum3", a.abs_sum3),
                ("beta_abs_sum", a.beta_abs_sum),
                ("closed_form", a.closed_form),
            ];
            for (k, v) in optional {
                if let Some(v) = v {
                    o.metric(k, v);
                }
            }
            o.tables.push(tb);
        }
        StabilityTask::ClosedForm { b } => {
            if b.is_empty() {
                return Err(CliError::Config("closed_form needs at least one b".into()));
            }
            let sums: Vec<f64> = b
                .par_iter()
                .map(|&b| stability_lab::heat_beta_abs_sum(b))
                .collect::<std::result::Result<_, _>>()?;
            let mut t = Table::new("closed_form", &["b", "closed_form", "series", "gap"]);
            let mut worst = 0.0f64;
            for (&b, s) in b.iter().zip(sums) {
                let c = stability_lab::heat_closed_form(b);
                worst = worst.max((c - s).abs());
                t.push(vec![b.into(), c.into(), s.into(), (c - s).abs().into()]);
            }
            o.metric("max_gap", worst);
            o.tables.push(t);
        }
        StabilityTask::Adversarial { kernels, ns, nu } => {
            let jobs: Vec<(AdversarialKernel, usize)> =
                kernels.iter().flat_map(|&k| ns.iter().map(move |&n| (k, n))).collect();
            if jobs.is_empty() {
                return Err(CliError::Config("empty sweep".into()));
            }
            let data: Vec<_> = jobs
                .par_iter()
                .map(|&(k, n)| stability_lab::adversarial_data(n, *nu, k))
                .collect::<std::result::Result<_, _>>()?;
            let mut t = Table::new("adversarial", &["kernel", "n", "node", "predicted", "witness"]);
            let mut min = f64::INFINITY;
            for (&(k, n), a) in jobs.iter().zip(&data) {
                min = min.min(a.witness);
                t.push(vec![kernel_code(k).into(), n.into(), a.node.into(), a.predicted.into(), a.witness.into()]);
                let key = match a.step {
                    KernelMode::Heat { .. } => "min_witness_heat",
                    KernelMode::Resolvent { .. } => "min_witness_resolvent",
                };
                let prev = o.metrics.get(key).copied().unwrap_or(f64::INFINITY);
                o.metric(key, prev.min(a.witness));
            }
            o.metric("min_witness", min);
            o.tables.push(t);
        }
    }
    Ok(o)
}

fn execute_repeat(target: &str) -> Result<Outcome> {
    let file = reproduction(target)?;
    if matches!(file.experiment, Experiment::Repeat { .. }) {
        return Err(CliError::Config("repeat cannot target another repeat".into()));
    }
    let csv = |o: &Outcome| o.tables.iter().map(|t| t.to_csv()).collect::<Vec<_>>();
    let first = csv(&execute(&file.experiment)?);
    let second = csv(&execute(&file.experiment)?);
    let mut o = Outcome::default();
    o.metric("tables", first.len() as f64);
    o.metric("bytes", first.iter().map(|s| s.len()).sum::<usize>() as f64);
    o.flag("identical", !first.is_empty() && first == second);
    Ok(o)
}
