use crate::config::{Axis, GridValue, SweepMetric, SweepSpec};
use crate::execute::{energy_increases, simulate};
use crate::output::{Outcome, Table};
use crate::{CliError, Result};
use kernel_lab::fit::log_log_fit;
use rayon::prelude::*;
use schemes::SchemeConfig;

fn set_param(cfg: &mut SchemeConfig, param: &str, v: GridValue) -> Result<()> {
    let int = |v: GridValue| match v {
        GridValue::Int(i) if i >= 0 => Ok(i as u64),
        _ => Err(CliError::Config(format!("{param} takes non-negative integers, got {v:?}"))),
    };
    match param {
        "n" => cfg.n = int(v)? as usize,
        "steps" => cfg.steps = Some(int(v)? as usize),
        "seed" => cfg.seed = int(v)?,
        "tau" => cfg.tau = Some(v.as_f64()),
        "nu" => cfg.nu = v.as_f64(),
        "t_final" => cfg.t_final = Some(v.as_f64()),
        _ => return Err(CliError::Config(format!("unknown sweep parameter {param:?}"))),
    }
    Ok(())
}

/// Cartesian product of the axes, last axis fastest.
pub fn grid_points(grid: &[Axis]) -> Vec<Vec<GridValue>> {
    if grid.is_empty() || grid.iter().any(|a| a.values.is_empty()) {
        return Vec::new();
    }
    let mut points = vec![Vec::new()];
    for axis in grid {
        points = points
            .into_iter()
            .flat_map(|p| {
                axis.values.iter().map(move |v| {
                    let mut q = p.clone();
                    q.push(*v);
                    q
                })
            })
            .collect();
    }
    points
}

fn metric_of(spec: &SweepSpec, cfg: &SchemeConfig, reference: Option<&[f64]>) -> Result<f64> {
    let out = simulate(cfg)?;
    let rows = &out.diagnostics.rows;
    let after = if rows.len() > 1 { &rows[1..] } else { &rows[..] };
    Ok(match spec.metric {
        SweepMetric::MaxMargin => after.iter().map(|r| r.margin).fold(f64::NEG_INFINITY, f64::max),
        SweepMetric::MaxLinf => after.iter().map(|r| r.linf).fold(f64::NEG_INFINITY, f64::max),
        SweepMetric::FinalLinf => rows.last().expect("initial row").linf,
        SweepMetric::EnergyIncreases => energy_increases(&out) as f64,
        SweepMetric::FinalError => {
            let r = reference.expect("checked");
            let v = out.final_state.values();
            if v.len() != r.len() {
                return Err(CliError::Config("reference and sweep grids differ".into()));
            }
            v.iter().zip(r).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
        }
    })
}

/// Run every grid point (and seed) in parallel; rows come out in grid order.
pub fn run_sweep(spec: &SweepSpec) -> Result<Outcome> {
    let points = grid_points(&spec.grid);
    if points.is_empty() {
        return Err(CliError::Config("empty sweep".into()));
    }
    let seeds = spec.seeds.unwrap_or(1).max(1);
    let total = points.len().saturating_mul(seeds as usize);
    if total > spec.cap {
        return Err(CliError::Config(format!("sweep has {total} runs, above the cap of {}", spec.cap)));
    }
    if let Some(f) = &spec.fit {
        if !spec.grid.iter().any(|a| &a.param == f) {
            return Err(CliError::Config(format!("fit parameter {f:?} is not a grid axis")));
        }
    }
    let reference = match (spec.metric, &spec.reference) {
        (SweepMetric::FinalError, Some(r)) => Some(simulate(r)?.final_state.values().to_vec()),
        (SweepMetric::FinalError, None) => return Err(CliError::Config("final_error needs a reference".into())),
        _ => None,
    };
    let mut configs = Vec::with_capacity(total);
    for p in &points {
        let mut cfg = spec.base.clone();
        for (axis, v) in spec.grid.iter().zip(p) {
            set_param(&mut cfg, &axis.param, *v)?;
        }
        for s in 0..seeds {
            let mut c = cfg.clone();
            c.seed = cfg.seed.wrapping_add(s);
            c.validate()?;
            configs.push(c);
        }
    }
    let values: Vec<f64> = configs
        .par_iter()
        .map(|c| metric_of(spec, c, reference.as_deref()))
        .collect::<Result<_>>()?;

    let mut cols: Vec<&str> = spec.grid.iter().map(|a| a.param.as_str()).collect();
    cols.extend(["seeds", "value"]);
    let mut table = Table::new("sweep", &cols);
    let mut per_point = Vec::with_capacity(points.len());
    for (i, p) in points.iter().enumerate() {
        let chunk = &values[i * seeds as usize..(i + 1) * seeds as usize];
        let v = chunk.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        per_point.push(v);
        let mut row: Vec<_> = p
            .iter()
            .map(|g| match *g {
                GridValue::Int(i) => crate::Cell::Int(i),
                GridValue::Float(f) => crate::Cell::Real(f),
            })
            .collect();
        row.push((seeds as usize).into());
        row.push(v.into());
        table.push(row);
    }

    let mut o = Outcome::default();
    o.metric("runs", total as f64);
    o.metric("max", per_point.iter().copied().fold(f64::NEG_INFINITY, f64::max));
    o.metric("min", per_point.iter().copied().fold(f64::INFINITY, f64::min));
    o.metric("violations", values.iter().filter(|&&v| v > 0.0).count() as f64);
    let increasing = per_point.windows(2).all(|w| w[1] > w[0]);
    let decreasing = per_point.windows(2).all(|w| w[1] < w[0]);
    o.flag("increasing", increasing);
    o.flag("decreasing", decreasing);
    if let Some(f) = &spec.fit {
        let x = table.column(f).expect("checked above");
        if let Some(fit) = log_log_fit(&x, &per_point) {
            // a fit that silently dropped non-positive values would be misleading
            if per_point.iter().all(|&v| v > 0.0) {
                o.metric("slope", fit.slope);
                o.metric("intercept", fit.intercept);
                o.metric("r2", fit.r2);
            }
        }
    }
    o.tables.push(table);
    Ok(o)
}
