//! One line per acceptance criterion; each runs its shipped reproduction
//! config(s) and reports the checked values.

use cli_io::{reproduction, run_experiment};
use std::process::ExitCode;
use std::time::Instant;

const CRITERIA: &[(&str, &str, &[&str])] = &[
    ("1", "critical exponent s*", &["sstar"]),
    ("2", "tau1 root and closed form", &["tau1"]),
    ("3", "heat coefficient table at k0 = 1", &["heat_table"]),
    ("4", "resolvent coefficient table at k1 = 1/2", &["resolvent_table"]),
    ("5", "closed form of the heat mass for b <= 1/2", &["closed_form"]),
    ("6", "-A_beta(s) window", &["abeta"]),
    ("7", "small perturbation of 1 overshoots", &["small_perturbation"]),
    ("8", "tau = 2 counterexample", &["tau2_counterexample"]),
    ("9", "sharp collocation maximum principle", &["sharp_collocation"]),
    ("10", "blow-up at tau = 3", &["blowup"]),
    ("11a", "Galerkin energy monotone", &["energy_monotone"]),
    ("11b", "effective margins decay in N", &["margins_galerkin", "margins_collocation", "margins_strang"]),
    ("11c", "Burgers and vorticity overshoot decay", &["burgers_n", "burgers_tau", "vorticity_n", "vorticity_tau"]),
    ("11d", "kernel L1 ratio band", &["kernel_ratio_band"]),
    ("11e", "Strang order", &["strang_order"]),
    ("11f", "adversarial overshoot", &["adversarial"]),
    ("12", "determinism", &["determinism"]),
];

fn main() -> ExitCode {
    let mut failed = Vec::new();
    for (id, title, names) in CRITERIA {
        let start = Instant::now();
        let mut ok = true;
        let mut details = Vec::new();
        for name in *names {
            match reproduction(name).and_then(|f| run_experiment(&f)) {
                Ok(r) => {
                    ok &= r.passed();
                    details.push(r.verdict_line());
                }
                Err(e) => {
                    ok = false;
                    details.push(format!("{name}: error: {e}"));
                }
            }
        }
        let status = if ok { "PASS" } else { "FAIL" };
        println!("criterion {id:<4} {status}  {title} ({:.2}s)", start.elapsed().as_secs_f64());
        for d in details {
            println!("    {d}");
        }
        if !ok {
            failed.push(*id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", CRITERIA.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed {failed:?}");
        ExitCode::FAILURE
    }
}
