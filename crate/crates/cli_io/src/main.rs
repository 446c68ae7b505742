use clap::{Args, Parser, Subcommand, ValueEnum};
use cli_io::*;
use schemes::AdversarialKernel;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "mpspec", version, about = "Spectral schemes, kernel positivity and maximum-principle experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args)]
struct Global {
    /// Output directory; each experiment writes into a subdirectory named after it.
    #[arg(long, global = true, default_value = "results")]
    out: PathBuf,
    /// Override the seed of run and sweep experiments.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads for sweeps (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value = "both")]
    format: Format,
    /// Print the resolved config and exit without running or writing.
    #[arg(long, global = true)]
    dry_run: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Kernel positivity and norm computations.
    Kernel {
        #[command(subcommand)]
        task: KernelCmd,
    },
    /// Cubic-map stability, counterexamples and amplification sums.
    Stability {
        #[command(subcommand)]
        task: StabilityCmd,
    },
    /// Execute an experiment file.
    Run { config: PathBuf },
    /// Execute a sweep experiment file.
    Sweep { config: PathBuf },
    /// Execute a shipped reproduction config (`all` runs every one).
    Reproduce { name: String },
    /// List the shipped reproduction configs.
    List,
}

#[derive(Subcommand)]
enum KernelCmd {
    Profile {
        #[arg(long, default_value_t = 1)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        beta: f64,
        #[arg(long, default_value_t = 2.0)]
        s: f64,
        #[arg(long)]
        refinement: Option<usize>,
    },
    Sweep {
        #[arg(long, default_value_t = 1)]
        d: usize,
        #[arg(long)]
        beta: f64,
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
    },
    Sstar {
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    Abeta {
        #[arg(long)]
        beta: f64,
        #[arg(long)]
        s: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum KernelArg {
    Heat,
    Resolvent,
}

impl From<KernelArg> for AdversarialKernel {
    fn from(k: KernelArg) -> Self {
        match k {
            KernelArg::Heat => AdversarialKernel::Heat,
            KernelArg::Resolvent => AdversarialKernel::Resolvent,
        }
    }
}

#[derive(Subcommand)]
enum StabilityCmd {
    Envelope {
        #[arg(long)]
        tau: f64,
        #[arg(long, value_delimiter = ',', required = true)]
        alpha: Vec<f64>,
    },
    Iterate {
        #[arg(long)]
        tau: f64,
        #[arg(long, default_value_t = 0.0)]
        eta: f64,
        #[arg(long)]
        alpha0: f64,
        #[arg(long, default_value_t = 100)]
        steps: usize,
    },
    Tau1 {
        #[arg(long, default_value_t = 1e-5)]
        eta0: f64,
        #[arg(long, default_value_t = 0.5)]
        lo: f64,
        #[arg(long, default_value_t = 0.86)]
        hi: f64,
        #[arg(long, default_value_t = 10_000)]
        points: usize,
    },
    Counterexample {
        #[arg(long)]
        nu: f64,
        #[arg(long)]
        n: usize,
    },
    Amplify {
        #[arg(long, value_enum)]
        kernel: KernelArg,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        nu: f64,
        /// Heat time t or resolvent step tau.
        #[arg(long, conflicts_with = "scale")]
        time: Option<f64>,
        /// k0 (heat) or k1 (resolvent).
        #[arg(long)]
        scale: Option<f64>,
        #[arg(long, default_value_t = 1)]
        steps: u32,
    },
    ClosedForm {
        #[arg(long, value_delimiter = ',', required = true)]
        b: Vec<f64>,
    },
    Adversarial {
        #[arg(long, value_enum, value_delimiter = ',', default_value = "heat,resolvent")]
        kernel: Vec<KernelArg>,
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long, default_value_t = 1.0)]
        nu: f64,
    },
}

fn adhoc(name: &str, experiment: Experiment) -> ExperimentFile {
    ExperimentFile { name: Some(name.into()), description: None, experiment, checks: Vec::new() }
}

fn kernel_file(t: KernelCmd) -> ExperimentFile {
    let (name, task) = match t {
        KernelCmd::Profile { d, n, beta, s, refinement } => {
            ("kernel_profile", KernelTask::Profile { d, n, beta, s, refinement })
        }
        KernelCmd::Sweep { d, beta, n } => ("kernel_sweep", KernelTask::Sweep { d, beta, ns: n }),
        KernelCmd::Sstar { tol } => ("kernel_sstar", KernelTask::Sstar { tol }),
        KernelCmd::Abeta { beta, s } => ("kernel_abeta", KernelTask::Abeta { beta, s }),
    };
    adhoc(name, Experiment::Kernel(task))
}

fn stability_file(t: StabilityCmd) -> ExperimentFile {
    let (name, task) = match t {
        StabilityCmd::Envelope { tau, alpha } => ("envelope", StabilityTask::Envelope { tau, alphas: alpha }),
        StabilityCmd::Iterate { tau, eta, alpha0, steps } => {
            ("iterate", StabilityTask::Iterate { tau, eta, alpha0, steps })
        }
        StabilityCmd::Tau1 { eta0, lo, hi, points } => ("tau1", StabilityTask::Tau1 { eta0, lo, hi, points }),
        StabilityCmd::Counterexample { nu, n } => ("counterexample", StabilityTask::Counterexample { nu, n }),
        StabilityCmd::Amplify { kernel, n, nu, time, scale, steps } => (
            "amplify",
            StabilityTask::Amplify { kernel: kernel.into(), n, nu, time, scale, steps },
        ),
        StabilityCmd::ClosedForm { b } => ("closed_form", StabilityTask::ClosedForm { b }),
        StabilityCmd::Adversarial { kernel, n, nu } => (
            "adversarial",
            StabilityTask::Adversarial { kernels: kernel.into_iter().map(Into::into).collect(), ns: n, nu },
        ),
    };
    adhoc(name, Experiment::Stability(task))
}

fn load(path: &PathBuf) -> Result<ExperimentFile> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    ExperimentFile::parse(&text)
}

/// Run one file and write its bundle; `Ok(false)` when a check failed.
fn execute_file(file: ExperimentFile, g: &Global) -> Result<bool> {
    let file = match g.seed {
        Some(s) => file.with_seed(s),
        None => file,
    };
    if g.dry_run {
        print!("{}", file.to_toml());
        return Ok(true);
    }
    let report = run_experiment(&file)?;
    let summary = report.summary();
    let dir = g.out.join(&summary.name);
    write_bundle(&dir, &report.outcome.tables, &summary, g.format)?;
    println!("{} -> {}", report.verdict_line(), dir.display());
    Ok(report.passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(k) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(k).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let g = &cli.global;
    let result = match cli.command {
        Command::List => {
            for name in reproductions() {
                let desc = reproduction(name).ok().and_then(|f| f.description).unwrap_or_default();
                println!("{name:<22} {desc}");
            }
            Ok(true)
        }
        Command::Kernel { task } => execute_file(kernel_file(task), g),
        Command::Stability { task } => execute_file(stability_file(task), g),
        Command::Run { config } => load(&config).and_then(|f| execute_file(f, g)),
        Command::Sweep { config } => load(&config).and_then(|f| match f.experiment {
            Experiment::Sweep(_) | Experiment::Kernel(KernelTask::Sweep { .. }) => execute_file(f, g),
            _ => Err(CliError::Config("sweep expects a sweep experiment; use `run` for others".into())),
        }),
        Command::Reproduce { name } if name == "all" => reproductions().into_iter().try_fold(true, |ok, n| {
            let passed = execute_file(reproduction(n)?, g)?;
            Ok(ok && passed)
        }),
        Command::Reproduce { name } => reproduction(&name).and_then(|f| execute_file(f, g)),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(4),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
