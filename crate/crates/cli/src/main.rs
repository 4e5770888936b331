//! `rfd`: run the derivative-free solvers, benchmark campaigns and
//! performance profiles from the command line.
//!
//! Exit status: 0 on success, 2 for invalid input, 3 when a run aborts.

mod commands;
mod output;
mod settings;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rfd_core::bench::CostMetric;

use settings::{ConfigError, Settings, Suite};

#[derive(Parser, Debug)]
#[command(name = "rfd", version, about = "Derivative-free Riemannian optimization with adaptive finite differences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve one problem instance and write its iteration log.
    Solve(SolveArgs),
    /// Run every solver on a problem suite and write the cost table.
    Bench(BenchArgs),
    /// Build performance profiles from a cost table.
    Profiles(ProfilesArgs),
    /// List the instances of a suite with their ambient and intrinsic dimensions.
    ListProblems(ListArgs),
    /// Summarize an iteration log written by `solve` or `bench`.
    Inspect(InspectArgs),
}

#[derive(Args, Debug)]
struct Common {
    /// Initial step parameter sigma_0.
    #[arg(long)]
    sigma0: Option<f64>,
    /// Initial accuracy parameter tau_0 (must be at least sigma_0).
    #[arg(long)]
    tau0: Option<f64>,
    /// Target gradient accuracy epsilon.
    #[arg(long)]
    eps: Option<f64>,
    /// Function-evaluation budget per run (default 100 (d + 1)).
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Reference gradient Lipschitz constant enabling the certified stop.
    #[arg(long)]
    lipschitz_ref: Option<f64>,
    /// Output directory; artifacts go under `<out>/runs/<id>/`.
    #[arg(long, env = "RFD_OUT_DIR")]
    out: Option<PathBuf>,
    /// Run identifier (directory name under `runs/`).
    #[arg(long)]
    id: Option<String>,
    /// `key = value` settings file; its values override flags.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SolveArgs {
    /// Instance name, e.g. `topsv-5-5-3`, `rotsync-3-4`, `rosenbrock-n10`.
    #[arg(long)]
    problem: Option<String>,
    /// int-rfd, ext-rfd or dfqrm.
    #[arg(long)]
    solver: Option<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[arg(long)]
    suite: Option<Suite>,
    /// Instance names; repeat or comma-separate. Used instead of `--suite`.
    #[arg(long, value_delimiter = ',')]
    problem: Vec<String>,
    /// Comma-separated solver list.
    #[arg(long, value_delimiter = ',')]
    solver: Vec<String>,
    /// Cost measure: fe, re or wall.
    #[arg(long)]
    metric: Option<CostMetric>,
    /// Convergence tolerance eta.
    #[arg(long)]
    eta: Option<f64>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct ProfilesArgs {
    /// Cost table written by `bench`.
    #[arg(long)]
    costs: PathBuf,
    /// Output directory (default: next to the cost table).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "Performance profile")]
    title: String,
}

#[derive(Args, Debug)]
struct ListArgs {
    #[arg(long, default_value = "riemannian")]
    suite: Suite,
}

#[derive(Args, Debug)]
struct InspectArgs {
    /// Iteration log (CSV).
    trace: PathBuf,
}

/// Flags first, then the settings file on top.
fn settings_from(common: Common, base: Settings) -> anyhow::Result<Settings> {
    let mut s = Settings {
        sigma0: common.sigma0,
        tau0: common.tau0,
        eps: common.eps,
        budget: common.budget,
        seed: common.seed,
        lipschitz_ref: common.lipschitz_ref,
        out: common.out,
        id: common.id,
        ..base
    };
    if let Some(path) = &common.config {
        s.overlay_file(path)?;
    }
    Ok(s)
}

fn dispatch(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Solve(a) => {
            let base = Settings {
                problems: a.problem.into_iter().collect(),
                solvers: a.solver.into_iter().collect(),
                ..Settings::default()
            };
            commands::solve(&settings_from(a.common, base)?)
        }
        Command::Bench(a) => {
            let base = Settings {
                problems: a.problem,
                solvers: a.solver,
                suite: a.suite,
                metric: a.metric,
                eta: a.eta,
                jobs: a.jobs,
                ..Settings::default()
            };
            commands::bench(&settings_from(a.common, base)?)
        }
        Command::Profiles(a) => commands::profiles(&a.costs, a.out.as_deref(), &a.title),
        Command::ListProblems(a) => commands::list_problems(a.suite),
        Command::Inspect(a) => commands::inspect(&a.trace),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<ConfigError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(3)
            }
        }
    }
}
