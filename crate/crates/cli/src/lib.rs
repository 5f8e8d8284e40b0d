//! Experiment runner: loads a TOML config, runs the selected optimizers
//! over seeded repetitions and writes convergence CSVs, `summary.json` and
//! `report.csv`.

pub mod config;
pub mod error;
pub mod problem;
pub mod report;
pub mod runner;
pub mod sweep;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use config::{Algorithm, ExperimentConfig};
use error::{CliError, CliResult};
use problem::{Family, Problem};

#[derive(Debug, Parser)]
#[command(name = "eaco", version, about = "Enhanced ant colony optimization experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Constrained benchmark functions (g1..g3).
    Bench(RunArgs),
    /// Travelling salesman instance from a node file.
    Tsp(RunArgs),
    /// Shortest collision-free path in a polygon environment.
    Path(RunArgs),
    /// Bipedal gait parameter optimization.
    Gait(RunArgs),
    /// EACO over a grid of colony settings.
    Sweep(CommonArgs),
    /// Several algorithms on one problem.
    Compare(CommonArgs),
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    #[arg(long)]
    pub config: PathBuf,
    /// Seed of the first repetition.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub reps: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, value_enum)]
    pub algo: Option<Algorithm>,
}

fn load(args: &CommonArgs) -> CliResult<ExperimentConfig> {
    let mut cfg = ExperimentConfig::load(&args.config)?;
    if let Some(s) = args.seed {
        cfg.experiment.seed_base = s;
    }
    if let Some(r) = args.reps {
        cfg.experiment.repetitions = r;
    }
    if let Some(o) = &args.out {
        let cwd = std::env::current_dir().map_err(|e| CliError::Runtime(e.to_string()))?;
        cfg.experiment.output_dir = cwd.join(o);
    }
    cfg.validate()?;
    Ok(cfg)
}

fn single(args: &RunArgs, family: Family) -> CliResult<String> {
    let mut cfg = load(&args.common)?;
    if let Some(a) = args.algo {
        cfg.experiment.algorithm = a;
    }
    let problem = Problem::load(&cfg)?;
    if problem.family() != family {
        return Err(CliError::Config(format!(
            "problem {} is a {} problem, not {}",
            cfg.problem.id,
            problem.family().name(),
            family.name()
        )));
    }
    let out = runner::run_loaded(&problem, &cfg, &[cfg.experiment.algorithm], &cfg.output_dir())?;
    Ok(summary_lines(&out))
}

fn summary_lines(out: &runner::ExperimentOutput) -> String {
    let mut s = format!("wrote {}\n", out.output_dir.display());
    s.push_str(&report::report_csv(&out.report));
    s
}

/// Executes one parsed command and returns the text for stdout.
pub fn execute(cli: &Cli) -> CliResult<String> {
    match &cli.command {
        Command::Bench(a) => single(a, Family::Benchmark),
        Command::Tsp(a) => single(a, Family::Tsp),
        Command::Path(a) => single(a, Family::Path),
        Command::Gait(a) => single(a, Family::Gait),
        Command::Compare(a) => {
            let cfg = load(a)?;
            let problem = Problem::load(&cfg)?;
            let algos =
                if cfg.experiment.algorithms.is_empty() { problem.applicable() } else { cfg.experiment.algorithms.clone() };
            let out = runner::run_loaded(&problem, &cfg, &algos, &cfg.output_dir())?;
            Ok(summary_lines(&out))
        }
        Command::Sweep(a) => {
            let cfg = load(a)?;
            let rows = sweep::parameter_sweep(&cfg)?;
            Ok(format!("wrote {}\n{}", cfg.output_dir().display(), sweep::sweep_csv(&rows)))
        }
    }
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(text) => {
            print!("{text}");
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
