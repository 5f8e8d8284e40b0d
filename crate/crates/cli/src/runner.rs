use std::path::{Path, PathBuf};
use std::time::Instant;

use eaco_core::baselines::{
    run_pso, run_real_coded_ga, run_simulated_annealing, run_standard_aco, ContinuousAnneal, PermutationAnneal,
};
use eaco_core::bench::{run_continuous, ContinuousConfig, ContinuousProblem};
use eaco_core::engine::{run_with, ConvergenceRecord, EacoParams};
use eaco_core::evo::{PermutationOps, Recombination};
use rayon::prelude::*;
use eaco_core::gait::{joint_trajectory_csv, GaitSummary};
use eaco_core::model::ProblemInstance;
use serde::Serialize;

use crate::config::{Algorithm, ExperimentConfig};
use crate::error::{io_error, run_error, CliError, CliResult};
use crate::problem::Problem;
use crate::report::{build_report, report_csv, ComparisonRow};

/// One seeded run of one algorithm.
#[derive(Debug, Clone, Serialize)]
pub struct RunResult {
    pub algorithm: Algorithm,
    pub seed: u64,
    /// Best objective in reported units.
    pub best: f64,
    pub iterations: usize,
    pub iterations_to_target: Option<usize>,
    pub success: Option<bool>,
    pub wall_time_s: f64,
    pub csv: String,
    /// Best real vector or best node sequence.
    pub solution: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gait: Option<GaitSummary>,
    #[serde(skip)]
    pub record: ConvergenceRecord,
}

struct RawRun {
    best: f64,
    record: ConvergenceRecord,
    solution: serde_json::Value,
    best_x: Option<Vec<f64>>,
}

fn continuous_run(
    p: &dyn ContinuousProblem,
    cfg: &ExperimentConfig,
    algo: Algorithm,
    seed: u64,
) -> eaco_core::Result<RawRun> {
    let iters = cfg.eaco.max_iterations;
    let b = &cfg.baselines;
    let (best_x, best, record) = match algo {
        Algorithm::Eaco => {
            let params = EacoParams { seed, ..cfg.eaco.clone() };
            let o = run_continuous(p, &params, &cfg.continuous)?;
            (o.best_x, o.best_value, o.record)
        }
        Algorithm::Aco => {
            let plain = ContinuousConfig { genetic_operators: false, ..cfg.continuous.clone() };
            b.aco.validate()?;
            let o = run_continuous(p, &b.aco.to_engine(iters, seed), &plain)?;
            (o.best_x, o.best_value, o.record)
        }
        Algorithm::Ga => {
            let o = run_real_coded_ga(p, &b.ga, iters, seed)?;
            (o.best_x, o.best_value, o.record)
        }
        Algorithm::Sa => {
            let space = ContinuousAnneal::new(p, b.sa.step_fraction)?;
            run_simulated_annealing(&space, &b.sa, iters, seed)?
        }
        Algorithm::Pso => {
            let o = run_pso(p, &b.pso, iters, seed)?;
            (o.best_x, o.best_value, o.record)
        }
    };
    Ok(RawRun { best, record, solution: serde_json::json!(best_x), best_x: Some(best_x) })
}

fn graph_run<P: ProblemInstance>(p: &P, cfg: &ExperimentConfig, algo: Algorithm, seed: u64, ops: bool) -> eaco_core::Result<RawRun> {
    let iters = cfg.eaco.max_iterations;
    let (nodes, best, record) = match algo {
        Algorithm::Eaco => {
            let params = EacoParams { seed, ..cfg.eaco.clone() };
            let perm = PermutationOps::default();
            let hook: Option<&dyn Recombination> = if ops { Some(&perm) } else { None };
            let o = run_with(p, &params, hook)?;
            (o.best.nodes, o.best_reported, o.record)
        }
        Algorithm::Aco => {
            let (s, r) = run_standard_aco(p, &cfg.baselines.aco, iters, seed)?;
            let best = p.reported(s.objective);
            (s.nodes, best, r)
        }
        Algorithm::Sa => {
            let space = PermutationAnneal::new(p)?;
            run_simulated_annealing(&space, &cfg.baselines.sa, iters, seed)?
        }
        Algorithm::Ga | Algorithm::Pso => unreachable!("filtered by Problem::supports"),
    };
    Ok(RawRun { best, record, solution: serde_json::json!(nodes), best_x: None })
}

pub fn run_one(problem: &Problem, cfg: &ExperimentConfig, algo: Algorithm, seed: u64, target: Option<f64>) -> CliResult<RunResult> {
    if !problem.supports(algo) {
        return Err(CliError::Config(format!("{algo} does not apply to {} problems", problem.family().name())));
    }
    let start = Instant::now();
    let raw = match problem {
        Problem::Constrained(p) => continuous_run(p, cfg, algo, seed),
        Problem::Gait(p) => continuous_run(p, cfg, algo, seed),
        Problem::Tour(p) => graph_run(p, cfg, algo, seed, true),
        Problem::Path(r) => graph_run(&r.path_problem(), cfg, algo, seed, false),
    }
    .map_err(run_error)?;
    let wall_time_s = start.elapsed().as_secs_f64();
    let gait = match (problem, &raw.best_x) {
        (Problem::Gait(g), Some(x)) => {
            let params = g.params(x).map_err(run_error)?;
            let outcome = g.trial(x).map_err(run_error)?;
            Some(GaitSummary::new(params, &outcome))
        }
        _ => None,
    };
    Ok(RunResult {
        algorithm: algo,
        seed,
        best: raw.best,
        iterations: raw.record.len(),
        iterations_to_target: target.and_then(|t| raw.record.iterations_to(t)),
        success: target.map(|t| raw.best <= t),
        wall_time_s,
        csv: run_csv_name(algo, seed),
        solution: raw.solution,
        gait,
        record: raw.record,
    })
}

pub fn run_csv_name(algo: Algorithm, seed: u64) -> String {
    format!("run_{algo}_{seed}.csv")
}

#[derive(Debug, Clone, Serialize)]
pub struct ExperimentOutput {
    pub problem: String,
    pub target: Option<f64>,
    pub runs: Vec<RunResult>,
    pub report: Vec<ComparisonRow>,
    #[serde(skip)]
    pub output_dir: PathBuf,
}

/// Runs every algorithm for every repetition (seed = seed_base + r) and
/// writes the per-run CSVs, `summary.json` and `report.csv`.
pub fn run_experiment(cfg: &ExperimentConfig, algorithms: &[Algorithm]) -> CliResult<ExperimentOutput> {
    let problem = Problem::load(cfg)?;
    run_loaded(&problem, cfg, algorithms, &cfg.output_dir())
}

pub(crate) fn run_loaded(
    problem: &Problem,
    cfg: &ExperimentConfig,
    algorithms: &[Algorithm],
    out_dir: &Path,
) -> CliResult<ExperimentOutput> {
    if algorithms.is_empty() {
        return Err(CliError::Config("no algorithm selected".into()));
    }
    for &a in algorithms {
        if !problem.supports(a) {
            return Err(CliError::Config(format!("{a} does not apply to {} problems", problem.family().name())));
        }
    }
    let target = match cfg.experiment.target {
        Some(t) => Some(t),
        None => problem.default_target()?,
    };
    std::fs::create_dir_all(out_dir).map_err(|e| io_error(out_dir, e))?;
    let jobs: Vec<(Algorithm, u64)> = algorithms
        .iter()
        .flat_map(|&a| (0..cfg.experiment.repetitions).map(move |r| (a, cfg.experiment.seed_base + r as u64)))
        .collect();
    let runs = jobs
        .par_iter()
        .map(|&(algo, seed)| run_one(problem, cfg, algo, seed, target))
        .collect::<CliResult<Vec<_>>>()?;
    for run in &runs {
        write(&out_dir.join(&run.csv), &run.record.to_csv())?;
        if let (Problem::Gait(g), Some(summary)) = (problem, &run.gait) {
            let csv = joint_trajectory_csv(&summary.params, &g.model, g.cycle_period * 2.0, cfg.gait.trajectory_hz)
                .map_err(run_error)?;
            write(&out_dir.join(format!("gait_{}_{}.csv", run.algorithm, run.seed)), &csv)?;
        }
    }
    let report = build_report(&runs, algorithms, target.is_some());
    write(&out_dir.join("report.csv"), &report_csv(&report))?;
    let out = ExperimentOutput { problem: cfg.problem.id.clone(), target, runs, report, output_dir: out_dir.to_path_buf() };
    let json = serde_json::to_string_pretty(&out).map_err(|e| CliError::Runtime(e.to_string()))?;
    write(&out_dir.join("summary.json"), &json)?;
    Ok(out)
}

pub(crate) fn write(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|e| io_error(path, e))
}
