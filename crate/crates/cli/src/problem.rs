use eaco_core::bench::{
    build_waypoint_graph, constrained_problem, oracle_shortest_path, oracle_tsp, read_environment_file,
    ConstrainedProblem, ContinuousProblem, WaypointGraph, ORACLE_TSP_MAX,
};
use eaco_core::gait::GaitObjective;
use eaco_core::model::{read_graph_file, ConstructionGraph, ProblemInstance, TourProblem};

use crate::config::{Algorithm, ExperimentConfig};
use crate::error::{load_error, CliError, CliResult};

/// Problem family a subcommand works on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Benchmark,
    Tsp,
    Path,
    Gait,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Benchmark => "benchmark",
            Family::Tsp => "tsp",
            Family::Path => "path",
            Family::Gait => "gait",
        }
    }
}

pub enum Problem {
    Constrained(ConstrainedProblem),
    Gait(GaitObjective),
    Tour(TourProblem),
    Path(WaypointGraph),
}

impl Problem {
    pub fn load(cfg: &ExperimentConfig) -> CliResult<Problem> {
        let id = cfg.problem.id.trim();
        let file = || cfg.problem_file().ok_or_else(|| CliError::Config(format!("problem id {id} needs a file")));
        if let Some(n) = id.strip_prefix('g').and_then(|n| n.parse::<u8>().ok()) {
            let p = constrained_problem(n).map_err(load_error)?;
            return Ok(Problem::Constrained(p.with_pen(cfg.eaco.pen)));
        }
        if id == "gait" {
            let g = &cfg.gait;
            let obj = GaitObjective::new(&g.bounds, g.model.clone(), g.cycle_period, g.duration).map_err(load_error)?;
            return Ok(Problem::Gait(obj));
        }
        if id.starts_with("tsp:") {
            let nodes = read_graph_file(&file()?).map_err(load_error)?;
            let graph = ConstructionGraph::euclidean(nodes).map_err(load_error)?;
            return Ok(Problem::Tour(TourProblem::new(graph)));
        }
        if id.starts_with("path:") {
            let env = read_environment_file(file()?).map_err(load_error)?;
            let roadmap = build_waypoint_graph(&env, cfg.problem.resolution).map_err(load_error)?;
            return Ok(Problem::Path(roadmap));
        }
        Err(CliError::Config(format!("unknown problem id {id:?}; expected g1..g4, tsp:<file>, path:<file> or gait")))
    }

    pub fn family(&self) -> Family {
        match self {
            Problem::Constrained(_) => Family::Benchmark,
            Problem::Gait(_) => Family::Gait,
            Problem::Tour(_) => Family::Tsp,
            Problem::Path(_) => Family::Path,
        }
    }

    pub fn continuous(&self) -> Option<&dyn ContinuousProblem> {
        match self {
            Problem::Constrained(p) => Some(p),
            Problem::Gait(p) => Some(p),
            _ => None,
        }
    }

    pub fn supports(&self, algo: Algorithm) -> bool {
        match self.family() {
            Family::Benchmark | Family::Gait => true,
            Family::Tsp => matches!(algo, Algorithm::Eaco | Algorithm::Aco | Algorithm::Sa),
            Family::Path => matches!(algo, Algorithm::Eaco | Algorithm::Aco),
        }
    }

    pub fn applicable(&self) -> Vec<Algorithm> {
        Algorithm::ALL.into_iter().filter(|&a| self.supports(a)).collect()
    }

    /// Success threshold when the config gives none: the convergence
    /// threshold for G1, the reported optima for G2 and G3, the exact tour
    /// for small TSPs and 5% over the shortest path for path planning.
    pub fn default_target(&self) -> CliResult<Option<f64>> {
        Ok(match self {
            Problem::Constrained(p) if p.name() == "g1" => Some(-14.0),
            Problem::Constrained(p) => Some(p.reported_optimum),
            Problem::Gait(_) => None,
            Problem::Tour(t) if t.graph().len() <= ORACLE_TSP_MAX => {
                let best = oracle_tsp(t.graph()).map_err(load_error)?.objective;
                Some(best * (1.0 + 1e-9))
            }
            Problem::Tour(_) => None,
            Problem::Path(r) => Some(oracle_shortest_path(r).map_err(load_error)?.objective * 1.05),
        })
    }
}
