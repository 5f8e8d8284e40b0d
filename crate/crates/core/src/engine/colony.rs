use rayon::prelude::*;

use super::construct::construct_solution;
use super::params::EacoParams;
use super::record::{ConvergenceRecord, RecordRow};
use super::rules::{
    adaptive_rho, elitist_gate, elitist_update, global_pheromone_update, greedy_pheromone_solution,
    local_pheromone_update_weighted,
};
use crate::error::{Error, Result};
use crate::evo::{genotype_diversity, refine_population, self_adapt_rates, AdaptConfig, Recombination};
use crate::model::{PheromoneMatrix, ProblemInstance, Solution, StartRule};
use crate::rng::{purpose, stream};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum StopReason {
    MaxIterations,
    TargetReached,
    Stagnation,
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    /// Best solution found; `objective` is in internal (unshifted) units.
    pub best: Solution,
    /// Best objective in reported units.
    pub best_reported: f64,
    pub record: ConvergenceRecord,
    /// Ants that hit a dead end, summed over the run.
    pub construction_failures: usize,
    pub iterations: usize,
    pub stop: StopReason,
    pub final_pheromone: PheromoneMatrix,
}

/// Snapshot handed to the observer after every iteration.
pub struct IterationView<'a> {
    pub t: usize,
    pub tau: &'a PheromoneMatrix,
    /// Ants as constructed, in ant-index order.
    pub constructed: &'a [Solution],
    /// Ants after genetic refinement, ranked by objective.
    pub refined: &'a [Solution],
    pub best: &'a Solution,
    pub iteration_best: &'a Solution,
    pub d_min: f64,
    pub d_aver: f64,
    pub elitist_applied: bool,
}

pub fn run<P: ProblemInstance + ?Sized>(problem: &P, params: &EacoParams) -> Result<RunOutcome> {
    run_observed(problem, params, None, |_| {})
}

pub fn run_with<P: ProblemInstance + ?Sized>(
    problem: &P,
    params: &EacoParams,
    ops: Option<&dyn Recombination>,
) -> Result<RunOutcome> {
    run_observed(problem, params, ops, |_| {})
}

/// Greedy walk following η with lowest-id ties.
fn greedy_heuristic_solution<P: ProblemInstance + ?Sized>(problem: &P, start: usize) -> Option<Solution> {
    let n = problem.graph().len();
    let mut visited = vec![false; n];
    let mut seq = vec![start];
    visited[start] = true;
    let mut allowed = Vec::new();
    while !problem.is_complete(&seq) {
        allowed.clear();
        problem.allowed(&seq, &visited, &mut allowed);
        let last = *seq.last().unwrap();
        let mut best: Option<(usize, f64)> = None;
        for &j in &allowed {
            let e = problem.heuristic(last, j);
            if best.is_none_or(|(b, be)| e > be || (e == be && j < b)) {
                best = Some((j, e));
            }
        }
        let (j, _) = best?;
        visited[j] = true;
        seq.push(j);
    }
    let s = problem.solution(seq);
    (s.objective.is_finite() && s.objective > 0.0).then_some(s)
}

/// Reference length for pheromone initialisation: the greedy heuristic
/// walk, or the best of `m` uniform random walks when it dead-ends.
fn reference_length<P: ProblemInstance + ?Sized>(problem: &P, params: &EacoParams) -> Result<f64> {
    let start = match problem.start_rule() {
        StartRule::Fixed(s) => s,
        StartRule::AnyNode => 0,
    };
    if let Some(s) = greedy_heuristic_solution(problem, start) {
        return Ok(s.objective);
    }
    let n = problem.graph().len();
    let flat = PheromoneMatrix::unbounded(n, 1.0)?;
    let uniform = EacoParams { alpha_exp: 0.0, beta_exp: 0.0, q0: 0.0, ..params.clone() };
    let mut best = f64::INFINITY;
    for k in 0..params.m_ants.max(20) {
        let mut rng = stream(params.seed, &[purpose::INIT, k as u64]);
        if let Ok(s) = construct_solution(problem, &flat, &uniform, &mut rng) {
            if s.objective.is_finite() && s.objective > 0.0 {
                best = best.min(s.objective);
            }
        }
    }
    if best.is_finite() {
        Ok(best)
    } else {
        Err(Error::Infeasible("no feasible construction found during initialisation".into()))
    }
}

fn initial_pheromone<P: ProblemInstance + ?Sized>(
    problem: &P,
    params: &EacoParams,
    seeded: Option<f64>,
) -> Result<PheromoneMatrix> {
    let n = problem.graph().len();
    let needs_reference = params.tau0.is_none() || (params.min_max && (params.tau_max.is_none() || params.tau_min.is_none()));
    let l_ref = match (needs_reference, seeded) {
        (false, _) => 1.0,
        (true, Some(l)) => reference_length(problem, params).map_or(l, |r| r.min(l)),
        (true, None) => reference_length(problem, params)?,
    };
    let tau0 = params.tau0.unwrap_or(1.0 / (n as f64 * l_ref));
    if !params.min_max {
        return PheromoneMatrix::unbounded(n, tau0);
    }
    let tau_max = params.tau_max.unwrap_or_else(|| steady_state_tau(params, l_ref));
    let tau_min = params.tau_min.unwrap_or(tau_max / params.tau_ratio.unwrap_or(2.0 * n as f64));
    if !(tau_min > 0.0 && tau_min < tau_max) {
        return Err(Error::invalid(format!("pheromone bounds [{tau_min}, {tau_max}] are inconsistent")));
    }
    PheromoneMatrix::new(n, tau0.clamp(tau_min, tau_max), tau_min, tau_max)
}

/// Fixed point of the per-iteration updates for an edge that every ant and
/// the global best use at length `l_ref`:
/// `τ = (1-α)((1-ρ)τ + mQ/L) + αQ_g/L`, or `τ = (1-ρ)τ + mQ/L` without the
/// global update.
pub fn steady_state_tau(params: &EacoParams, l_ref: f64) -> f64 {
    let m = params.m_ants as f64;
    let local = m * params.q_reward / l_ref;
    if params.global_update {
        let a = params.alpha_global;
        ((1.0 - a) * local + a * params.q_global / l_ref) / (1.0 - (1.0 - a) * (1.0 - params.rho_local))
    } else {
        local / params.rho_local
    }
}

/// Runs the colony, calling `observer` once per iteration.
///
/// Per iteration: construct every ant, refine with `ops` (if any), local
/// update, global-best update, gated elitist update, clamp, record.
pub fn run_observed<P, F>(
    problem: &P,
    params: &EacoParams,
    ops: Option<&dyn Recombination>,
    observer: F,
) -> Result<RunOutcome>
where
    P: ProblemInstance + ?Sized,
    F: FnMut(&IterationView<'_>),
{
    run_seeded(problem, params, ops, &[], observer)
}

/// Like [`run_observed`], with initial solutions: the best valid entry of
/// `seeds` is the incumbent before the first iteration, receives an
/// elitist deposit and tightens the reference length used for the default
/// pheromone levels.
pub fn run_seeded<P, F>(
    problem: &P,
    params: &EacoParams,
    ops: Option<&dyn Recombination>,
    seeds: &[Vec<usize>],
    mut observer: F,
) -> Result<RunOutcome>
where
    P: ProblemInstance + ?Sized,
    F: FnMut(&IterationView<'_>),
{
    params.validate()?;
    let n = problem.graph().len();
    if n < 2 {
        return Err(Error::invalid("construction graph needs at least two nodes"));
    }
    let mut best: Option<Solution> = seeds
        .iter()
        .filter(|s| !s.is_empty() && s.iter().all(|&v| v < n) && problem.is_complete(s))
        .map(|s| problem.solution(s.clone()))
        .filter(|s| s.objective.is_finite() && s.objective > 0.0)
        .min_by(|a, b| a.objective.total_cmp(&b.objective));
    let mut tau = initial_pheromone(problem, params, best.as_ref().map(|s| s.objective))?;
    if let Some(seed) = &best {
        let sigma = if params.elitist { params.sigma_elite } else { 1.0 };
        elitist_update(&mut tau, seed, sigma, params.q_reward)?;
        if params.min_max {
            tau.clamp();
        }
    }
    let adapt_cfg = AdaptConfig::default();
    let mut record = ConvergenceRecord::default();
    let mut failures = 0usize;
    let mut since_improvement = 0usize;
    let mut stop = StopReason::MaxIterations;
    let mut iterations = 0;

    for t in 1..=params.max_iterations {
        iterations = t;
        let results: Vec<Result<Solution>> = (0..params.m_ants)
            .into_par_iter()
            .map(|k| {
                let mut rng = stream(params.seed, &[purpose::CONSTRUCT, t as u64, k as u64]);
                construct_solution(problem, &tau, params, &mut rng)
            })
            .collect();
        let mut constructed = Vec::with_capacity(params.m_ants);
        for r in results {
            match r {
                Ok(s) if s.objective.is_finite() && s.objective > 0.0 => constructed.push(s),
                Ok(s) => return Err(Error::InvalidObjective(s.objective)),
                Err(Error::DeadEnd { .. }) => failures += 1,
                Err(e) => return Err(e),
            }
        }
        if constructed.is_empty() {
            return Err(Error::ColonyExhausted { iteration: t, ants: params.m_ants });
        }

        let mut ants = constructed.clone();
        let mut rates = None;
        if let Some(ops) = ops {
            let (pc, pm) = if params.self_adaptive {
                let mean = ants.iter().map(|s| s.objective).sum::<f64>() / ants.len() as f64;
                let it_best = ants.iter().map(|s| s.objective).fold(f64::INFINITY, f64::min);
                self_adapt_rates(genotype_diversity(&ants), it_best, mean, &adapt_cfg)
            } else {
                (params.p_crossover, params.p_mutation)
            };
            let mut rng = stream(params.seed, &[purpose::EVO, t as u64]);
            refine_population(problem, &mut ants, pc, pm, ops, &mut rng)?;
            rates = Some((pc, pm));
        }

        let it_best = ants
            .iter()
            .min_by(|a, b| a.objective.total_cmp(&b.objective))
            .expect("nonempty")
            .clone();
        let d_aver = ants.iter().map(|s| s.objective).sum::<f64>() / ants.len() as f64;
        let d_min_prev = best.as_ref().map_or(f64::INFINITY, |b| b.objective);
        let improved = it_best.objective < d_min_prev;
        if improved {
            best = Some(it_best.clone());
            since_improvement = 0;
        } else {
            since_improvement += 1;
        }
        let best_ref = best.as_ref().expect("best set after first iteration");

        let rhos: Vec<f64> = if params.adaptive_rho {
            let mut cache: Vec<Option<Option<f64>>> = vec![None; n];
            ants.iter()
                .map(|a| {
                    let start = a.nodes[0];
                    let l_pn = *cache[start].get_or_insert_with(|| {
                        greedy_pheromone_solution(&tau, problem, start)
                            .ok()
                            .map(|s| s.objective)
                            .filter(|l| l.is_finite() && *l > 0.0)
                    });
                    l_pn.and_then(|l| adaptive_rho(a.objective, l).ok()).unwrap_or(params.rho_local)
                })
                .collect()
        } else {
            vec![params.rho_local; ants.len()]
        };
        local_pheromone_update_weighted(&mut tau, &ants, &rhos, params.rho_local, params.q_reward)?;
        if params.global_update {
            global_pheromone_update(&mut tau, best_ref, params.alpha_global, params.q_global)?;
        }
        let elitist_applied =
            params.elitist && elitist_gate(it_best.objective, d_min_prev, it_best.objective, d_aver);
        if elitist_applied {
            elitist_update(&mut tau, &it_best, params.sigma_elite, params.q_reward)?;
        }
        if params.min_max {
            tau.clamp();
        }

        let reported: Vec<f64> = ants.iter().map(|s| problem.reported(s.objective)).collect();
        let (tmin, tmax, tmean) = tau.stats();
        let best_reported = problem.reported(best_ref.objective);
        record.push(RecordRow {
            t,
            best: best_reported,
            iteration_best: problem.reported(it_best.objective),
            mean: reported.iter().sum::<f64>() / reported.len() as f64,
            diversity: genotype_diversity(&ants),
            tau_min: Some(tmin),
            tau_max: Some(tmax),
            tau_mean: Some(tmean),
            p_crossover: rates.map(|r| r.0),
            p_mutation: rates.map(|r| r.1),
        });
        observer(&IterationView {
            t,
            tau: &tau,
            constructed: &constructed,
            refined: &ants,
            best: best_ref,
            iteration_best: &it_best,
            d_min: it_best.objective,
            d_aver,
            elitist_applied,
        });

        if params.target_objective.is_some_and(|target| best_reported <= target) {
            stop = StopReason::TargetReached;
            break;
        }
        if params.stagnation_limit.is_some_and(|lim| since_improvement >= lim) {
            stop = StopReason::Stagnation;
            break;
        }
    }

    let best = best.expect("at least one iteration ran");
    Ok(RunOutcome {
        best_reported: problem.reported(best.objective),
        best,
        record,
        construction_failures: failures,
        iterations,
        stop,
        final_pheromone: tau,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evo::PermutationOps;
    use crate::model::{ConstructionGraph, Node, TourProblem};

    fn square() -> TourProblem {
        let pts = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0), (0.5, 2.0)];
        let nodes = pts.iter().enumerate().map(|(i, &(x, y))| Node::new(i, vec![x, y])).collect();
        TourProblem::new(ConstructionGraph::euclidean(nodes).unwrap())
    }

    #[test]
    fn runs_are_reproducible() {
        let p = square();
        let params = EacoParams { max_iterations: 30, seed: 11, ..Default::default() };
        let ops = PermutationOps::default();
        let a = run_with(&p, &params, Some(&ops)).unwrap();
        let b = run_with(&p, &params, Some(&ops)).unwrap();
        assert_eq!(a.record, b.record);
        assert_eq!(a.best, b.best);
    }

    #[test]
    fn best_so_far_is_monotone_and_bounds_hold() {
        let p = square();
        let params = EacoParams { max_iterations: 50, ..Default::default() };
        let mut violations = 0;
        let out = run_observed(&p, &params, None, |v| violations += v.tau.bound_violations()).unwrap();
        assert_eq!(violations, 0);
        for w in out.record.rows.windows(2) {
            assert!(w[1].best <= w[0].best);
        }
        let nn = crate::model::nearest_neighbor_tour(p.graph(), 0).unwrap();
        assert!(out.best_reported <= nn.objective + 1e-12);
    }

    #[test]
    fn stagnation_and_target_stop_early() {
        let p = square();
        let params = EacoParams { max_iterations: 500, stagnation_limit: Some(5), ..Default::default() };
        let out = run(&p, &params).unwrap();
        assert_eq!(out.stop, StopReason::Stagnation);
        let params = EacoParams { max_iterations: 500, target_objective: Some(1e9), ..Default::default() };
        let out = run(&p, &params).unwrap();
        assert_eq!((out.stop, out.iterations), (StopReason::TargetReached, 1));
    }
}
