use rand::Rng;

use super::params::EacoParams;
use crate::error::{Error, Result};
use crate::model::{PheromoneMatrix, ProblemInstance, Solution, StartRule};

/// One ant's private construction state.
#[derive(Debug, Clone)]
pub struct Ant {
    pub current: usize,
    /// Visited nodes in order (the tabu list).
    pub tabu: Vec<usize>,
    visited: Vec<bool>,
    /// Running length along the graph's distance matrix.
    pub length: f64,
}

impl Ant {
    pub fn new(node_count: usize, start: usize) -> Self {
        let mut visited = vec![false; node_count];
        visited[start] = true;
        Ant {
            current: start,
            tabu: vec![start],
            visited,
            length: 0.0,
        }
    }

    pub fn visited(&self) -> &[bool] {
        &self.visited
    }

    pub fn move_to(&mut self, next: usize, step_length: f64) {
        debug_assert!(!self.visited[next], "tabu node {next} revisited");
        self.visited[next] = true;
        self.tabu.push(next);
        self.current = next;
        self.length += step_length;
    }
}

#[inline]
fn weight(tau: f64, eta: f64, alpha: f64, beta: f64) -> f64 {
    let t = if alpha == 1.0 { tau } else { tau.powf(alpha) };
    let h = if beta == 1.0 { eta } else { eta.powf(beta) };
    t * h
}

fn weighted_candidates<P: ProblemInstance + ?Sized>(
    ant: &Ant,
    problem: &P,
    tau: &PheromoneMatrix,
    alpha: f64,
    beta: f64,
    allowed: &mut Vec<usize>,
    out: &mut Vec<(usize, f64)>,
) -> Result<()> {
    allowed.clear();
    out.clear();
    problem.allowed(&ant.tabu, &ant.visited, allowed);
    if allowed.is_empty() {
        return Err(Error::DeadEnd { node: ant.current });
    }
    let i = ant.current;
    out.extend(
        allowed
            .iter()
            .map(|&j| (j, weight(tau.get(i, j), problem.heuristic(i, j), alpha, beta))),
    );
    Ok(())
}

fn normalise(weights: &mut [(usize, f64)]) {
    let total: f64 = weights.iter().map(|w| w.1).sum();
    if total.is_finite() && total > 0.0 {
        for w in weights.iter_mut() {
            w.1 /= total;
        }
    } else {
        let p = 1.0 / weights.len() as f64;
        for w in weights.iter_mut() {
            w.1 = p;
        }
    }
}

/// Transition distribution over the ant's allowed successors:
/// `p_ij = τ_ij^α η_ij^β / Σ_{k allowed} τ_ik^α η_ik^β`. Nodes in the tabu
/// list never appear.
pub fn transition_probabilities<P: ProblemInstance + ?Sized>(
    ant: &Ant,
    problem: &P,
    tau: &PheromoneMatrix,
    alpha_exp: f64,
    beta_exp: f64,
) -> Result<Vec<(usize, f64)>> {
    let mut allowed = Vec::new();
    let mut out = Vec::new();
    weighted_candidates(ant, problem, tau, alpha_exp, beta_exp, &mut allowed, &mut out)?;
    normalise(&mut out);
    Ok(out)
}

/// Pseudo-random-proportional choice. With probability `q0` the highest
/// scoring candidate wins (ties to the lowest id); otherwise the candidate
/// is sampled from the scores. Scores need not be normalised.
pub fn select_next_node<R: Rng + ?Sized>(scores: &[(usize, f64)], q0: f64, rng: &mut R) -> usize {
    assert!(!scores.is_empty(), "no candidates to select from");
    let exploit = rng.gen::<f64>() < q0;
    if exploit {
        let mut best = scores[0];
        for &(j, s) in &scores[1..] {
            if s > best.1 || (s == best.1 && j < best.0) {
                best = (j, s);
            }
        }
        return best.0;
    }
    let total: f64 = scores.iter().map(|s| s.1).sum();
    if !(total.is_finite() && total > 0.0) {
        return scores[rng.gen_range(0..scores.len())].0;
    }
    let threshold = rng.gen::<f64>() * total;
    let mut acc = 0.0;
    for &(j, s) in scores {
        acc += s;
        if threshold < acc {
            return j;
        }
    }
    scores[scores.len() - 1].0
}

/// Builds one feasible solution by repeated successor selection.
pub fn construct_solution<P: ProblemInstance + ?Sized, R: Rng + ?Sized>(
    problem: &P,
    tau: &PheromoneMatrix,
    params: &EacoParams,
    rng: &mut R,
) -> Result<Solution> {
    let n = problem.graph().len();
    let start = match problem.start_rule() {
        StartRule::AnyNode => rng.gen_range(0..n),
        StartRule::Fixed(s) => s,
    };
    let dist = problem.graph().dist();
    let mut ant = Ant::new(n, start);
    let mut allowed = Vec::new();
    let mut scores = Vec::new();
    while !problem.is_complete(&ant.tabu) {
        weighted_candidates(
            &ant,
            problem,
            tau,
            params.alpha_exp,
            params.beta_exp,
            &mut allowed,
            &mut scores,
        )?;
        let next = select_next_node(&scores, params.q0, rng);
        ant.move_to(next, dist.get(ant.current, next));
    }
    Ok(problem.solution(ant.tabu))
}
