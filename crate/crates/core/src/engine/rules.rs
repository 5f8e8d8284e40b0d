//! Pheromone update rules. Each is a small pure step so the colony loop
//! can compose them in a fixed order: local, global, elitist, clamp.

use crate::error::{Error, Result};
use crate::model::{PheromoneMatrix, ProblemInstance, Solution, StartRule};

fn positive(v: f64) -> Result<f64> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(Error::InvalidObjective(v))
    }
}

/// `τ ← (1−ρ)τ + ρ·Σ_k Q/L_k` over edges used by ant k.
pub fn local_pheromone_update(
    tau: &mut PheromoneMatrix,
    tours: &[Solution],
    rho_local: f64,
    q_reward: f64,
) -> Result<()> {
    let rhos = vec![rho_local; tours.len()];
    local_pheromone_update_weighted(tau, tours, &rhos, rho_local, q_reward)
}

/// Local update where ant k's deposit is weighted by its own persistence
/// `rhos[k]`; evaporation uses `rho_decay`.
pub fn local_pheromone_update_weighted(
    tau: &mut PheromoneMatrix,
    tours: &[Solution],
    rhos: &[f64],
    rho_decay: f64,
    q_reward: f64,
) -> Result<()> {
    debug_assert_eq!(tours.len(), rhos.len());
    for t in tours {
        positive(t.objective)?;
    }
    tau.scale_all(1.0 - rho_decay);
    for (t, &rho) in tours.iter().zip(rhos) {
        tau.deposit_along(t, rho * q_reward / t.objective);
    }
    Ok(())
}

/// `τ ← (1−α)τ + α·Δτ`, with `Δτ = Q_g / L_gb` on global-best edges and 0
/// elsewhere.
pub fn global_pheromone_update(
    tau: &mut PheromoneMatrix,
    global_best: &Solution,
    alpha_global: f64,
    q_global: f64,
) -> Result<()> {
    let gain = g_score(global_best.objective, q_global)?;
    tau.scale_all(1.0 - alpha_global);
    tau.deposit_along(global_best, alpha_global * gain);
    Ok(())
}

/// Adds `Δτ* = σ·Q / f(S_best)` to every edge of the iteration best.
pub fn elitist_update(
    tau: &mut PheromoneMatrix,
    s_best: &Solution,
    sigma_elite: f64,
    q_reward: f64,
) -> Result<()> {
    let f = positive(s_best.objective)?;
    let delta = sigma_elite * q_reward / f;
    if delta > 0.0 {
        tau.deposit_along(s_best, delta);
    }
    Ok(())
}

/// Elitist deposits are allowed only when the iteration minimum strictly
/// improves on the previous one and the ant beats the iteration mean.
pub fn elitist_gate(d_min_t: f64, d_min_prev: f64, d_k: f64, d_aver_t: f64) -> bool {
    d_min_t < d_min_prev && d_k < d_aver_t
}

/// `ρ_n = L_n⁻¹ / (L_n⁻¹ + L_pn⁻¹)`.
pub fn adaptive_rho(l_n: f64, l_pn: f64) -> Result<f64> {
    if !(l_n.is_finite() && l_n > 0.0 && l_pn.is_finite() && l_pn > 0.0) {
        return Err(Error::invalid(format!(
            "adaptive rho needs positive lengths, got {l_n} and {l_pn}"
        )));
    }
    let (a, b) = (1.0 / l_n, 1.0 / l_pn);
    Ok(a / (a + b))
}

/// `g(s) = Q_g / cost`.
pub fn g_score(path_cost: f64, q_global: f64) -> Result<f64> {
    if !(path_cost.is_finite() && path_cost > 0.0) {
        return Err(Error::invalid(format!("path cost must be positive, got {path_cost}")));
    }
    Ok(q_global / path_cost)
}

pub fn clamp_pheromone(tau: &mut PheromoneMatrix) {
    tau.clamp();
}

/// Deterministic walk that always takes the successor with the most
/// pheromone (ties to the lowest id).
pub fn greedy_pheromone_solution<P: ProblemInstance + ?Sized>(
    tau: &PheromoneMatrix,
    problem: &P,
    start: usize,
) -> Result<Solution> {
    let n = problem.graph().len();
    if start >= n {
        return Err(Error::invalid(format!("start node {start} out of range")));
    }
    if let StartRule::Fixed(s) = problem.start_rule() {
        if s != start {
            return Err(Error::invalid(format!("problem requires start node {s}")));
        }
    }
    let mut visited = vec![false; n];
    let mut seq = vec![start];
    visited[start] = true;
    let mut allowed = Vec::new();
    while !problem.is_complete(&seq) {
        allowed.clear();
        problem.allowed(&seq, &visited, &mut allowed);
        let r = *seq.last().expect("nonempty");
        let mut best: Option<(usize, f64)> = None;
        for &u in &allowed {
            let v = tau.get(r, u);
            let better = match best {
                None => true,
                Some((bu, bv)) => v > bv || (v == bv && u < bu),
            };
            if better {
                best = Some((u, v));
            }
        }
        let (next, _) = best.ok_or(Error::DeadEnd { node: r })?;
        visited[next] = true;
        seq.push(next);
    }
    Ok(problem.solution(seq))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{ConstructionGraph, Node, TourProblem};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn uniform(n: usize, v: f64) -> PheromoneMatrix {
        PheromoneMatrix::new(n, v, v / 100.0, v * 100.0).unwrap()
    }

    fn open(nodes: Vec<usize>, objective: f64) -> Solution {
        Solution::new(nodes, objective, false)
    }

    #[test]
    fn local_update_examples() {
        let mut tau = uniform(4, 1.0);
        local_pheromone_update(&mut tau, &[open(vec![0, 1], 50.0)], 0.2, 100.0).unwrap();
        assert!((tau.get(0, 1) - 1.2).abs() < 1e-12);
        assert!((tau.get(1, 0) - 1.2).abs() < 1e-12);
        assert!((tau.get(2, 3) - 0.8).abs() < 1e-12);

        let mut tau = uniform(4, 1.0);
        let tours = [open(vec![0, 1], 100.0), open(vec![1, 0], 200.0)];
        local_pheromone_update(&mut tau, &tours, 0.2, 100.0).unwrap();
        assert!((tau.get(0, 1) - (0.8 + 0.3)).abs() < 1e-12);

        let mut tau = uniform(4, 1.0);
        assert_eq!(
            local_pheromone_update(&mut tau, &[open(vec![0, 1], 0.0)], 0.2, 100.0),
            Err(Error::InvalidObjective(0.0))
        );
    }

    #[test]
    fn global_update_examples() {
        let best = open(vec![0, 1], 10.0);
        let mut tau = uniform(3, 1.0);
        global_pheromone_update(&mut tau, &best, 0.1, 1.0).unwrap();
        assert!((tau.get(0, 1) - 0.91).abs() < 1e-12);
        assert!((tau.get(1, 2) - 0.90).abs() < 1e-12);

        let mut tau = uniform(3, 1.0);
        global_pheromone_update(&mut tau, &best, 1e-300, 1.0).unwrap();
        assert_eq!(tau.get(0, 1), 1.0);
        assert_eq!(tau.get(1, 2), 1.0);
    }

    #[test]
    fn elitist_examples() {
        let best = open(vec![0, 1], 500.0);
        let mut tau = uniform(3, 1.0);
        elitist_update(&mut tau, &best, 5.0, 100.0).unwrap();
        assert!((tau.get(0, 1) - 2.0).abs() < 1e-12);
        assert_eq!(tau.get(1, 2), 1.0);

        let mut tau = uniform(3, 1.0);
        elitist_update(&mut tau, &best, 0.0, 100.0).unwrap();
        assert_eq!(tau.get(0, 1), 1.0);

        assert!(elitist_update(&mut tau, &open(vec![0, 1], -1.0), 5.0, 100.0).is_err());
    }

    #[test]
    fn gate_examples() {
        assert!(elitist_gate(10.0, 12.0, 10.0, 15.0));
        assert!(!elitist_gate(12.0, 12.0, 10.0, 15.0));
        assert!(!elitist_gate(10.0, 12.0, 16.0, 15.0));
    }

    #[test]
    fn adaptive_rho_examples() {
        assert_eq!(adaptive_rho(7.0, 7.0).unwrap(), 0.5);
        assert!((adaptive_rho(100.0, 300.0).unwrap() - 0.75).abs() < 1e-15);
        assert!((adaptive_rho(300.0, 100.0).unwrap() - 0.25).abs() < 1e-15);
        assert!(adaptive_rho(0.0, 1.0).is_err());
        assert!(adaptive_rho(1.0, -2.0).is_err());
    }

    #[test]
    fn g_score_examples() {
        assert_eq!(g_score(50.0, 100.0).unwrap(), 2.0);
        assert_eq!(g_score(100.0, 100.0).unwrap(), 1.0);
        assert!(g_score(10.0, 100.0).unwrap() > g_score(20.0, 100.0).unwrap());
        assert!(g_score(0.0, 100.0).is_err());
    }

    #[test]
    fn clamp_examples() {
        let mut tau = PheromoneMatrix::new(3, 1.0, 0.001, 10.0).unwrap();
        tau.set(0, 1, 0.0001);
        tau.set(0, 2, 5.0);
        tau.set(1, 2, 99.0);
        clamp_pheromone(&mut tau);
        assert_eq!(tau.get(0, 1), 0.001);
        assert_eq!(tau.get(0, 2), 5.0);
        assert_eq!(tau.get(1, 2), 10.0);
    }

    fn ring(n: usize) -> TourProblem {
        let nodes = (0..n)
            .map(|i| {
                let a = i as f64 / n as f64 * std::f64::consts::TAU;
                Node::new(i, vec![a.cos(), a.sin()])
            })
            .collect();
        TourProblem::new(ConstructionGraph::euclidean(nodes).unwrap())
    }

    #[test]
    fn greedy_follows_lowest_id_under_uniform_trails() {
        let p = ring(5);
        let tau = uniform(5, 1.0);
        let s = greedy_pheromone_solution(&tau, &p, 2).unwrap();
        assert_eq!(s.nodes, vec![2, 0, 1, 3, 4]);
    }

    #[test]
    fn greedy_follows_a_forced_cycle() {
        let p = ring(5);
        let mut tau = uniform(5, 1.0);
        let cycle = [0, 3, 1, 4, 2];
        for k in 0..5 {
            tau.set(cycle[k], cycle[(k + 1) % 5], 50.0);
        }
        let s = greedy_pheromone_solution(&tau, &p, 0).unwrap();
        assert_eq!(s.nodes, cycle.to_vec());
    }

    #[test]
    fn greedy_matches_independent_argmax_trace() {
        let p = ring(6);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let mut tau = uniform(6, 1.0);
            for i in 0..6 {
                for j in 0..6 {
                    tau.set(i, j, rng.gen_range(0.5..2.0));
                }
            }
            let start = rng.gen_range(0..6);
            let s = greedy_pheromone_solution(&tau, &p, start).unwrap();
            // oracle: scan every unvisited node, keep strictly larger values
            let mut trace = vec![start];
            let mut cur = start;
            while trace.len() < 6 {
                let mut pick = usize::MAX;
                let mut val = f64::NEG_INFINITY;
                for u in 0..6 {
                    if !trace.contains(&u) && tau.get(cur, u) > val {
                        pick = u;
                        val = tau.get(cur, u);
                    }
                }
                trace.push(pick);
                cur = pick;
            }
            assert_eq!(s.nodes, trace);
        }
    }
}
