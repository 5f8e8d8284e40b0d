use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::bench::{check_bounds, ContinuousProblem};
use crate::engine::{ConvergenceRecord, RecordRow};
use crate::error::{Error, Result};
use crate::evo::invert_segment;
use crate::model::{ProblemInstance, StartRule, TourKind};
use crate::rng::{purpose, stream, StreamRng};

const TAG: u64 = 3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SaParams {
    pub initial_temperature: f64,
    /// Geometric cooling factor `c` in `T_{k+1} = c · T_k`.
    pub cooling: f64,
    /// Proposed moves per temperature stage; one stage is one iteration.
    pub moves_per_stage: usize,
    /// Gaussian step of continuous moves as a fraction of each range.
    pub step_fraction: f64,
}

impl Default for SaParams {
    fn default() -> Self {
        SaParams { initial_temperature: 10.0, cooling: 0.95, moves_per_stage: 20, step_fraction: 0.1 }
    }
}

impl SaParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.cooling > 0.0 && self.cooling < 1.0) {
            return Err(Error::invalid(format!("sa.cooling must lie in (0, 1), got {}", self.cooling)));
        }
        if !(self.initial_temperature >= 0.0 && self.initial_temperature.is_finite()) {
            return Err(Error::invalid("sa.initial_temperature must be >= 0"));
        }
        if self.moves_per_stage == 0 {
            return Err(Error::invalid("sa.moves_per_stage must be >= 1"));
        }
        if !(self.step_fraction > 0.0 && self.step_fraction.is_finite()) {
            return Err(Error::invalid("sa.step_fraction must be positive"));
        }
        Ok(())
    }
}

/// A state space searchable by annealing.
pub trait Annealable {
    type State: Clone;

    fn initial(&self, rng: &mut StreamRng) -> Self::State;

    /// Reported objective of a state; lower is better.
    fn energy(&self, state: &Self::State) -> f64;

    fn neighbor(&self, state: &Self::State, rng: &mut StreamRng) -> Self::State;
}

/// Closed tours over every node, moved by segment inversion.
pub struct PermutationAnneal<'a, P: ProblemInstance + ?Sized> {
    problem: &'a P,
}

impl<'a, P: ProblemInstance + ?Sized> PermutationAnneal<'a, P> {
    pub fn new(problem: &'a P) -> Result<Self> {
        if problem.tour_kind() != TourKind::Closed || problem.start_rule() != StartRule::AnyNode {
            return Err(Error::invalid("annealing over permutations needs a closed tour problem"));
        }
        Ok(PermutationAnneal { problem })
    }
}

impl<P: ProblemInstance + ?Sized> Annealable for PermutationAnneal<'_, P> {
    type State = Vec<usize>;

    fn initial(&self, rng: &mut StreamRng) -> Vec<usize> {
        let mut tour: Vec<usize> = (0..self.problem.graph().len()).collect();
        tour.shuffle(rng);
        tour
    }

    fn energy(&self, state: &Vec<usize>) -> f64 {
        self.problem.reported(self.problem.objective(state))
    }

    fn neighbor(&self, state: &Vec<usize>, rng: &mut StreamRng) -> Vec<usize> {
        let n = state.len();
        if n < 2 {
            return state.clone();
        }
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        invert_segment(state, i.min(j), i.max(j))
    }
}

/// Bounded real vectors, moved by a Gaussian step on one random
/// coordinate and clipped.
pub struct ContinuousAnneal<'a, P: ContinuousProblem + ?Sized> {
    problem: &'a P,
    step_fraction: f64,
}

impl<'a, P: ContinuousProblem + ?Sized> ContinuousAnneal<'a, P> {
    pub fn new(problem: &'a P, step_fraction: f64) -> Result<Self> {
        check_bounds(problem.bounds())?;
        Ok(ContinuousAnneal { problem, step_fraction })
    }
}

impl<P: ContinuousProblem + ?Sized> Annealable for ContinuousAnneal<'_, P> {
    type State = Vec<f64>;

    fn initial(&self, rng: &mut StreamRng) -> Vec<f64> {
        self.problem.bounds().iter().map(|&(lo, hi)| rng.gen_range(lo..=hi)).collect()
    }

    fn energy(&self, state: &Vec<f64>) -> f64 {
        self.problem.evaluate(state)
    }

    fn neighbor(&self, state: &Vec<f64>, rng: &mut StreamRng) -> Vec<f64> {
        let bounds = self.problem.bounds();
        let k = rng.gen_range(0..state.len());
        let (lo, hi) = bounds[k];
        let normal = Normal::new(0.0, self.step_fraction * (hi - lo)).expect("positive finite deviation");
        let mut next = state.clone();
        next[k] = (next[k] + normal.sample(rng)).clamp(lo, hi);
        next
    }
}

/// Metropolis acceptance probability of an energy change `delta` at
/// temperature `t`.
pub fn metropolis_probability(delta: f64, t: f64) -> f64 {
    if delta <= 0.0 {
        1.0
    } else if t <= 0.0 {
        0.0
    } else {
        (-delta / t).exp()
    }
}

/// Returns the best state, its energy and one record row per stage.
pub fn run_simulated_annealing<A: Annealable>(
    space: &A,
    params: &SaParams,
    stages: usize,
    seed: u64,
) -> Result<(A::State, f64, ConvergenceRecord)> {
    params.validate()?;
    let mut rng = stream(seed, &[purpose::BASELINE, TAG]);
    let mut current = space.initial(&mut rng);
    let mut energy = space.energy(&current);
    let (mut best, mut best_energy) = (current.clone(), energy);
    let mut temperature = params.initial_temperature;
    let mut record = ConvergenceRecord::default();
    for t in 1..=stages {
        let mut stage_best = f64::INFINITY;
        let mut sum = 0.0;
        for _ in 0..params.moves_per_stage {
            let candidate = space.neighbor(&current, &mut rng);
            let e = space.energy(&candidate);
            let p = metropolis_probability(e - energy, temperature);
            if p >= 1.0 || rng.gen::<f64>() < p {
                current = candidate;
                energy = e;
            }
            if energy < best_energy {
                best = current.clone();
                best_energy = energy;
            }
            stage_best = stage_best.min(energy);
            sum += energy;
        }
        record.push(RecordRow {
            t,
            best: best_energy,
            iteration_best: stage_best,
            mean: sum / params.moves_per_stage as f64,
            diversity: 0.0,
            tau_min: None,
            tau_max: None,
            tau_mean: None,
            p_crossover: None,
            p_mutation: None,
        });
        temperature *= params.cooling;
    }
    Ok((best, best_energy, record))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_uphill_move_at_unit_temperature() {
        assert!((metropolis_probability(1.0, 1.0) - (-1.0f64).exp()).abs() < 1e-15);
        assert!((metropolis_probability(1.0, 1.0) - 0.368).abs() < 1e-3);
    }

    #[test]
    fn zero_temperature_accepts_only_improvements() {
        assert_eq!(metropolis_probability(1e-9, 0.0), 0.0);
        assert_eq!(metropolis_probability(0.0, 0.0), 1.0);
        assert_eq!(metropolis_probability(-3.0, 0.0), 1.0);
    }

    #[test]
    fn cooling_outside_unit_interval_rejected() {
        for c in [0.0, 1.0, 1.5, -0.2] {
            assert!(SaParams { cooling: c, ..Default::default() }.validate().is_err());
        }
    }
}
