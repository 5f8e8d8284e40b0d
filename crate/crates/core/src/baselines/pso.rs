use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{real_diversity, RealOutcome};
use crate::bench::{check_bounds, ContinuousProblem};
use crate::engine::{ConvergenceRecord, RecordRow};
use crate::error::{Error, Result};
use crate::rng::{purpose, stream};

const TAG: u64 = 4;

/// Inertia-weight PSO with a global-best topology.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PsoParams {
    pub swarm: usize,
    pub inertia: f64,
    pub cognitive: f64,
    pub social: f64,
    /// Velocity limit as a fraction of each range.
    pub v_max_fraction: f64,
}

impl Default for PsoParams {
    fn default() -> Self {
        PsoParams { swarm: 30, inertia: 0.729, cognitive: 1.49445, social: 1.49445, v_max_fraction: 0.2 }
    }
}

impl PsoParams {
    pub fn validate(&self) -> Result<()> {
        if self.swarm == 0 {
            return Err(Error::invalid("pso.swarm must be >= 1"));
        }
        if !(0.0..1.0).contains(&self.inertia) {
            return Err(Error::invalid("pso.inertia must lie in [0, 1)"));
        }
        if !(self.cognitive >= 0.0 && self.social >= 0.0) {
            return Err(Error::invalid("pso coefficients must be >= 0"));
        }
        if !(self.v_max_fraction > 0.0 && self.v_max_fraction <= 1.0) {
            return Err(Error::invalid("pso.v_max_fraction must lie in (0, 1]"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Swarm {
    pub positions: Vec<Vec<f64>>,
    pub velocities: Vec<Vec<f64>>,
    pub values: Vec<f64>,
    pub personal_best: Vec<Vec<f64>>,
    pub personal_value: Vec<f64>,
    pub global_best: Vec<f64>,
    pub global_value: f64,
}

impl Swarm {
    /// Swarm from explicit particles; positions are clipped to the bounds.
    pub fn new<P: ContinuousProblem + ?Sized>(
        problem: &P,
        mut positions: Vec<Vec<f64>>,
        velocities: Vec<Vec<f64>>,
    ) -> Result<Self> {
        let bounds = problem.bounds();
        check_bounds(bounds)?;
        if positions.is_empty() || positions.len() != velocities.len() {
            return Err(Error::invalid("one velocity per particle is required"));
        }
        if positions.iter().chain(&velocities).any(|v| v.len() != bounds.len()) {
            return Err(Error::invalid("particle dimension does not match the bounds"));
        }
        for x in &mut positions {
            clip(x, bounds);
        }
        let values: Vec<f64> = positions.iter().map(|x| problem.evaluate(x)).collect();
        let mut g = 0;
        for i in 1..values.len() {
            if values[i] < values[g] {
                g = i;
            }
        }
        Ok(Swarm {
            personal_best: positions.clone(),
            personal_value: values.clone(),
            global_best: positions[g].clone(),
            global_value: values[g],
            positions,
            velocities,
            values,
        })
    }

    /// One velocity and position update of every particle.
    pub fn step<P: ContinuousProblem + ?Sized, R: Rng + ?Sized>(
        &mut self,
        problem: &P,
        params: &PsoParams,
        rng: &mut R,
    ) {
        let bounds = problem.bounds();
        for i in 0..self.positions.len() {
            for (k, &(lo, hi)) in bounds.iter().enumerate() {
                let v_max = params.v_max_fraction * (hi - lo);
                let x = self.positions[i][k];
                let r1: f64 = rng.gen();
                let r2: f64 = rng.gen();
                let v = params.inertia * self.velocities[i][k]
                    + params.cognitive * r1 * (self.personal_best[i][k] - x)
                    + params.social * r2 * (self.global_best[k] - x);
                self.velocities[i][k] = v.clamp(-v_max, v_max);
                self.positions[i][k] = (x + self.velocities[i][k]).clamp(lo, hi);
            }
            let f = problem.evaluate(&self.positions[i]);
            self.values[i] = f;
            if f < self.personal_value[i] {
                self.personal_value[i] = f;
                self.personal_best[i] = self.positions[i].clone();
            }
        }
        for i in 0..self.positions.len() {
            if self.personal_value[i] < self.global_value {
                self.global_value = self.personal_value[i];
                self.global_best = self.personal_best[i].clone();
            }
        }
    }
}

fn clip(x: &mut [f64], bounds: &[(f64, f64)]) {
    for (v, &(lo, hi)) in x.iter_mut().zip(bounds) {
        *v = v.clamp(lo, hi);
    }
}

pub fn run_pso<P: ContinuousProblem + ?Sized>(
    problem: &P,
    params: &PsoParams,
    iterations: usize,
    seed: u64,
) -> Result<RealOutcome> {
    params.validate()?;
    let bounds = problem.bounds().to_vec();
    check_bounds(&bounds)?;
    let mut rng = stream(seed, &[purpose::BASELINE, TAG]);
    let positions: Vec<Vec<f64>> =
        (0..params.swarm).map(|_| bounds.iter().map(|&(lo, hi)| rng.gen_range(lo..=hi)).collect()).collect();
    let velocities: Vec<Vec<f64>> = (0..params.swarm)
        .map(|_| {
            bounds
                .iter()
                .map(|&(lo, hi)| {
                    let v_max = params.v_max_fraction * (hi - lo);
                    rng.gen_range(-v_max..=v_max)
                })
                .collect()
        })
        .collect();
    let mut swarm = Swarm::new(problem, positions, velocities)?;
    let mut evaluations = params.swarm;
    let mut record = ConvergenceRecord::default();
    for t in 1..=iterations {
        swarm.step(problem, params, &mut rng);
        evaluations += params.swarm;
        let it_best = swarm.values.iter().copied().fold(f64::INFINITY, f64::min);
        record.push(RecordRow {
            t,
            best: swarm.global_value,
            iteration_best: it_best,
            mean: swarm.values.iter().sum::<f64>() / swarm.values.len() as f64,
            diversity: real_diversity(&swarm.positions, &bounds),
            tau_min: None,
            tau_max: None,
            tau_mean: None,
            p_crossover: None,
            p_mutation: None,
        });
    }
    Ok(RealOutcome { best_x: swarm.global_best, best_value: swarm.global_value, record, evaluations })
}
