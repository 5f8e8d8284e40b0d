use rand::Rng;
use serde::{Deserialize, Serialize};

use super::RealOutcome;
use crate::bench::{check_bounds, ContinuousProblem};
use crate::engine::{ConvergenceRecord, RecordRow};
use crate::error::{Error, Result};
use crate::evo::{laplace_crossover, power_mutate_gene, LaplaceParams};
use crate::rng::{purpose, stream};

const TAG: u64 = 2;

/// Generational real-coded GA with Laplace crossover and power mutation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GaParams {
    pub population: usize,
    pub p_crossover: f64,
    /// Per-gene mutation probability; `None` means `1 / d`.
    pub p_mutation: Option<f64>,
    /// Best individuals copied unchanged into the next generation.
    pub elite: usize,
    pub tournament: usize,
    pub laplace_scale: f64,
    pub power_index: f64,
}

impl Default for GaParams {
    fn default() -> Self {
        GaParams {
            population: 40,
            p_crossover: 0.8,
            p_mutation: None,
            elite: 1,
            tournament: 2,
            laplace_scale: 0.35,
            power_index: 0.25,
        }
    }
}

impl GaParams {
    pub fn validate(&self) -> Result<()> {
        let unit = |v: f64| (0.0..=1.0).contains(&v);
        if self.population < 2 {
            return Err(Error::invalid("ga.population must be >= 2"));
        }
        if !unit(self.p_crossover) || !self.p_mutation.is_none_or(unit) {
            return Err(Error::invalid("ga rates must lie in [0, 1]"));
        }
        if self.elite >= self.population {
            return Err(Error::invalid("ga.elite must be below the population size"));
        }
        if self.tournament == 0 {
            return Err(Error::invalid("ga.tournament must be >= 1"));
        }
        if !(self.laplace_scale > 0.0 && self.power_index > 0.0) {
            return Err(Error::invalid("ga.laplace_scale and ga.power_index must be positive"));
        }
        Ok(())
    }
}

/// Mean over genes of the population's standard deviation relative to the
/// gene's range.
pub fn real_diversity(population: &[Vec<f64>], bounds: &[(f64, f64)]) -> f64 {
    if population.len() < 2 || bounds.is_empty() {
        return 0.0;
    }
    let n = population.len() as f64;
    let total: f64 = bounds
        .iter()
        .enumerate()
        .map(|(k, &(lo, hi))| {
            let mean = population.iter().map(|x| x[k]).sum::<f64>() / n;
            let var = population.iter().map(|x| (x[k] - mean).powi(2)).sum::<f64>() / n;
            var.sqrt() / (hi - lo)
        })
        .sum();
    total / bounds.len() as f64
}

pub fn run_real_coded_ga<P: ContinuousProblem + ?Sized>(
    problem: &P,
    params: &GaParams,
    generations: usize,
    seed: u64,
) -> Result<RealOutcome> {
    params.validate()?;
    let bounds = problem.bounds().to_vec();
    check_bounds(&bounds)?;
    let d = bounds.len();
    let pm = params.p_mutation.unwrap_or(1.0 / d as f64);
    let laplace = LaplaceParams { location: 0.0, scale: params.laplace_scale };
    let mut rng = stream(seed, &[purpose::BASELINE, TAG]);

    let mut pop: Vec<Vec<f64>> =
        (0..params.population).map(|_| bounds.iter().map(|&(lo, hi)| rng.gen_range(lo..=hi)).collect()).collect();
    let mut fit: Vec<f64> = pop.iter().map(|x| problem.evaluate(x)).collect();
    let mut evaluations = pop.len();
    let first = argmin(&fit);
    let (mut best_x, mut best_value) = (pop[first].clone(), fit[first]);
    let mut record = ConvergenceRecord::default();

    for t in 1..=generations {
        let mut order: Vec<usize> = (0..pop.len()).collect();
        order.sort_by(|&a, &b| fit[a].total_cmp(&fit[b]));
        let mut next: Vec<Vec<f64>> = order[..params.elite].iter().map(|&i| pop[i].clone()).collect();
        let mut next_fit: Vec<f64> = order[..params.elite].iter().map(|&i| fit[i]).collect();
        while next.len() < params.population {
            let a = tournament(&fit, params.tournament, &mut rng);
            let b = tournament(&fit, params.tournament, &mut rng);
            let (mut c1, mut c2) = if rng.gen::<f64>() < params.p_crossover {
                laplace_crossover(&pop[a], &pop[b], &bounds, laplace, &mut rng)?
            } else {
                (pop[a].clone(), pop[b].clone())
            };
            for child in [&mut c1, &mut c2] {
                for (v, &(lo, hi)) in child.iter_mut().zip(&bounds) {
                    if rng.gen::<f64>() < pm {
                        *v = power_mutate_gene(*v, lo, hi, params.power_index, &mut rng);
                    }
                }
            }
            for child in [c1, c2] {
                if next.len() < params.population {
                    next_fit.push(problem.evaluate(&child));
                    next.push(child);
                    evaluations += 1;
                }
            }
        }
        pop = next;
        fit = next_fit;
        let i = argmin(&fit);
        if fit[i] < best_value {
            best_value = fit[i];
            best_x = pop[i].clone();
        }
        record.push(RecordRow {
            t,
            best: best_value,
            iteration_best: fit[i],
            mean: fit.iter().sum::<f64>() / fit.len() as f64,
            diversity: real_diversity(&pop, &bounds),
            tau_min: None,
            tau_max: None,
            tau_mean: None,
            p_crossover: Some(params.p_crossover),
            p_mutation: Some(pm),
        });
    }
    Ok(RealOutcome { best_x, best_value, record, evaluations })
}

fn argmin(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, v) in values.iter().enumerate() {
        if v.total_cmp(&values[best]).is_lt() {
            best = i;
        }
    }
    best
}

fn tournament<R: Rng + ?Sized>(fit: &[f64], size: usize, rng: &mut R) -> usize {
    let mut winner = rng.gen_range(0..fit.len());
    for _ in 1..size {
        let c = rng.gen_range(0..fit.len());
        if fit[c] < fit[winner] {
            winner = c;
        }
    }
    winner
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diversity_of_clones_is_zero() {
        let pop = vec![vec![0.3, 2.0]; 5];
        assert_eq!(real_diversity(&pop, &[(0.0, 1.0), (0.0, 4.0)]), 0.0);
    }

    #[test]
    fn diversity_of_two_extremes_is_half() {
        let pop = vec![vec![0.0], vec![1.0]];
        assert!((real_diversity(&pop, &[(0.0, 1.0)]) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn invalid_params_rejected() {
        assert!(GaParams { elite: 40, ..Default::default() }.validate().is_err());
        assert!(GaParams { p_crossover: 1.5, ..Default::default() }.validate().is_err());
        assert!(GaParams { population: 1, ..Default::default() }.validate().is_err());
    }
}
