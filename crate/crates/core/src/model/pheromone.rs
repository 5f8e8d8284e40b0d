use super::matrix::SquareMatrix;
use super::solution::Solution;
use crate::error::{Error, Result};

/// Initial trail level `1 / (n · L_nn)`.
pub fn init_pheromone(n: usize, l_nn: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::invalid("pheromone needs at least two nodes"));
    }
    if !(l_nn.is_finite() && l_nn > 0.0) {
        return Err(Error::invalid(format!("reference length must be positive, got {l_nn}")));
    }
    Ok(1.0 / (n as f64 * l_nn))
}

/// Trail matrix with its min-max bounds.
#[derive(Debug, Clone)]
pub struct PheromoneMatrix {
    tau: SquareMatrix,
    tau0: f64,
    tau_min: f64,
    tau_max: f64,
}

impl PheromoneMatrix {
    pub fn new(n: usize, tau0: f64, tau_min: f64, tau_max: f64) -> Result<Self> {
        if !(tau_min.is_finite() && tau_max.is_finite() && tau_min > 0.0 && tau_min < tau_max) {
            return Err(Error::invalid(format!(
                "pheromone bounds must satisfy 0 < min < max, got [{tau_min}, {tau_max}]"
            )));
        }
        if !(tau_min..=tau_max).contains(&tau0) {
            return Err(Error::invalid(format!(
                "initial pheromone {tau0} outside [{tau_min}, {tau_max}]"
            )));
        }
        Ok(PheromoneMatrix {
            tau: SquareMatrix::filled(n, tau0),
            tau0,
            tau_min,
            tau_max,
        })
    }

    /// Unbounded matrix, used by plain ACO which runs without min-max limits.
    pub fn unbounded(n: usize, tau0: f64) -> Result<Self> {
        if !(tau0.is_finite() && tau0 > 0.0) {
            return Err(Error::invalid("initial pheromone must be positive"));
        }
        Ok(PheromoneMatrix {
            tau: SquareMatrix::filled(n, tau0),
            tau0,
            tau_min: 0.0,
            tau_max: f64::INFINITY,
        })
    }

    pub fn size(&self) -> usize {
        self.tau.size()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.tau.get(i, j)
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.tau.set(i, j, v);
    }

    /// Adds `amount` to both directions of an undirected edge.
    pub fn deposit(&mut self, i: usize, j: usize, amount: f64) {
        let v = self.tau.get(i, j) + amount;
        self.tau.set(i, j, v);
        if i != j {
            self.tau.set(j, i, v);
        }
    }

    pub fn scale_all(&mut self, factor: f64) {
        for v in self.tau.values_mut() {
            *v *= factor;
        }
    }

    pub fn deposit_along(&mut self, solution: &Solution, amount: f64) {
        for (i, j) in solution.undirected_edges() {
            self.deposit(i, j, amount);
        }
    }

    pub fn matrix(&self) -> &SquareMatrix {
        &self.tau
    }

    pub fn tau0(&self) -> f64 {
        self.tau0
    }

    pub fn tau_min(&self) -> f64 {
        self.tau_min
    }

    pub fn tau_max(&self) -> f64 {
        self.tau_max
    }

    pub fn clamp(&mut self) {
        clamp_values(self.tau.values_mut(), self.tau_min, self.tau_max);
    }

    /// `(min, max, mean)` over off-diagonal entries.
    pub fn stats(&self) -> (f64, f64, f64) {
        let n = self.size();
        let (mut lo, mut hi, mut sum) = (f64::INFINITY, f64::NEG_INFINITY, 0.0);
        for i in 0..n {
            for (j, &v) in self.tau.row(i).iter().enumerate() {
                if i != j {
                    lo = lo.min(v);
                    hi = hi.max(v);
                    sum += v;
                }
            }
        }
        let count = (n * n.saturating_sub(1)).max(1) as f64;
        (lo, hi, sum / count)
    }

    /// Number of off-diagonal entries outside `[tau_min, tau_max]`.
    pub fn bound_violations(&self) -> usize {
        let n = self.size();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| i != j)
            .filter(|&(i, j)| {
                let v = self.get(i, j);
                !(self.tau_min..=self.tau_max).contains(&v)
            })
            .count()
    }
}

/// Three-branch min-max rule applied in place.
pub(crate) fn clamp_values(values: &mut [f64], tau_min: f64, tau_max: f64) {
    for v in values {
        if *v < tau_min {
            *v = tau_min;
        } else if *v > tau_max {
            *v = tau_max;
        }
    }
}
