use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tunables of the enhanced colony. Defaults follow the experiential
/// settings for path planning and gait optimisation (α = 1, β = 5, ρ = 0.2,
/// m = 20, Q = 100, PEN = 0.3, p_mut = 0.5, p_cross = 0.6).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EacoParams {
    /// Exponent on pheromone in the transition rule.
    pub alpha_exp: f64,
    /// Exponent on the heuristic in the transition rule.
    pub beta_exp: f64,
    /// Local persistence ρ of the per-iteration update.
    pub rho_local: f64,
    /// Global volatility rate applied with the global-best deposit.
    pub alpha_global: f64,
    /// Probability of taking the best-scoring successor outright.
    pub q0: f64,
    /// Pheromone reward factor Q.
    pub q_reward: f64,
    /// Global adjustment factor Q_g; the global-best deposit is `Q_g / L_gb`.
    pub q_global: f64,
    /// Number of virtual elitist ants σ.
    pub sigma_elite: f64,
    pub m_ants: usize,
    /// Initial trail; defaults to `1 / (n · L_nn)` clamped into the bounds.
    pub tau0: Option<f64>,
    /// Defaults to the steady-state trail of an edge used by every ant and
    /// the global best at the reference length.
    pub tau_max: Option<f64>,
    /// Defaults to `tau_max / tau_ratio`.
    pub tau_min: Option<f64>,
    /// Bound ratio `τ_max / τ_min` used when `tau_min` is not given;
    /// defaults to `2n`.
    pub tau_ratio: Option<f64>,
    /// Penalty factor PEN for constrained problems.
    pub pen: f64,
    /// Per-ant persistence from the ant's length against the greedy
    /// pheromone-following solution.
    pub adaptive_rho: bool,
    /// Reserved decay factor λ. Carried for configuration completeness; no
    /// update rule reads it.
    pub lambda_decay: f64,
    pub max_iterations: usize,
    /// Stop once the reported best objective is at or below this value.
    pub target_objective: Option<f64>,
    /// Stop after this many iterations without a best-so-far improvement.
    pub stagnation_limit: Option<usize>,
    pub global_update: bool,
    pub elitist: bool,
    pub min_max: bool,
    pub p_crossover: f64,
    pub p_mutation: f64,
    /// Recompute crossover/mutation rates each iteration from diversity
    /// and solution quality.
    pub self_adaptive: bool,
    pub seed: u64,
}

impl Default for EacoParams {
    fn default() -> Self {
        EacoParams {
            alpha_exp: 1.0,
            beta_exp: 5.0,
            rho_local: 0.2,
            alpha_global: 0.1,
            q0: 0.8,
            q_reward: 100.0,
            q_global: 100.0,
            sigma_elite: 5.0,
            m_ants: 20,
            tau0: None,
            tau_max: None,
            tau_min: None,
            tau_ratio: None,
            pen: 0.3,
            adaptive_rho: true,
            lambda_decay: 0.9,
            max_iterations: 1000,
            target_objective: None,
            stagnation_limit: None,
            global_update: true,
            elitist: true,
            min_max: true,
            p_crossover: 0.6,
            p_mutation: 0.5,
            self_adaptive: true,
            seed: 0,
        }
    }
}

impl EacoParams {
    pub fn validate(&self) -> Result<()> {
        let open_unit = |v: f64| v > 0.0 && v < 1.0;
        let unit = |v: f64| (0.0..=1.0).contains(&v);
        let checks: [(bool, &str); 14] = [
            (open_unit(self.rho_local), "rho_local must lie in (0, 1)"),
            (open_unit(self.alpha_global), "alpha_global must lie in (0, 1)"),
            (unit(self.q0), "q0 must lie in [0, 1]"),
            (self.alpha_exp >= 0.0 && self.alpha_exp.is_finite(), "alpha_exp must be >= 0"),
            (self.beta_exp >= 0.0 && self.beta_exp.is_finite(), "beta_exp must be >= 0"),
            (self.m_ants >= 1, "m_ants must be >= 1"),
            (self.q_reward > 0.0 && self.q_reward.is_finite(), "q_reward must be positive"),
            (self.q_global > 0.0 && self.q_global.is_finite(), "q_global must be positive"),
            (self.sigma_elite >= 0.0 && self.sigma_elite.is_finite(), "sigma_elite must be >= 0"),
            (unit(self.p_crossover), "p_crossover must lie in [0, 1]"),
            (unit(self.p_mutation), "p_mutation must lie in [0, 1]"),
            (self.pen >= 0.0, "pen must be >= 0"),
            (open_unit(self.lambda_decay), "lambda_decay must lie in (0, 1)"),
            (self.max_iterations >= 1, "max_iterations must be >= 1"),
        ];
        for (ok, msg) in checks {
            if !ok {
                return Err(Error::invalid(msg));
            }
        }
        if let (Some(lo), Some(hi)) = (self.tau_min, self.tau_max) {
            if !(lo > 0.0 && lo < hi) {
                return Err(Error::invalid("tau_min must satisfy 0 < tau_min < tau_max"));
            }
        }
        if let Some(r) = self.tau_ratio {
            if !(r.is_finite() && r > 1.0) {
                return Err(Error::invalid("tau_ratio must exceed 1"));
            }
        }
        if let Some(t0) = self.tau0 {
            if !(t0.is_finite() && t0 > 0.0) {
                return Err(Error::invalid("tau0 must be positive"));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        EacoParams::default().validate().unwrap();
    }

    #[test]
    fn invariants_enforced() {
        let bad = [
            EacoParams { rho_local: 1.0, ..Default::default() },
            EacoParams { alpha_global: 0.0, ..Default::default() },
            EacoParams { q0: 1.1, ..Default::default() },
            EacoParams { m_ants: 0, ..Default::default() },
            EacoParams { beta_exp: -1.0, ..Default::default() },
            EacoParams { tau_min: Some(2.0), tau_max: Some(1.0), ..Default::default() },
        ];
        for p in bad {
            assert!(p.validate().is_err(), "{p:?}");
        }
    }
}
