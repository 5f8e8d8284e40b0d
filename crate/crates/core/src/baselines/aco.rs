use serde::{Deserialize, Serialize};

use crate::engine::{run, ConvergenceRecord, EacoParams};
use crate::error::{Error, Result};
use crate::model::{ProblemInstance, Solution};

/// Classic ant system settings: proportional selection, fixed ρ, every ant
/// deposits, no bounds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AcoParams {
    pub alpha_exp: f64,
    pub beta_exp: f64,
    pub rho: f64,
    pub m_ants: usize,
    pub q_reward: f64,
}

impl Default for AcoParams {
    fn default() -> Self {
        AcoParams { alpha_exp: 1.0, beta_exp: 5.0, rho: 0.2, m_ants: 20, q_reward: 100.0 }
    }
}

impl AcoParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.rho > 0.0 && self.rho < 1.0) {
            return Err(Error::invalid("aco.rho must lie in (0, 1)"));
        }
        if self.m_ants == 0 {
            return Err(Error::invalid("aco.m_ants must be >= 1"));
        }
        if !(self.alpha_exp >= 0.0 && self.beta_exp >= 0.0) {
            return Err(Error::invalid("aco exponents must be >= 0"));
        }
        if !(self.q_reward > 0.0 && self.q_reward.is_finite()) {
            return Err(Error::invalid("aco.q_reward must be positive"));
        }
        Ok(())
    }

    /// Engine settings with every enhancement switched off.
    pub fn to_engine(&self, max_iterations: usize, seed: u64) -> EacoParams {
        EacoParams {
            alpha_exp: self.alpha_exp,
            beta_exp: self.beta_exp,
            rho_local: self.rho,
            q0: 0.0,
            q_reward: self.q_reward,
            m_ants: self.m_ants,
            adaptive_rho: false,
            global_update: false,
            elitist: false,
            min_max: false,
            self_adaptive: false,
            max_iterations,
            seed,
            ..EacoParams::default()
        }
    }
}

pub fn run_standard_aco<P: ProblemInstance + ?Sized>(
    problem: &P,
    params: &AcoParams,
    max_iterations: usize,
    seed: u64,
) -> Result<(Solution, ConvergenceRecord)> {
    params.validate()?;
    let out = run(problem, &params.to_engine(max_iterations, seed))?;
    Ok((out.best, out.record))
}
