//! Comparison optimizers: standard ACO, a real-coded GA, simulated
//! annealing and particle swarm optimisation. All of them emit the same
//! [`ConvergenceRecord`](crate::engine::ConvergenceRecord) rows as the
//! enhanced colony.

mod aco;
mod ga;
mod pso;
mod sa;

pub use aco::{run_standard_aco, AcoParams};
pub use ga::{real_diversity, run_real_coded_ga, GaParams};
pub use pso::{run_pso, PsoParams, Swarm};
pub use sa::{
    metropolis_probability, run_simulated_annealing, Annealable, ContinuousAnneal, PermutationAnneal,
    SaParams,
};

use serde::{Deserialize, Serialize};

use crate::engine::ConvergenceRecord;
use crate::error::Result;

/// Parameter sets of all four baselines.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BaselineParams {
    pub aco: AcoParams,
    pub ga: GaParams,
    pub sa: SaParams,
    pub pso: PsoParams,
}

impl BaselineParams {
    pub fn validate(&self) -> Result<()> {
        self.aco.validate()?;
        self.ga.validate()?;
        self.sa.validate()?;
        self.pso.validate()
    }
}

/// Result of a baseline run on a continuous problem. Values are in
/// reported units.
#[derive(Debug, Clone, PartialEq)]
pub struct RealOutcome {
    pub best_x: Vec<f64>,
    pub best_value: f64,
    pub record: ConvergenceRecord,
    pub evaluations: usize,
}
