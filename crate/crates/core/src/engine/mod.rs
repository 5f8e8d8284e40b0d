//! The EACO colony: solution construction with the pseudo-random-proportional
//! rule, local/global/elitist pheromone updates, adaptive persistence,
//! min-max clamping and convergence recording.

mod colony;
mod construct;
mod params;
mod record;
mod rules;

pub use colony::{run, run_observed, run_seeded, run_with, steady_state_tau, IterationView, RunOutcome, StopReason};
pub use construct::{construct_solution, select_next_node, transition_probabilities, Ant};
pub use params::EacoParams;
pub use record::{format_sig, ConvergenceRecord, RecordRow};
pub use rules::{
    adaptive_rho, clamp_pheromone, elitist_gate, elitist_update, g_score,
    global_pheromone_update, greedy_pheromone_solution, local_pheromone_update,
    local_pheromone_update_weighted,
};
