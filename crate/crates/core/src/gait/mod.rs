//! Bipedal gait parameterisation, a planar kinematic walker that runs a
//! timed trial, and the fitness rules applied to trial outcomes.

mod fitness;
mod params;
mod walker;

pub use fitness::{
    fitness, gait_problem, joint_trajectory_csv, GaitObjective, GaitSummary, MIN_DISTANCE_CM, MAX_DRIFT_DEG,
    NO_MOTION_MM,
};
pub use params::{joint_angles_at, waveform, GaitBounds, GaitParams, Joint, JointWave, Leg, GAIT_DIMENSION};
pub use walker::{simulate_walk, TrialOutcome, WalkerModel};
