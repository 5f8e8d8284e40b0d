use serde::{Deserialize, Serialize};

use super::params::{angles_unchecked, GaitBounds, GaitParams, Joint, Leg, GAIT_DIMENSION};
use super::walker::{simulate_walk, TrialOutcome, WalkerModel};
use crate::bench::{discretize, ContinuousProblem, DiscretizationScheme, LayeredProblem};
use crate::engine::format_sig;
use crate::error::{Error, Result};

/// Trials covering no more than this distance score 0.
pub const MIN_DISTANCE_CM: f64 = 10.0;
/// Trials drifting more than this from the heading score 0.
pub const MAX_DRIFT_DEG: f64 = 45.0;
/// Forward displacement at or below this counts as no motion.
pub const NO_MOTION_MM: f64 = 1.0;

/// Distance in cm, or 0 for a trial that barely moved, made no forward
/// progress or drifted too far off the heading.
pub fn fitness(outcome: &TrialOutcome) -> f64 {
    if outcome.l_dis * 10.0 <= NO_MOTION_MM {
        return 0.0;
    }
    if outcome.l_dis <= MIN_DISTANCE_CM {
        return 0.0;
    }
    if outcome.drift_angle > MAX_DRIFT_DEG {
        return 0.0;
    }
    outcome.l_dis
}

/// Negated fitness of a decoded gait vector. Internally the colony
/// minimises `1 / (1 + fitness)`, which stays positive.
#[derive(Debug, Clone, PartialEq)]
pub struct GaitObjective {
    bounds: Vec<(f64, f64)>,
    pub model: WalkerModel,
    pub cycle_period: f64,
    pub duration: f64,
}

impl GaitObjective {
    pub fn new(bounds: &GaitBounds, model: WalkerModel, cycle_period: f64, duration: f64) -> Result<Self> {
        model.validate()?;
        bounds.validate(&model)?;
        if !(cycle_period > 0.0 && duration > 0.0 && cycle_period.is_finite() && duration.is_finite()) {
            return Err(Error::invalid("cycle period and trial duration must be positive"));
        }
        Ok(GaitObjective { bounds: bounds.to_vec(), model, cycle_period, duration })
    }

    pub fn params(&self, x: &[f64]) -> Result<GaitParams> {
        GaitParams::from_vector(x, self.cycle_period)
    }

    pub fn trial(&self, x: &[f64]) -> Result<TrialOutcome> {
        Ok(simulate_walk(&self.params(x)?, &self.model, self.duration))
    }
}

impl ContinuousProblem for GaitObjective {
    fn name(&self) -> &str {
        "gait"
    }

    fn bounds(&self) -> &[(f64, f64)] {
        &self.bounds
    }

    fn evaluate(&self, x: &[f64]) -> f64 {
        match self.trial(x) {
            Ok(outcome) => -fitness(&outcome),
            Err(_) => 0.0,
        }
    }

    fn to_internal(&self, value: f64) -> f64 {
        1.0 / (1.0 - value.min(0.0))
    }

    fn to_reported(&self, internal: f64) -> f64 {
        1.0 - 1.0 / internal
    }
}

/// Layered graph over the gait vector.
pub fn gait_problem<'a>(
    objective: &'a GaitObjective,
    scheme: &DiscretizationScheme,
) -> Result<LayeredProblem<'a, GaitObjective>> {
    if scheme.dimension() != GAIT_DIMENSION {
        return Err(Error::invalid("gait scheme must have 17 dimensions"));
    }
    discretize(objective, scheme)
}

/// Both legs' joint angles sampled at `hz` over `duration` seconds.
pub fn joint_trajectory_csv(params: &GaitParams, model: &WalkerModel, duration: f64, hz: f64) -> Result<String> {
    params.validate(model)?;
    if !(duration >= 0.0 && hz > 0.0) {
        return Err(Error::invalid("duration must be >= 0 and hz positive"));
    }
    let mut out = String::from("t");
    for leg in ["left", "right"] {
        for j in Joint::ALL {
            out.push_str(&format!(",{leg}_{}", j.name()));
        }
    }
    out.push('\n');
    let samples = (duration * hz).round() as usize;
    for k in 0..=samples {
        let t = k as f64 / hz;
        out.push_str(&format_sig(t, 6));
        for leg in [Leg::Left, Leg::Right] {
            for q in angles_unchecked(params, model, t, leg) {
                out.push(',');
                out.push_str(&format_sig(q, 6));
            }
        }
        out.push('\n');
    }
    Ok(out)
}

/// Best gait of a run with its trial figures.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaitSummary {
    pub params: GaitParams,
    pub fitness: f64,
    pub mean_speed: f64,
    pub l_dis: f64,
    pub drift_angle: f64,
    pub fell: bool,
}

impl GaitSummary {
    pub fn new(params: GaitParams, outcome: &TrialOutcome) -> Self {
        GaitSummary {
            fitness: fitness(outcome),
            mean_speed: outcome.mean_speed,
            l_dis: outcome.l_dis,
            drift_angle: outcome.drift_angle,
            fell: outcome.fell,
            params,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn internal_transform_round_trips() {
        let o = GaitObjective::new(&GaitBounds::default(), WalkerModel::default(), 1.0, 20.0).unwrap();
        for f in [0.0, -3.5, -400.0] {
            let i = o.to_internal(f);
            assert!(i > 0.0 && i <= 1.0);
            assert!((o.to_reported(i) - f).abs() < 1e-9);
        }
    }

    #[test]
    fn csv_has_one_row_per_sample() {
        let p = GaitParams::standing(100.0, 500.0, 0.5, 1.0);
        let csv = joint_trajectory_csv(&p, &WalkerModel::default(), 1.0, 100.0).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 102);
        assert_eq!(lines[0].split(',').count(), 15);
    }
}
