use serde::{Deserialize, Serialize};

use super::params::{angles_unchecked, GaitParams, Joint, Leg};
use crate::error::{Error, Result};

/// Planar leg chain with NAO-like proportions (thigh 100 mm, shank 103 mm)
/// scaled by 2.6 so the nominal 518 mm hip height fits inside the leg.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WalkerModel {
    pub thigh: f64,
    pub shank: f64,
    pub foot: f64,
    /// Integration step in seconds.
    pub dt: f64,
    /// Torso inclination in radians beyond which the walker falls.
    pub fall_threshold: f64,
}

impl Default for WalkerModel {
    fn default() -> Self {
        WalkerModel { thigh: 260.0, shank: 267.8, foot: 416.0, dt: 0.01, fall_threshold: 0.35 }
    }
}

impl WalkerModel {
    pub fn leg_length(&self) -> f64 {
        self.thigh + self.shank
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.thigh > 0.0 && self.shank > 0.0 && self.foot > 0.0) {
            return Err(Error::invalid("segment lengths must be positive"));
        }
        if !(self.dt > 0.0 && self.dt <= 0.02) {
            return Err(Error::invalid(format!("dt must lie in (0, 0.02], got {}", self.dt)));
        }
        if !(self.fall_threshold > 0.0 && self.fall_threshold.is_finite()) {
            return Err(Error::invalid("fall_threshold must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialOutcome {
    /// Forward distance along the commanded heading in cm, floored at 0.
    pub l_dis: f64,
    pub fell: bool,
    pub fall_time: Option<f64>,
    /// Angle in degrees between the net displacement and the heading.
    pub drift_angle: f64,
    /// Metres per second over the elapsed time.
    pub mean_speed: f64,
    pub elapsed: f64,
    pub max_hip_height: f64,
}

impl TrialOutcome {
    fn still() -> Self {
        TrialOutcome {
            l_dis: 0.0,
            fell: false,
            fall_time: None,
            drift_angle: 0.0,
            mean_speed: 0.0,
            elapsed: 0.0,
            max_hip_height: 0.0,
        }
    }
}

/// Stance-leg geometry with the foot flat on the ground.
struct Stance {
    /// Hip relative to the stance ankle in the foot frame (forward, left).
    rel: (f64, f64),
    height: f64,
    inclination: f64,
    yaw: f64,
}

fn stance(model: &WalkerModel, q: &[f64; 7]) -> Stance {
    let toe = q[Joint::ToePitch as usize].max(0.0);
    let shank = toe - q[Joint::AnklePitch as usize];
    let thigh = shank - q[Joint::KneePitch as usize];
    let torso_pitch = thigh - q[Joint::HipPitch as usize];
    let roll = q[Joint::AnkleRoll as usize];
    let torso_roll = q[Joint::HipRoll as usize] + roll;
    let height = model.shank * shank.cos() + model.thigh * thigh.cos();
    let forward = model.shank * shank.sin() + model.thigh * thigh.sin();
    Stance {
        rel: (forward, height * roll.sin()),
        height: height * roll.cos(),
        inclination: torso_pitch.hypot(torso_roll),
        yaw: q[Joint::HipYaw as usize],
    }
}

fn rotate(psi: f64, v: (f64, f64)) -> (f64, f64) {
    let (s, c) = psi.sin_cos();
    (c * v.0 - s * v.1, s * v.0 + c * v.1)
}

/// Runs a timed trial. Support passes to each leg at its touchdown (the
/// start of its cycle); the support foot stays planted while the body
/// follows the stance-leg geometry. Invalid parameters give a motionless
/// outcome.
pub fn simulate_walk(params: &GaitParams, model: &WalkerModel, duration: f64) -> TrialOutcome {
    if params.validate(model).is_err() || model.validate().is_err() || duration.is_nan() || duration <= 0.0 {
        return TrialOutcome::still();
    }
    let steps = (duration / model.dt).round() as usize;
    let support_at = |t: f64| if (t / params.cycle_period).fract() < 0.5 { Leg::Left } else { Leg::Right };

    let mut support = support_at(0.0);
    let first = stance(model, &angles_unchecked(params, model, 0.0, support));
    let mut foot_heading = first.yaw;
    let r = rotate(foot_heading, first.rel);
    let mut anchor = (-r.0, -r.1);
    let mut hip = (0.0, 0.0);
    let mut max_height = first.height;
    let mut fall_time = None;
    let mut elapsed = 0.0;

    for k in 0..=steps {
        let t = k as f64 * model.dt;
        let leg = support_at(t);
        if leg != support {
            let body_heading = foot_heading - stance(model, &angles_unchecked(params, model, t, support)).yaw;
            let next = stance(model, &angles_unchecked(params, model, t, leg));
            foot_heading = body_heading + next.yaw;
            let r = rotate(foot_heading, next.rel);
            anchor = (hip.0 - r.0, hip.1 - r.1);
            support = leg;
        }
        let st = stance(model, &angles_unchecked(params, model, t, support));
        let r = rotate(foot_heading, st.rel);
        hip = (anchor.0 + r.0, anchor.1 + r.1);
        assert!(st.height <= model.leg_length() + 1e-9, "hip above the leg");
        max_height = max_height.max(st.height);
        elapsed = t;
        if st.inclination > model.fall_threshold || st.height < 0.5 * params.h {
            fall_time = Some(t);
            break;
        }
    }

    let (dx, dy) = hip;
    let drift_angle = if dx.hypot(dy) < 1e-9 { 0.0 } else { dy.abs().atan2(dx).to_degrees() };
    let l_dis = dx.max(0.0) / 10.0;
    let mean_speed = if elapsed > 0.0 { l_dis / 100.0 / elapsed } else { 0.0 };
    TrialOutcome { l_dis, fell: fall_time.is_some(), fall_time, drift_angle, mean_speed, elapsed, max_hip_height: max_height }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn walking() -> GaitParams {
        let mut p = GaitParams::standing(100.0, 500.0, 0.5, 1.0);
        p.set_wave(Joint::AnklePitch, 0.2, 0.0);
        p.set_wave(Joint::HipPitch, 0.2, PI);
        p
    }

    #[test]
    fn standing_gait_does_not_move() {
        let out = simulate_walk(&GaitParams::standing(100.0, 500.0, 0.5, 1.0), &WalkerModel::default(), 20.0);
        assert_eq!(out.l_dis, 0.0);
        assert!(!out.fell);
        assert_eq!(out.drift_angle, 0.0);
    }

    #[test]
    fn coordinated_stride_walks_forward() {
        let out = simulate_walk(&walking(), &WalkerModel::default(), 20.0);
        assert!(!out.fell, "{out:?}");
        assert!(out.l_dis > 100.0, "{out:?}");
        assert!(out.drift_angle.abs() < 1e-9);
    }

    #[test]
    fn excessive_torso_swing_falls() {
        let mut p = walking();
        p.set_wave(Joint::AnklePitch, 0.45, 0.0);
        p.set_wave(Joint::HipPitch, 0.0, 0.0);
        let out = simulate_walk(&p, &WalkerModel::default(), 20.0);
        assert!(out.fell);
        assert!(out.fall_time.unwrap() < 20.0);
    }

    #[test]
    fn yaw_oscillation_turns_the_walker() {
        let mut p = walking();
        p.set_wave(Joint::HipYaw, 0.1, 0.5);
        let out = simulate_walk(&p, &WalkerModel::default(), 20.0);
        assert!(out.drift_angle > 1.0, "{out:?}");
    }

    #[test]
    fn invalid_params_give_a_still_outcome() {
        let mut p = walking();
        p.d = 1.5;
        assert_eq!(simulate_walk(&p, &WalkerModel::default(), 20.0).l_dis, 0.0);
    }
}
