use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use super::walker::WalkerModel;
use crate::error::{Error, Result};

/// Joints of one leg, hip to toe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Joint {
    HipYaw,
    HipRoll,
    HipPitch,
    KneePitch,
    AnklePitch,
    AnkleRoll,
    ToePitch,
}

impl Joint {
    pub const ALL: [Joint; 7] = [
        Joint::HipYaw,
        Joint::HipRoll,
        Joint::HipPitch,
        Joint::KneePitch,
        Joint::AnklePitch,
        Joint::AnkleRoll,
        Joint::ToePitch,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Joint::HipYaw => "hip_yaw",
            Joint::HipRoll => "hip_roll",
            Joint::HipPitch => "hip_pitch",
            Joint::KneePitch => "knee_pitch",
            Joint::AnklePitch => "ankle_pitch",
            Joint::AnkleRoll => "ankle_roll",
            Joint::ToePitch => "toe_pitch",
        }
    }

    /// Largest oscillation amplitude the joint accepts, in radians.
    pub fn amplitude_limit(self) -> f64 {
        match self {
            Joint::HipYaw | Joint::HipRoll | Joint::AnkleRoll => 0.3,
            Joint::HipPitch | Joint::KneePitch | Joint::AnklePitch | Joint::ToePitch => 0.5,
        }
    }

    /// Joints acting outside the sagittal plane.
    pub fn is_lateral(self) -> bool {
        matches!(self, Joint::HipYaw | Joint::HipRoll | Joint::AnkleRoll)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Leg {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct JointWave {
    pub amplitude: f64,
    pub phase: f64,
}

/// Step length, hip height and duty ratio: 3 values, plus an (amplitude,
/// phase) pair for each of the 7 joints.
pub const GAIT_DIMENSION: usize = 17;

/// Step length reference at which the sagittal amplitudes apply unscaled.
const STEP_REFERENCE_MM: f64 = 100.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaitParams {
    /// Step length in mm. Scales the sagittal pitch amplitudes relative to
    /// a 100 mm step, up to each joint's limit.
    pub s: f64,
    /// Hip height above ground in mm for the nominal posture.
    pub h: f64,
    /// Fraction of the cycle each joint wave spends in its stance stroke.
    pub d: f64,
    /// Waves in [`Joint::ALL`] order.
    pub joints: [JointWave; 7],
    /// Cycle period in seconds.
    pub cycle_period: f64,
}

impl GaitParams {
    /// Gait with the given posture and no joint motion.
    pub fn standing(s: f64, h: f64, d: f64, cycle_period: f64) -> Self {
        GaitParams { s, h, d, joints: [JointWave::default(); 7], cycle_period }
    }

    pub fn wave(&self, joint: Joint) -> JointWave {
        self.joints[joint as usize]
    }

    pub fn set_wave(&mut self, joint: Joint, amplitude: f64, phase: f64) {
        self.joints[joint as usize] = JointWave { amplitude, phase };
    }

    /// Same gait with every lateral joint (yaw, hip roll, ankle roll) held
    /// still, leaving a left/right mirror-symmetric sagittal gait.
    pub fn sagittal(&self) -> Self {
        let mut out = self.clone();
        for j in Joint::ALL.into_iter().filter(|j| j.is_lateral()) {
            out.joints[j as usize].amplitude = 0.0;
        }
        out
    }

    /// Vector layout: `[s, h, d, a_0, φ_0, …, a_6, φ_6]`.
    pub fn from_vector(x: &[f64], cycle_period: f64) -> Result<Self> {
        if x.len() != GAIT_DIMENSION {
            return Err(Error::invalid(format!("gait vector needs {GAIT_DIMENSION} values, got {}", x.len())));
        }
        let mut joints = [JointWave::default(); 7];
        for (k, w) in joints.iter_mut().enumerate() {
            *w = JointWave { amplitude: x[3 + 2 * k], phase: x[4 + 2 * k] };
        }
        Ok(GaitParams { s: x[0], h: x[1], d: x[2], joints, cycle_period })
    }

    pub fn to_vector(&self) -> Vec<f64> {
        let mut v = vec![self.s, self.h, self.d];
        for w in &self.joints {
            v.push(w.amplitude);
            v.push(w.phase);
        }
        v
    }

    pub fn validate(&self, model: &WalkerModel) -> Result<()> {
        let finite = self.to_vector().iter().all(|v| v.is_finite()) && self.cycle_period.is_finite();
        if !finite {
            return Err(Error::invalid("gait parameters must be finite"));
        }
        if self.s <= 0.0 {
            return Err(Error::invalid(format!("step length must be positive, got {}", self.s)));
        }
        if !(self.d > 0.0 && self.d < 1.0) {
            return Err(Error::invalid(format!("duty ratio must lie in (0, 1), got {}", self.d)));
        }
        if !(self.h > 0.0 && self.h <= model.leg_length()) {
            return Err(Error::invalid(format!(
                "hip height must lie in (0, {}], got {}",
                model.leg_length(),
                self.h
            )));
        }
        if self.cycle_period <= 0.0 {
            return Err(Error::invalid("cycle period must be positive"));
        }
        for j in Joint::ALL {
            let a = self.wave(j).amplitude;
            if !(0.0..=j.amplitude_limit()).contains(&a) {
                return Err(Error::invalid(format!(
                    "{} amplitude {a} outside [0, {}]",
                    j.name(),
                    j.amplitude_limit()
                )));
            }
        }
        Ok(())
    }

    /// Multiplier on the sagittal pitch amplitudes.
    pub(crate) fn stride_gain(&self) -> f64 {
        self.s / STEP_REFERENCE_MM
    }
}

/// Cyclic waveform in [-1, 1]: a cycloidal stroke from +1 down to -1 over
/// the first `d` of the cycle, then back up over the rest.
pub fn waveform(theta: f64, d: f64) -> f64 {
    let u = theta.rem_euclid(TAU) / TAU;
    let cycloid = |x: f64| x - (TAU * x).sin() / TAU;
    if u < d {
        1.0 - 2.0 * cycloid(u / d)
    } else {
        -1.0 + 2.0 * cycloid((u - d) / (1.0 - d))
    }
}

/// Search bounds of the 17-value gait vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GaitBounds {
    pub step_length: (f64, f64),
    pub hip_height: (f64, f64),
    pub duty_ratio: (f64, f64),
    /// Upper amplitude bound as a fraction of each joint's limit.
    pub amplitude_fraction: f64,
}

impl Default for GaitBounds {
    fn default() -> Self {
        GaitBounds { step_length: (20.0, 150.0), hip_height: (420.0, 525.0), duty_ratio: (0.3, 0.8), amplitude_fraction: 1.0 }
    }
}

impl GaitBounds {
    pub fn to_vec(&self) -> Vec<(f64, f64)> {
        let mut b = vec![self.step_length, self.hip_height, self.duty_ratio];
        for j in Joint::ALL {
            b.push((0.0, j.amplitude_limit() * self.amplitude_fraction));
            b.push((0.0, TAU));
        }
        b
    }

    pub fn validate(&self, model: &WalkerModel) -> Result<()> {
        let ok = |(lo, hi): (f64, f64)| lo.is_finite() && hi.is_finite() && lo < hi;
        if !(ok(self.step_length) && ok(self.hip_height) && ok(self.duty_ratio)) {
            return Err(Error::invalid("gait bounds must be finite intervals"));
        }
        if self.step_length.0 <= 0.0 || self.hip_height.0 <= 0.0 || self.hip_height.1 > model.leg_length() {
            return Err(Error::invalid("step length and hip height bounds must be positive and within the leg"));
        }
        if !(self.duty_ratio.0 > 0.0 && self.duty_ratio.1 < 1.0) {
            return Err(Error::invalid("duty ratio bounds must lie inside (0, 1)"));
        }
        if !(self.amplitude_fraction > 0.0 && self.amplitude_fraction <= 1.0) {
            return Err(Error::invalid("amplitude_fraction must lie in (0, 1]"));
        }
        Ok(())
    }
}

/// Nominal standing angles for hip height `h`: the shank leans forward and
/// the thigh back by the same angle so the torso stays upright.
pub(crate) fn nominal_posture(model: &WalkerModel, h: f64) -> [f64; 7] {
    let beta = (h / model.leg_length()).clamp(-1.0, 1.0).acos();
    let mut q = [0.0; 7];
    q[Joint::HipPitch as usize] = -beta;
    q[Joint::KneePitch as usize] = 2.0 * beta;
    q[Joint::AnklePitch as usize] = -beta;
    q
}

/// Joint angles in [`Joint::ALL`] order. The right leg runs half a cycle
/// behind the left.
pub fn joint_angles_at(params: &GaitParams, model: &WalkerModel, t: f64, leg: Leg) -> Result<[f64; 7]> {
    params.validate(model)?;
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::invalid(format!("time must be finite and >= 0, got {t}")));
    }
    Ok(angles_unchecked(params, model, t, leg))
}

pub(crate) fn angles_unchecked(params: &GaitParams, model: &WalkerModel, t: f64, leg: Leg) -> [f64; 7] {
    let offset = match leg {
        Leg::Left => 0.0,
        Leg::Right => PI,
    };
    let base = TAU * (t / params.cycle_period).fract() + offset;
    let gain = params.stride_gain();
    let mut q = nominal_posture(model, params.h);
    for j in Joint::ALL {
        let w = params.wave(j);
        let a = if j.is_lateral() { w.amplitude } else { (w.amplitude * gain).min(j.amplitude_limit()) };
        q[j as usize] += a * waveform(base + w.phase, params.d);
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn waveform_hits_extremes_at_the_split() {
        for d in [0.2, 0.5, 0.7] {
            assert!((waveform(0.0, d) - 1.0).abs() < 1e-12);
            assert!((waveform(TAU * d, d) + 1.0).abs() < 1e-12);
            assert!((waveform(TAU * (1.0 - 1e-12), d) - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn waveform_is_bounded() {
        for k in 0..1000 {
            let w = waveform(k as f64 * 0.0137, 0.63);
            assert!((-1.0..=1.0).contains(&w));
        }
    }

    #[test]
    fn half_duty_waveform_is_antisymmetric() {
        for k in 0..100 {
            let th = k as f64 * 0.07;
            assert!((waveform(th + PI, 0.5) + waveform(th, 0.5)).abs() < 1e-12);
        }
    }

    #[test]
    fn vector_round_trip() {
        let x: Vec<f64> = (0..GAIT_DIMENSION).map(|k| k as f64 * 0.1).collect();
        let p = GaitParams::from_vector(&x, 1.0).unwrap();
        assert_eq!(p.to_vector(), x);
        assert!(GaitParams::from_vector(&x[1..], 1.0).is_err());
    }

    #[test]
    fn nominal_posture_is_upright_at_the_requested_height() {
        let m = WalkerModel::default();
        let q = nominal_posture(&m, 500.0);
        let shank = -q[Joint::AnklePitch as usize];
        let thigh = shank - q[Joint::KneePitch as usize];
        let torso = thigh - q[Joint::HipPitch as usize];
        assert!(torso.abs() < 1e-12);
        assert!((m.shank * shank.cos() + m.thigh * thigh.cos() - 500.0).abs() < 1e-9);
    }

    #[test]
    fn invalid_params_rejected() {
        let m = WalkerModel::default();
        let good = GaitParams::standing(100.0, 500.0, 0.5, 1.0);
        good.validate(&m).unwrap();
        let mut bad = good.clone();
        bad.d = 1.0;
        assert!(bad.validate(&m).is_err());
        bad = good.clone();
        bad.h = m.leg_length() + 1.0;
        assert!(bad.validate(&m).is_err());
        bad = good.clone();
        bad.s = 0.0;
        assert!(bad.validate(&m).is_err());
        bad = good.clone();
        bad.set_wave(Joint::HipRoll, 0.5, 0.0);
        assert!(bad.validate(&m).is_err());
        assert!(joint_angles_at(&good, &m, -1.0, Leg::Left).is_err());
    }
}
