use std::f64::consts::PI;

use eaco_core::bench::{run_continuous, ContinuousConfig, ContinuousProblem, DiscretizationScheme};
use eaco_core::engine::EacoParams;
use eaco_core::gait::{
    fitness, joint_angles_at, simulate_walk, GaitBounds, GaitObjective, GaitParams, Joint, Leg, TrialOutcome,
    WalkerModel, GAIT_DIMENSION,
};
use eaco_core::rng::stream;
use rand::Rng;

fn walking(period: f64) -> GaitParams {
    let mut p = GaitParams::standing(100.0, 500.0, 0.5, period);
    p.set_wave(Joint::AnklePitch, 0.2, 0.0);
    p.set_wave(Joint::HipPitch, 0.2, PI);
    p.set_wave(Joint::HipRoll, 0.05, 0.3);
    p.set_wave(Joint::AnkleRoll, 0.05, 1.1);
    p
}

fn outcome(l_dis: f64, drift_angle: f64) -> TrialOutcome {
    TrialOutcome {
        l_dis,
        fell: false,
        fall_time: None,
        drift_angle,
        mean_speed: 0.0,
        elapsed: 20.0,
        max_hip_height: 500.0,
    }
}

#[test]
fn angles_are_periodic() {
    let model = WalkerModel::default();
    let p = walking(1.3);
    for k in 0..200 {
        let t = k as f64 * 0.037;
        for leg in [Leg::Left, Leg::Right] {
            let a = joint_angles_at(&p, &model, t, leg).unwrap();
            let b = joint_angles_at(&p, &model, t + 1.3, leg).unwrap();
            for (x, y) in a.iter().zip(&b) {
                assert!((x - y).abs() < 1e-12, "t {t}: {x} vs {y}");
            }
        }
    }
}

#[test]
fn zero_amplitudes_hold_the_standing_posture() {
    let model = WalkerModel::default();
    let p = GaitParams::standing(100.0, 500.0, 0.6, 1.0);
    let first = joint_angles_at(&p, &model, 0.0, Leg::Left).unwrap();
    for k in 1..50 {
        let t = k as f64 * 0.11;
        assert_eq!(joint_angles_at(&p, &model, t, Leg::Left).unwrap(), first);
        assert_eq!(joint_angles_at(&p, &model, t, Leg::Right).unwrap(), first);
    }
}

#[test]
fn right_leg_lags_left_by_half_a_cycle() {
    let model = WalkerModel::default();
    let p = walking(1.0);
    for k in 0..100 {
        let t = k as f64 * 0.013;
        let l = joint_angles_at(&p, &model, t, Leg::Left).unwrap();
        let r = joint_angles_at(&p, &model, t + 0.5, Leg::Right).unwrap();
        for (x, y) in l.iter().zip(&r) {
            assert!((x - y).abs() < 1e-12);
        }
    }
}

#[test]
fn standing_trial_scores_zero() {
    let out = simulate_walk(&GaitParams::standing(100.0, 500.0, 0.5, 1.0), &WalkerModel::default(), 10.0);
    assert_eq!(out.l_dis, 0.0);
    assert_eq!(fitness(&out), 0.0);
}

#[test]
fn mirror_symmetric_gait_does_not_drift() {
    let out = simulate_walk(&walking(1.0).sagittal(), &WalkerModel::default(), 20.0);
    assert!(out.l_dis > 10.0, "{out:?}");
    assert_eq!(out.drift_angle, 0.0);
}

#[test]
fn doubling_the_frequency_doubles_the_speed() {
    let model = WalkerModel::default();
    let slow = simulate_walk(&walking(1.2).sagittal(), &model, 24.0);
    let fast = simulate_walk(&walking(0.6).sagittal(), &model, 24.0);
    assert!(!slow.fell && !fast.fell);
    let ratio = fast.mean_speed / slow.mean_speed;
    assert!((ratio - 2.0).abs() <= 0.2, "speed ratio {ratio}");
}

#[test]
fn simulation_is_deterministic() {
    let model = WalkerModel::default();
    let p = walking(0.9);
    assert_eq!(simulate_walk(&p, &model, 15.0), simulate_walk(&p, &model, 15.0));
}

#[test]
fn hip_never_rises_above_the_leg() {
    let model = WalkerModel::default();
    let obj = GaitObjective::new(&GaitBounds::default(), model.clone(), 1.0, 5.0).unwrap();
    let mut rng = stream(3, &[1]);
    for _ in 0..50 {
        let x: Vec<f64> = obj.bounds().iter().map(|&(lo, hi)| rng.gen_range(lo..=hi)).collect();
        let out = obj.trial(&x).unwrap();
        assert!(out.max_hip_height <= model.leg_length() + 1e-9);
    }
}

#[test]
fn fitness_rule_boundaries() {
    assert_eq!(fitness(&outcome(5.0, 0.0)), 0.0);
    assert_eq!(fitness(&outcome(10.0, 0.0)), 0.0);
    assert_eq!(fitness(&outcome(50.0, 10.0)), 50.0);
    assert_eq!(fitness(&outcome(30.0, 45.0)), 30.0);
    assert_eq!(fitness(&outcome(80.0, 50.0)), 0.0);
    assert_eq!(fitness(&outcome(80.0, 45.001)), 0.0);
    assert_eq!(fitness(&outcome(0.0, 0.0)), 0.0);
}

#[test]
fn zero_amplitude_vector_scores_zero() {
    let obj = GaitObjective::new(&GaitBounds::default(), WalkerModel::default(), 1.0, 10.0).unwrap();
    let x = GaitParams::standing(100.0, 500.0, 0.5, 1.0).to_vector();
    assert_eq!(x.len(), GAIT_DIMENSION);
    assert_eq!(obj.evaluate(&x), 0.0);
}

#[test]
fn decoded_vectors_stay_in_bounds() {
    let obj = GaitObjective::new(&GaitBounds::default(), WalkerModel::default(), 1.0, 10.0).unwrap();
    let scheme = DiscretizationScheme::new(obj.bounds(), 21, 0.7).unwrap();
    let mut rng = stream(5, &[2]);
    for _ in 0..2000 {
        let x: Vec<f64> = (0..GAIT_DIMENSION).map(|k| scheme.level_value(k, rng.gen_range(0..21))).collect();
        let decoded = scheme.decode(&scheme.encode(&x).unwrap()).unwrap();
        for (v, &(lo, hi)) in decoded.iter().zip(obj.bounds()) {
            assert!((lo..=hi).contains(v));
        }
        assert!(obj.params(&decoded).is_ok());
    }
}

#[test]
fn optimized_gait_beats_random_search() {
    let obj = GaitObjective::new(&GaitBounds::default(), WalkerModel::default(), 1.0, 10.0).unwrap();
    let mut rng = stream(9, &[3]);
    let random_best = (0..100)
        .map(|_| {
            let x: Vec<f64> = obj.bounds().iter().map(|&(lo, hi)| rng.gen_range(lo..=hi)).collect();
            obj.evaluate(&x)
        })
        .fold(f64::INFINITY, f64::min);
    let params = EacoParams { max_iterations: 100, seed: 9, ..Default::default() };
    let out = run_continuous(&obj, &params, &ContinuousConfig::default()).unwrap();
    assert!(out.best_value <= random_best, "{} vs {random_best}", out.best_value);
}
