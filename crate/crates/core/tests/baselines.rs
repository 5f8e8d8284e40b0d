use eaco_core::baselines::*;
use eaco_core::bench::{constrained_problem, oracle_tsp, random_tsp, ContinuousProblem, Sphere};
use eaco_core::engine::{run, EacoParams};
use eaco_core::error::Error;
use eaco_core::model::{is_permutation, ConstructionGraph, Node, ProblemInstance, TourProblem};
use eaco_core::rng::stream;

fn median(mut v: Vec<usize>) -> usize {
    v.sort_unstable();
    v[v.len() / 2]
}

#[test]
fn aco_on_two_cities_returns_the_only_tour() {
    let g = ConstructionGraph::euclidean(vec![Node::new(0, vec![0.0, 0.0]), Node::new(1, vec![3.0, 4.0])]).unwrap();
    let p = TourProblem::new(g);
    let (best, record) = run_standard_aco(&p, &AcoParams::default(), 5, 1).unwrap();
    assert!(is_permutation(&best.nodes, 2));
    assert_eq!(best.objective, 10.0);
    assert_eq!(record.len(), 5);
}

#[test]
fn aco_finds_six_city_optimum_and_eaco_is_no_slower() {
    let p = random_tsp(6, 11).unwrap();
    let optimum = oracle_tsp(p.graph()).unwrap().objective;
    let tol = optimum * 1e-9;
    let mut hits = 0;
    let (mut aco_its, mut eaco_its) = (Vec::new(), Vec::new());
    for seed in 0..100 {
        let (best, record) = run_standard_aco(&p, &AcoParams::default(), 200, seed).unwrap();
        assert!(best.objective >= optimum - tol);
        if best.objective <= optimum + tol {
            hits += 1;
        }
        aco_its.push(record.iterations_to(optimum + tol).unwrap_or(usize::MAX));
        let params = EacoParams { max_iterations: 200, seed, ..Default::default() };
        let out = run(&p, &params).unwrap();
        eaco_its.push(out.record.iterations_to(optimum + tol).unwrap_or(usize::MAX));
    }
    assert!(hits > 50, "aco hit the optimum in {hits}/100 runs");
    assert!(median(eaco_its) <= median(aco_its));
}

#[test]
fn ga_solves_sphere() {
    let p = Sphere::new(2, 5.0);
    let out = run_real_coded_ga(&p, &GaParams::default(), 200, 4).unwrap();
    assert!(out.best_value < 1e-2, "{}", out.best_value);
    assert!(out.best_x.iter().all(|v| v.abs() <= 5.0));
}

#[test]
fn ga_generation_best_never_worsens() {
    let p = constrained_problem(1).unwrap();
    let out = run_real_coded_ga(&p, &GaParams::default(), 300, 9).unwrap();
    for w in out.record.rows.windows(2) {
        assert!(w[1].iteration_best <= w[0].iteration_best);
        assert!(w[1].best <= w[0].best);
    }
}

#[test]
fn ga_reaches_g1_threshold() {
    let p = constrained_problem(1).unwrap();
    let hit = (0..4).any(|seed| run_real_coded_ga(&p, &GaParams::default(), 1000, seed).unwrap().best_value <= -14.0);
    assert!(hit);
}

struct Broken;

impl ContinuousProblem for Broken {
    fn name(&self) -> &str {
        "broken"
    }
    fn bounds(&self) -> &[(f64, f64)] {
        &[(1.0, -1.0)]
    }
    fn evaluate(&self, x: &[f64]) -> f64 {
        x[0]
    }
    fn positivity_shift(&self) -> f64 {
        0.0
    }
}

#[test]
fn invalid_bounds_are_errors() {
    assert!(matches!(run_real_coded_ga(&Broken, &GaParams::default(), 10, 0), Err(Error::InvalidInput(_))));
    assert!(matches!(run_pso(&Broken, &PsoParams::default(), 10, 0), Err(Error::InvalidInput(_))));
    assert!(ContinuousAnneal::new(&Broken, 0.1).is_err());
}

#[test]
fn sa_with_slow_cooling_finds_six_city_optimum() {
    let p = random_tsp(6, 11).unwrap();
    let optimum = oracle_tsp(p.graph()).unwrap().objective;
    let space = PermutationAnneal::new(&p).unwrap();
    let params = SaParams { initial_temperature: 50.0, cooling: 0.97, moves_per_stage: 20, ..Default::default() };
    let hits = (0..100)
        .filter(|&seed| {
            let (tour, e, _) = run_simulated_annealing(&space, &params, 300, seed).unwrap();
            assert!(is_permutation(&tour, 6));
            e <= optimum * (1.0 + 1e-9)
        })
        .count();
    assert!(hits >= 80, "{hits}/100");
}

#[test]
fn sa_rejects_bad_cooling() {
    let p = random_tsp(5, 1).unwrap();
    let space = PermutationAnneal::new(&p).unwrap();
    let params = SaParams { cooling: 1.0, ..Default::default() };
    assert!(run_simulated_annealing(&space, &params, 10, 0).is_err());
}

#[test]
fn sa_at_zero_temperature_never_goes_uphill() {
    let p = constrained_problem(1).unwrap();
    let space = ContinuousAnneal::new(&p, 0.1).unwrap();
    let params = SaParams { initial_temperature: 0.0, moves_per_stage: 1, ..Default::default() };
    let (_, _, record) = run_simulated_annealing(&space, &params, 500, 2).unwrap();
    for w in record.rows.windows(2) {
        assert!(w[1].mean <= w[0].mean);
    }
}

#[test]
fn pso_solves_sphere() {
    let p = Sphere::new(2, 5.0);
    let out = run_pso(&p, &PsoParams::default(), 200, 3).unwrap();
    assert!(out.best_value < 1e-2, "{}", out.best_value);
}

#[test]
fn pso_positions_stay_in_bounds() {
    let p = constrained_problem(1).unwrap();
    let params = PsoParams { inertia: 0.99, cognitive: 4.0, social: 4.0, v_max_fraction: 1.0, ..Default::default() };
    let mut rng = stream(5, &[]);
    let bounds = p.bounds().to_vec();
    let start: Vec<Vec<f64>> = (0..10).map(|i| bounds.iter().map(|b| if i % 2 == 0 { b.0 } else { b.1 }).collect()).collect();
    let vel: Vec<Vec<f64>> = (0..10).map(|i| bounds.iter().map(|b| (b.1 - b.0) * if i % 2 == 0 { -1.0 } else { 1.0 }).collect()).collect();
    let mut swarm = Swarm::new(&p, start, vel).unwrap();
    for _ in 0..200 {
        swarm.step(&p, &params, &mut rng);
        for x in &swarm.positions {
            assert!(x.iter().zip(&bounds).all(|(v, b)| *v >= b.0 && *v <= b.1));
        }
    }
}

#[test]
fn baselines_are_deterministic() {
    let g1 = constrained_problem(1).unwrap();
    let a = run_real_coded_ga(&g1, &GaParams::default(), 50, 7).unwrap();
    assert_eq!(a, run_real_coded_ga(&g1, &GaParams::default(), 50, 7).unwrap());
    let a = run_pso(&g1, &PsoParams::default(), 50, 7).unwrap();
    assert_eq!(a, run_pso(&g1, &PsoParams::default(), 50, 7).unwrap());
    let space = ContinuousAnneal::new(&g1, 0.1).unwrap();
    let a = run_simulated_annealing(&space, &SaParams::default(), 50, 7).unwrap();
    assert_eq!(a, run_simulated_annealing(&space, &SaParams::default(), 50, 7).unwrap());
    let tsp = random_tsp(9, 2).unwrap();
    let a = run_standard_aco(&tsp, &AcoParams::default(), 30, 7).unwrap();
    assert_eq!(a, run_standard_aco(&tsp, &AcoParams::default(), 30, 7).unwrap());
}

#[test]
fn default_parameter_sets_are_valid() {
    BaselineParams::default().validate().unwrap();
}
