use eaco_core::bench::{oracle_tsp, random_tsp};
use eaco_core::engine::{run, run_observed, run_with, EacoParams, StopReason};
use eaco_core::evo::PermutationOps;
use eaco_core::model::{ConstructionGraph, Node, ProblemInstance, TourProblem};
use rayon::prelude::*;

#[test]
fn two_node_tour_is_found_at_iteration_one() {
    let graph = ConstructionGraph::euclidean(vec![Node::new(0, vec![0.0, 0.0]), Node::new(1, vec![3.0, 4.0])]).unwrap();
    let problem = TourProblem::new(graph);
    let out = run(&problem, &EacoParams { max_iterations: 5, ..Default::default() }).unwrap();
    assert_eq!(out.best.objective, 10.0);
    assert_eq!(out.record.iterations_to(10.0), Some(1));
}

#[test]
fn six_node_optimum_in_at_least_95_of_100_runs() {
    let problem = random_tsp(6, 42).unwrap();
    let optimum = oracle_tsp(problem.graph()).unwrap().objective;
    let hits = (0..100u64)
        .into_par_iter()
        .filter(|&seed| {
            let params = EacoParams { max_iterations: 200, seed, ..Default::default() };
            let best = run_with(&problem, &params, Some(&PermutationOps::default())).unwrap().best.objective;
            assert!(best >= optimum - 1e-9);
            (best - optimum).abs() <= 1e-9 * optimum
        })
        .count();
    assert!(hits >= 95, "{hits}/100");
}

fn tours(problem: &TourProblem, params: &EacoParams) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    run_observed(problem, params, None, |view| out.extend(view.constructed.iter().map(|s| s.nodes.clone()))).unwrap();
    out
}

#[test]
fn doubling_q_and_tau0_leaves_tours_unchanged() {
    let problem = random_tsp(12, 8).unwrap();
    for seed in 0..5 {
        let a = EacoParams {
            q_reward: 100.0,
            tau0: Some(0.05),
            global_update: false,
            max_iterations: 80,
            seed,
            ..Default::default()
        };
        let b = EacoParams { q_reward: 200.0, tau0: Some(0.10), ..a.clone() };
        assert_eq!(tours(&problem, &a), tours(&problem, &b), "seed {seed}");
    }
}

#[test]
fn target_stops_the_run() {
    let problem = random_tsp(7, 2).unwrap();
    let optimum = oracle_tsp(problem.graph()).unwrap().objective;
    let params = EacoParams { max_iterations: 500, target_objective: Some(optimum * (1.0 + 1e-9)), ..Default::default() };
    let out = run(&problem, &params).unwrap();
    assert_eq!(out.stop, StopReason::TargetReached);
    assert!(out.iterations < 500);
}
