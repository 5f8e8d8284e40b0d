//! Benchmark problems: constrained continuous functions with penalty
//! handling, the layered-graph bridge that lets the colony optimise them,
//! polygon path-planning environments and exact oracles.

mod constrained;
mod discretize;
mod env;
mod oracles;
mod tsp;
mod waypoint;

pub use constrained::{
    check_bounds, constrained_problem, g_function, penalized_objective, penalty, ConstrainedProblem,
    ContinuousProblem, Sphere, EQ_TOLERANCE,
};
pub use discretize::{
    discretize, run_continuous, shrink_ranges, ContinuousConfig, ContinuousOutcome, DiscretizationScheme,
    mmas_bound_ratio, LayeredOps, LayeredProblem,
};
pub use env::{
    format_environment, parse_environment, random_environment, read_environment_file, segment_collides,
    segments_intersect, Environment, Point, Polygon,
};
pub use oracles::{oracle_shortest_path, oracle_tsp, ORACLE_TSP_MAX};
pub use tsp::{random_cities, random_tsp};
pub use waypoint::{build_waypoint_graph, PathProblem, WaypointGraph};
