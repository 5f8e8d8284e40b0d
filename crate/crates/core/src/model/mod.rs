//! Problem-agnostic combinatorial model: nodes, the construction graph with
//! its distance/heuristic matrices, pheromone storage, solutions and the
//! [`ProblemInstance`] trait the engine walks.

mod graph;
mod io;
mod matrix;
mod pheromone;
mod problem;
mod solution;

pub use graph::{
    build_matrices, euclidean_distance, nearest_neighbor_tour, ConstructionGraph, Node, ETA_CAP,
};
pub use io::{parse_graph, read_graph_file, write_graph};
pub use matrix::SquareMatrix;
pub use pheromone::{init_pheromone, PheromoneMatrix};
pub use problem::{ProblemInstance, StartRule, TourKind, TourProblem};
pub use solution::{is_permutation, Solution};
