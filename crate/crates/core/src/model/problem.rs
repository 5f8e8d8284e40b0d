use super::graph::ConstructionGraph;
use super::solution::Solution;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TourKind {
    /// The last node links back to the first and that edge is paid for.
    Closed,
    /// A path from the start node to a terminal condition.
    Open,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StartRule {
    /// Each ant starts at a uniformly random node.
    AnyNode,
    Fixed(usize),
}

/// A combinatorial problem `(S, Ω, f)` exposed as a walk on a graph.
///
/// Objectives are minimised and must be strictly positive on every
/// feasible solution, since pheromone deposits divide by them. Problems
/// that need a shift say so through [`ProblemInstance::reported`].
pub trait ProblemInstance: Sync {
    fn graph(&self) -> &ConstructionGraph;

    fn tour_kind(&self) -> TourKind;

    fn start_rule(&self) -> StartRule;

    /// Pushes every permitted successor of the last node of `partial` that
    /// is not yet visited. Never yields a visited node.
    fn allowed(&self, partial: &[usize], visited: &[bool], out: &mut Vec<usize>) {
        let last = *partial.last().expect("partial sequence is never empty");
        out.extend(self.graph().successors(last).filter(|&j| !visited[j]));
    }

    /// Desirability of stepping from `i` to `j`; the graph's η by default.
    fn heuristic(&self, i: usize, j: usize) -> f64 {
        self.graph().eta().get(i, j)
    }

    fn is_complete(&self, partial: &[usize]) -> bool;

    fn objective(&self, sequence: &[usize]) -> f64;

    /// Maps an internal objective to the value reported to users.
    fn reported(&self, objective: f64) -> f64 {
        objective
    }

    fn optimum_known(&self) -> Option<f64> {
        None
    }

    fn solution(&self, sequence: Vec<usize>) -> Solution {
        let objective = self.objective(&sequence);
        Solution::new(sequence, objective, self.tour_kind() == TourKind::Closed)
    }
}

/// Closed-tour TSP over a fully connected Euclidean graph.
#[derive(Debug, Clone)]
pub struct TourProblem {
    graph: ConstructionGraph,
    optimum: Option<f64>,
}

impl TourProblem {
    pub fn new(graph: ConstructionGraph) -> Self {
        TourProblem {
            graph,
            optimum: None,
        }
    }

    pub fn with_optimum(mut self, optimum: f64) -> Self {
        self.optimum = Some(optimum);
        self
    }
}

impl ProblemInstance for TourProblem {
    fn graph(&self) -> &ConstructionGraph {
        &self.graph
    }

    fn tour_kind(&self) -> TourKind {
        TourKind::Closed
    }

    fn start_rule(&self) -> StartRule {
        StartRule::AnyNode
    }

    fn is_complete(&self, partial: &[usize]) -> bool {
        partial.len() == self.graph.len()
    }

    fn objective(&self, sequence: &[usize]) -> f64 {
        self.graph.sequence_length(sequence, true)
    }

    fn optimum_known(&self) -> Option<f64> {
        self.optimum
    }
}
