use std::collections::VecDeque;

use super::env::{segment_collides, Environment, Point};
use crate::error::{Error, Result};
use crate::model::{ConstructionGraph, Node, ProblemInstance, SquareMatrix, StartRule, TourKind};

/// Grid roadmap over the free space of an environment. Only nodes reachable
/// from the start are kept; ids are dense `0..n`.
#[derive(Debug, Clone)]
pub struct WaypointGraph {
    pub graph: ConstructionGraph,
    pub start: usize,
    pub goal: usize,
    pub resolution: f64,
    /// Distance from each node to the goal, straight line.
    goal_distance: Vec<f64>,
}

const STEPS: [(i64, i64); 8] = [(-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1)];

/// Regular 8-connected grid with `resolution` spacing; nodes inside or on
/// obstacles are dropped, and an edge survives only if its segment is
/// collision-free. Start and goal snap to the nearest free node.
pub fn build_waypoint_graph(env: &Environment, resolution: f64) -> Result<WaypointGraph> {
    if !(resolution.is_finite() && resolution > 0.0) {
        return Err(Error::invalid("resolution must be positive"));
    }
    let [x0, y0, x1, y1] = env.bbox;
    let cols = ((x1 - x0) / resolution + 1e-9).floor() as usize + 1;
    let rows = ((y1 - y0) / resolution + 1e-9).floor() as usize + 1;
    let coord = |c: usize, r: usize| -> Point { [x0 + c as f64 * resolution, y0 + r as f64 * resolution] };
    let free: Vec<bool> = (0..rows * cols).map(|k| env.is_free(coord(k % cols, k / cols))).collect();

    let nearest_free = |p: Point| -> Option<usize> {
        let mut best: Option<(usize, f64)> = None;
        for k in (0..rows * cols).filter(|&k| free[k]) {
            let q = coord(k % cols, k / cols);
            let d = (q[0] - p[0]).hypot(q[1] - p[1]);
            if best.is_none_or(|(_, bd)| d < bd) {
                best = Some((k, d));
            }
        }
        best.map(|b| b.0)
    };
    let s = nearest_free(env.start).ok_or_else(|| Error::Infeasible("no free grid node".into()))?;
    let g = nearest_free(env.goal).ok_or_else(|| Error::Infeasible("no free grid node".into()))?;

    let mut neighbours: Vec<Vec<usize>> = vec![Vec::new(); rows * cols];
    for k in (0..rows * cols).filter(|&k| free[k]) {
        let (c, r) = ((k % cols) as i64, (k / cols) as i64);
        for (dc, dr) in STEPS {
            let (nc, nr) = (c + dc, r + dr);
            if nc < 0 || nr < 0 || nc >= cols as i64 || nr >= rows as i64 {
                continue;
            }
            let j = nr as usize * cols + nc as usize;
            if free[j] && !segment_collides(coord(c as usize, r as usize), coord(nc as usize, nr as usize), &env.obstacles)? {
                neighbours[k].push(j);
            }
        }
    }

    // keep the start's component
    let mut id = vec![usize::MAX; rows * cols];
    let mut order = Vec::new();
    let mut queue = VecDeque::from([s]);
    id[s] = 0;
    order.push(s);
    while let Some(k) = queue.pop_front() {
        for &j in &neighbours[k] {
            if id[j] == usize::MAX {
                id[j] = order.len();
                order.push(j);
                queue.push_back(j);
            }
        }
    }
    if id[g] == usize::MAX {
        return Err(Error::Infeasible("goal is unreachable from start on the waypoint grid".into()));
    }
    if order.len() < 2 {
        return Err(Error::Infeasible("start and goal snap to the same node".into()));
    }
    let nodes: Vec<Node> = order
        .iter()
        .enumerate()
        .map(|(i, &k)| Node::new(i, coord(k % cols, k / cols).to_vec()))
        .collect();
    let adjacency: Vec<Vec<usize>> = order.iter().map(|&k| neighbours[k].iter().map(|&j| id[j]).collect()).collect();
    let n = nodes.len();
    let pts: Vec<Point> = nodes.iter().map(|nd| [nd.coords[0], nd.coords[1]]).collect();
    let dist = SquareMatrix::from_fn(n, |i, j| (pts[i][0] - pts[j][0]).hypot(pts[i][1] - pts[j][1]));
    let eta = SquareMatrix::from_fn(n, |i, j| if i == j { 0.0 } else { 1.0 / dist.get(i, j) });
    let goal = id[g];
    let goal_distance = (0..n).map(|i| dist.get(i, goal)).collect();
    let graph = ConstructionGraph::from_parts(nodes, dist, eta, Some(adjacency))?;
    Ok(WaypointGraph { graph, start: 0, goal, resolution, goal_distance })
}

impl WaypointGraph {
    pub fn point(&self, i: usize) -> Point {
        let c = &self.graph.nodes()[i].coords;
        [c[0], c[1]]
    }

    pub fn path_problem(&self) -> PathProblem<'_> {
        PathProblem { roadmap: self }
    }

    /// Rechecks every edge of `path` against the obstacles.
    pub fn path_is_collision_free(&self, path: &[usize], env: &Environment) -> Result<bool> {
        for w in path.windows(2) {
            if segment_collides(self.point(w[0]), self.point(w[1]), &env.obstacles)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Open path from the roadmap's start to its goal, minimising Euclidean
/// length. The step heuristic is `1 / (d_ij + d(j, goal))`.
pub struct PathProblem<'a> {
    roadmap: &'a WaypointGraph,
}

impl ProblemInstance for PathProblem<'_> {
    fn graph(&self) -> &ConstructionGraph {
        &self.roadmap.graph
    }

    fn tour_kind(&self) -> TourKind {
        TourKind::Open
    }

    fn start_rule(&self) -> StartRule {
        StartRule::Fixed(self.roadmap.start)
    }

    fn heuristic(&self, i: usize, j: usize) -> f64 {
        1.0 / (self.roadmap.graph.dist().get(i, j) + self.roadmap.goal_distance[j])
    }

    fn is_complete(&self, partial: &[usize]) -> bool {
        partial.last() == Some(&self.roadmap.goal)
    }

    fn objective(&self, sequence: &[usize]) -> f64 {
        self.roadmap.graph.sequence_length(sequence, false)
    }
}
