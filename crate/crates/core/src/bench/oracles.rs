use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::waypoint::WaypointGraph;
use crate::error::{Error, Result};
use crate::model::{ConstructionGraph, Solution};

#[derive(PartialEq)]
struct Key(f64);

impl Eq for Key {}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0)
    }
}

/// Exact shortest start→goal path (Dijkstra over the roadmap edges).
pub fn oracle_shortest_path(roadmap: &WaypointGraph) -> Result<Solution> {
    let g = &roadmap.graph;
    let n = g.len();
    let mut dist = vec![f64::INFINITY; n];
    let mut prev = vec![usize::MAX; n];
    let mut heap = BinaryHeap::new();
    dist[roadmap.start] = 0.0;
    heap.push(Reverse((Key(0.0), roadmap.start)));
    while let Some(Reverse((Key(d), u))) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        if u == roadmap.goal {
            break;
        }
        for v in g.successors(u) {
            let nd = d + g.dist().get(u, v);
            if nd < dist[v] {
                dist[v] = nd;
                prev[v] = u;
                heap.push(Reverse((Key(nd), v)));
            }
        }
    }
    if !dist[roadmap.goal].is_finite() {
        return Err(Error::Infeasible("goal unreachable".into()));
    }
    let mut path = vec![roadmap.goal];
    while *path.last().unwrap() != roadmap.start {
        path.push(prev[*path.last().unwrap()]);
    }
    path.reverse();
    let len = g.sequence_length(&path, false);
    Ok(Solution::new(path, len, false))
}

/// Largest instance the exhaustive tour oracle accepts.
pub const ORACLE_TSP_MAX: usize = 10;

/// Exact optimal closed tour by enumerating every order with city 0 fixed.
pub fn oracle_tsp(graph: &ConstructionGraph) -> Result<Solution> {
    let n = graph.len();
    if n > ORACLE_TSP_MAX {
        return Err(Error::invalid(format!("exhaustive oracle refuses {n} > {ORACLE_TSP_MAX} nodes")));
    }
    if n < 2 {
        return Err(Error::invalid("oracle needs at least two nodes"));
    }
    let d = graph.dist();
    let mut rest: Vec<usize> = (1..n).collect();
    let mut best = (f64::INFINITY, Vec::new());
    fn search(
        d: &crate::model::SquareMatrix,
        tour: &mut Vec<usize>,
        rest: &mut Vec<usize>,
        len: f64,
        best: &mut (f64, Vec<usize>),
    ) {
        if len >= best.0 {
            return;
        }
        if rest.is_empty() {
            let total = len + d.get(*tour.last().unwrap(), tour[0]);
            if total < best.0 {
                *best = (total, tour.clone());
            }
            return;
        }
        for k in 0..rest.len() {
            let v = rest.remove(k);
            let step = d.get(*tour.last().unwrap(), v);
            tour.push(v);
            search(d, tour, rest, len + step, best);
            tour.pop();
            rest.insert(k, v);
        }
    }
    let mut tour = vec![0];
    search(d, &mut tour, &mut rest, 0.0, &mut best);
    let len = graph.sequence_length(&best.1, true);
    Ok(Solution::new(best.1, len, true))
}
