use super::matrix::SquareMatrix;
use super::solution::Solution;
use crate::error::{Error, Result};

/// Heuristic value used for coincident nodes instead of `1 / 0`.
pub const ETA_CAP: f64 = 1e6;

#[derive(Debug, Clone, PartialEq)]
pub struct Node {
    pub id: usize,
    pub coords: Vec<f64>,
}

impl Node {
    pub fn new(id: usize, coords: impl Into<Vec<f64>>) -> Self {
        Node {
            id,
            coords: coords.into(),
        }
    }
}

pub fn euclidean_distance(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::invalid(format!(
            "dimension mismatch: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    if a.iter().chain(b).any(|v| !v.is_finite()) {
        return Err(Error::invalid("non-finite coordinate"));
    }
    Ok(a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt())
}

fn heuristic_of(d: f64) -> f64 {
    if d <= 1.0 / ETA_CAP {
        ETA_CAP
    } else {
        1.0 / d
    }
}

/// Distance and heuristic matrices for a node set. The heuristic is the
/// reciprocal distance, capped at [`ETA_CAP`] for coincident nodes; diagonal
/// entries are zero in both matrices.
pub fn build_matrices(nodes: &[Node]) -> Result<(SquareMatrix, SquareMatrix)> {
    let n = nodes.len();
    if n < 2 {
        return Err(Error::invalid("at least two nodes are required"));
    }
    let dim = nodes[0].coords.len();
    if dim == 0 {
        return Err(Error::invalid("nodes need at least one coordinate"));
    }
    let mut dist = SquareMatrix::filled(n, 0.0);
    let mut eta = SquareMatrix::filled(n, 0.0);
    for i in 0..n {
        for j in i + 1..n {
            let d = euclidean_distance(&nodes[i].coords, &nodes[j].coords)?;
            let h = heuristic_of(d);
            dist.set(i, j, d);
            dist.set(j, i, d);
            eta.set(i, j, h);
            eta.set(j, i, h);
        }
    }
    Ok((dist, eta))
}

/// The oriented graph ants walk on. Immutable once built.
#[derive(Debug, Clone)]
pub struct ConstructionGraph {
    nodes: Vec<Node>,
    dist: SquareMatrix,
    eta: SquareMatrix,
    adjacency: Option<Vec<Vec<usize>>>,
}

impl ConstructionGraph {
    /// Fully connected Euclidean graph.
    pub fn euclidean(nodes: Vec<Node>) -> Result<Self> {
        check_ids(&nodes)?;
        let (dist, eta) = build_matrices(&nodes)?;
        Ok(ConstructionGraph {
            nodes,
            dist,
            eta,
            adjacency: None,
        })
    }

    /// Graph from explicit matrices; used by layered and grid problems.
    pub fn from_parts(
        nodes: Vec<Node>,
        dist: SquareMatrix,
        eta: SquareMatrix,
        adjacency: Option<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        let n = nodes.len();
        check_ids(&nodes)?;
        if n < 2 || dist.size() != n || eta.size() != n {
            return Err(Error::invalid("matrix size does not match node count"));
        }
        if !dist.is_symmetric() {
            return Err(Error::invalid("asymmetric distance matrix"));
        }
        for i in 0..n {
            if dist.get(i, i) != 0.0 {
                return Err(Error::invalid("distance diagonal must be zero"));
            }
            for j in 0..n {
                let d = dist.get(i, j);
                if !(d.is_finite() && d >= 0.0) {
                    return Err(Error::invalid("distances must be finite and nonnegative"));
                }
                if i != j && !(eta.get(i, j).is_finite() && eta.get(i, j) > 0.0) {
                    return Err(Error::invalid("heuristic entries must be finite and positive"));
                }
            }
        }
        if let Some(adj) = &adjacency {
            if adj.len() != n {
                return Err(Error::invalid("adjacency length does not match node count"));
            }
            for (i, succ) in adj.iter().enumerate() {
                for &j in succ {
                    if j >= n || j == i {
                        return Err(Error::invalid(format!("bad successor {j} of node {i}")));
                    }
                    if !adj[j].contains(&i) {
                        return Err(Error::invalid("adjacency must be symmetric"));
                    }
                }
            }
        }
        Ok(ConstructionGraph {
            nodes,
            dist,
            eta,
            adjacency,
        })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn dist(&self) -> &SquareMatrix {
        &self.dist
    }

    pub fn eta(&self) -> &SquareMatrix {
        &self.eta
    }

    pub fn adjacency(&self) -> Option<&[Vec<usize>]> {
        self.adjacency.as_deref()
    }

    pub fn is_fully_connected(&self) -> bool {
        self.adjacency.is_none()
    }

    /// Successors of `i` permitted by the edge set (ignores visit state).
    pub fn successors(&self, i: usize) -> Box<dyn Iterator<Item = usize> + '_> {
        match &self.adjacency {
            Some(adj) => Box::new(adj[i].iter().copied()),
            None => Box::new((0..self.nodes.len()).filter(move |&j| j != i)),
        }
    }

    pub fn sequence_length(&self, seq: &[usize], closed: bool) -> f64 {
        let mut total: f64 = seq.windows(2).map(|w| self.dist.get(w[0], w[1])).sum();
        if closed && seq.len() > 1 {
            total += self.dist.get(seq[seq.len() - 1], seq[0]);
        }
        total
    }
}

fn check_ids(nodes: &[Node]) -> Result<()> {
    for (k, node) in nodes.iter().enumerate() {
        if node.id != k {
            return Err(Error::invalid(format!(
                "node ids must be 0..n in order; found {} at position {k}",
                node.id
            )));
        }
        if node.coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::invalid(format!("node {k} has a non-finite coordinate")));
        }
    }
    if let Some(first) = nodes.first() {
        if nodes.iter().any(|n| n.coords.len() != first.coords.len()) {
            return Err(Error::invalid("mixed coordinate dimensions"));
        }
    }
    Ok(())
}

/// Greedy closed tour: always move to the nearest unvisited node, ties to
/// the lowest id.
pub fn nearest_neighbor_tour(graph: &ConstructionGraph, start: usize) -> Result<Solution> {
    let n = graph.len();
    if start >= n {
        return Err(Error::invalid(format!("start node {start} out of range")));
    }
    if !graph.is_fully_connected() {
        return Err(Error::invalid("nearest-neighbor tour needs a fully connected graph"));
    }
    let mut visited = vec![false; n];
    let mut tour = Vec::with_capacity(n);
    let mut current = start;
    visited[start] = true;
    tour.push(start);
    for _ in 1..n {
        let mut best: Option<(usize, f64)> = None;
        for (j, &seen) in visited.iter().enumerate() {
            if seen {
                continue;
            }
            let d = graph.dist().get(current, j);
            if best.is_none_or(|(_, bd)| d < bd) {
                best = Some((j, d));
            }
        }
        let (next, _) = best.expect("unvisited node exists");
        visited[next] = true;
        tour.push(next);
        current = next;
    }
    let length = graph.sequence_length(&tour, true);
    Ok(Solution::new(tour, length, true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::solution::is_permutation;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn nodes(points: &[(f64, f64)]) -> Vec<Node> {
        points
            .iter()
            .enumerate()
            .map(|(i, &(x, y))| Node::new(i, vec![x, y]))
            .collect()
    }

    #[test]
    fn distance_examples() {
        assert_eq!(euclidean_distance(&[0.0, 0.0], &[3.0, 4.0]).unwrap(), 5.0);
        assert_eq!(euclidean_distance(&[2.0, 7.0], &[2.0, 7.0]).unwrap(), 0.0);
        assert_eq!(euclidean_distance(&[1.0, 1.0], &[4.0, 5.0]).unwrap(), 5.0);
        assert!(matches!(
            euclidean_distance(&[1.0], &[1.0, 2.0]),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn unit_square_matrices() {
        let (dist, eta) =
            build_matrices(&nodes(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)])).unwrap();
        assert_eq!(dist.get(0, 1), 1.0);
        assert_eq!(dist.get(1, 2), 1.0);
        assert!((dist.get(0, 2) - 2f64.sqrt()).abs() < 1e-15);
        assert!((dist.get(1, 3) - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(eta.get(0, 1), 1.0);
        assert!(dist.is_symmetric());
        assert!((0..4).all(|i| dist.get(i, i) == 0.0));
    }

    #[test]
    fn coincident_nodes_hit_the_cap() {
        let (dist, eta) = build_matrices(&nodes(&[(1.0, 1.0), (1.0, 1.0)])).unwrap();
        assert_eq!(dist.get(0, 1), 0.0);
        assert_eq!(eta.get(0, 1), ETA_CAP);
    }

    #[test]
    fn too_few_nodes_rejected() {
        assert!(build_matrices(&nodes(&[(0.0, 0.0)])).is_err());
    }

    #[test]
    fn matrices_match_per_pair_recomputation() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let pts: Vec<(f64, f64)> = (0..6)
            .map(|_| (rng.gen_range(0.0..10.0), rng.gen_range(0.0..10.0)))
            .collect();
        let (dist, eta) = build_matrices(&nodes(&pts)).unwrap();
        for i in 0..6 {
            for j in 0..6 {
                let (dx, dy) = (pts[i].0 - pts[j].0, pts[i].1 - pts[j].1);
                let d = (dx * dx + dy * dy).sqrt();
                assert!((dist.get(i, j) - d).abs() < 1e-12);
                if i != j {
                    assert!((dist.get(i, j) * eta.get(i, j) - 1.0).abs() <= f64::EPSILON);
                    assert!((eta.get(i, j) - 1.0 / d).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn asymmetric_graph_rejected() {
        let ns = nodes(&[(0.0, 0.0), (1.0, 0.0)]);
        let mut dist = SquareMatrix::filled(2, 0.0);
        dist.set(0, 1, 1.0);
        dist.set(1, 0, 2.0);
        let eta = SquareMatrix::filled(2, 1.0);
        assert!(ConstructionGraph::from_parts(ns, dist, eta, None).is_err());
    }

    #[test]
    fn nearest_neighbor_examples() {
        let g = ConstructionGraph::euclidean(nodes(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)])).unwrap();
        let t = nearest_neighbor_tour(&g, 0).unwrap();
        assert_eq!(t.nodes, vec![0, 1, 2]);
        assert_eq!(g.sequence_length(&t.nodes, false), 2.0);
        assert_eq!(t.objective, 4.0);

        let sq = ConstructionGraph::euclidean(nodes(&[
            (0.0, 0.0),
            (1.0, 0.0),
            (1.0, 1.0),
            (0.0, 1.0),
        ]))
        .unwrap();
        assert_eq!(nearest_neighbor_tour(&sq, 0).unwrap().objective, 4.0);
    }

    fn brute_force_tour(g: &ConstructionGraph) -> f64 {
        fn rec(g: &ConstructionGraph, seq: &mut Vec<usize>, used: &mut [bool], best: &mut f64) {
            if seq.len() == used.len() {
                *best = best.min(g.sequence_length(seq, true));
                return;
            }
            for j in 1..used.len() {
                if !used[j] {
                    used[j] = true;
                    seq.push(j);
                    rec(g, seq, used, best);
                    seq.pop();
                    used[j] = false;
                }
            }
        }
        let mut used = vec![false; g.len()];
        used[0] = true;
        let mut best = f64::INFINITY;
        rec(g, &mut vec![0], &mut used, &mut best);
        best
    }

    #[test]
    fn nearest_neighbor_is_a_permutation_no_shorter_than_optimum() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..5 {
            let pts: Vec<(f64, f64)> = (0..7)
                .map(|_| (rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0)))
                .collect();
            let g = ConstructionGraph::euclidean(nodes(&pts)).unwrap();
            let opt = brute_force_tour(&g);
            for s in 0..7 {
                let t = nearest_neighbor_tour(&g, s).unwrap();
                assert!(is_permutation(&t.nodes, 7));
                assert!(t.objective >= opt - 1e-12);
            }
        }
    }
}
