use rand::Rng;

use crate::error::Result;
use crate::model::{ConstructionGraph, Node, TourProblem};
use crate::rng::{purpose, stream};

/// `n` cities drawn uniformly from a `size` × `size` square.
pub fn random_cities(n: usize, size: f64, seed: u64) -> Vec<Node> {
    let mut rng = stream(seed, &[purpose::INIT, n as u64]);
    (0..n).map(|i| Node::new(i, vec![rng.gen_range(0.0..size), rng.gen_range(0.0..size)])).collect()
}

/// Closed-tour instance over [`random_cities`] in a 100 × 100 square.
pub fn random_tsp(n: usize, seed: u64) -> Result<TourProblem> {
    Ok(TourProblem::new(ConstructionGraph::euclidean(random_cities(n, 100.0, seed))?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cities_are_reproducible_and_inside_the_square() {
        let a = random_cities(12, 50.0, 3);
        assert_eq!(a, random_cities(12, 50.0, 3));
        assert_ne!(a, random_cities(12, 50.0, 4));
        assert!(a.iter().all(|n| n.coords.iter().all(|&c| (0.0..50.0).contains(&c))));
    }
}
