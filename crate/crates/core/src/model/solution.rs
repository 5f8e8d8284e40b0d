use serde::{Deserialize, Serialize};

/// An ordered node sequence with its cached objective.
///
/// `closed` marks tours whose last node links back to the first; open
/// sequences (paths, layered walks) have one edge fewer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Solution {
    pub nodes: Vec<usize>,
    pub objective: f64,
    pub closed: bool,
}

impl Solution {
    pub fn new(nodes: Vec<usize>, objective: f64, closed: bool) -> Self {
        Solution {
            nodes,
            objective,
            closed,
        }
    }

    /// Directed edges in traversal order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.nodes.len();
        let count = match (self.closed, n) {
            (_, 0 | 1) => 0,
            (true, _) => n,
            (false, _) => n - 1,
        };
        (0..count).map(move |k| (self.nodes[k], self.nodes[(k + 1) % n]))
    }

    /// Undirected edge keys `(min, max)`, sorted and deduplicated.
    pub fn undirected_edges(&self) -> Vec<(usize, usize)> {
        let mut e: Vec<_> = self
            .edges()
            .map(|(a, b)| if a < b { (a, b) } else { (b, a) })
            .collect();
        e.sort_unstable();
        e.dedup();
        e
    }

    pub fn contains_edge(&self, i: usize, j: usize) -> bool {
        self.edges()
            .any(|(a, b)| (a == i && b == j) || (a == j && b == i))
    }
}

/// Checks that `seq` is a permutation of `0..n`.
pub fn is_permutation(seq: &[usize], n: usize) -> bool {
    if seq.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in seq {
        if v >= n || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_and_open_edge_counts() {
        let closed = Solution::new(vec![0, 1, 2], 0.0, true);
        let open = Solution::new(vec![0, 1, 2], 0.0, false);
        assert_eq!(closed.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2), (2, 0)]);
        assert_eq!(open.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
        assert!(closed.contains_edge(0, 2));
        assert!(!open.contains_edge(0, 2));
    }

    #[test]
    fn permutation_check() {
        assert!(is_permutation(&[2, 0, 1], 3));
        assert!(!is_permutation(&[2, 2, 1], 3));
        assert!(!is_permutation(&[0, 1], 3));
        assert!(!is_permutation(&[0, 1, 3], 3));
    }
}
