use crate::model::Solution;

pub type Population = [Solution];

/// Edge-set distance `1 - |E1 ∩ E2| / max(|E1|, |E2|)` over undirected edges.
pub fn pair_distance(a: &Solution, b: &Solution) -> f64 {
    edge_distance(&a.undirected_edges(), &b.undirected_edges())
}

fn edge_distance(e1: &[(usize, usize)], e2: &[(usize, usize)]) -> f64 {
    let denom = e1.len().max(e2.len());
    if denom == 0 {
        return 0.0;
    }
    // both sorted
    let (mut i, mut j, mut common) = (0, 0, 0usize);
    while i < e1.len() && j < e2.len() {
        match e1[i].cmp(&e2[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                common += 1;
                i += 1;
                j += 1;
            }
        }
    }
    1.0 - common as f64 / denom as f64
}

/// Mean pairwise edge-set distance; 0 for fewer than two members.
pub fn genotype_diversity(population: &Population) -> f64 {
    let n = population.len();
    if n < 2 {
        return 0.0;
    }
    let edges: Vec<_> = population.iter().map(Solution::undirected_edges).collect();
    let mut total = 0.0;
    for a in 0..n {
        for b in a + 1..n {
            total += edge_distance(&edges[a], &edges[b]);
        }
    }
    total / (n * (n - 1) / 2) as f64
}

/// Diversity together with the quality picture of a population.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiversityReport {
    pub genotype_diversity: f64,
    pub best: f64,
    pub mean: f64,
    /// Objective average weighted by `1/f`, so better members count more.
    pub weighted_mean: f64,
}

pub fn diversity_report(population: &Population) -> Option<DiversityReport> {
    if population.is_empty() {
        return None;
    }
    let objs = population.iter().map(|s| s.objective);
    let best = objs.clone().fold(f64::INFINITY, f64::min);
    let mean = objs.clone().sum::<f64>() / population.len() as f64;
    let (num, den) = objs
        .filter(|f| *f > 0.0)
        .fold((0.0, 0.0), |(n, d), f| (n + 1.0, d + 1.0 / f));
    let weighted_mean = if den > 0.0 { num / den } else { mean };
    Some(DiversityReport { genotype_diversity: genotype_diversity(population), best, mean, weighted_mean })
}
