use rand::Rng;

use crate::error::Result;
use crate::model::{ProblemInstance, Solution};
use crate::rng::StreamRng;

use super::permutation::{erx_crossover, mutate, pmx_random};

/// Problem-specific genetic operators the colony applies to its ants.
/// Returning `None` means the operator produced nothing usable.
pub trait Recombination: Sync {
    fn crossover(&self, a: &[usize], b: &[usize], rng: &mut StreamRng) -> Option<Vec<usize>>;
    fn mutate(&self, s: &[usize], rng: &mut StreamRng) -> Option<Vec<usize>>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CrossoverKind {
    #[default]
    EdgeRecombination,
    PartiallyMapped,
}

/// Operators for complete tours: ERX or PMX plus inversion mutation.
#[derive(Debug, Clone, Copy, Default)]
pub struct PermutationOps {
    pub crossover: CrossoverKind,
}

impl Recombination for PermutationOps {
    fn crossover(&self, a: &[usize], b: &[usize], rng: &mut StreamRng) -> Option<Vec<usize>> {
        match self.crossover {
            CrossoverKind::EdgeRecombination => erx_crossover(a, b, rng).ok(),
            CrossoverKind::PartiallyMapped => pmx_random(a, b, rng).ok().map(|(c, _)| c),
        }
    }

    fn mutate(&self, s: &[usize], rng: &mut StreamRng) -> Option<Vec<usize>> {
        Some(mutate(s, 1.0, rng))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RefineStats {
    pub crossovers: usize,
    pub crossover_improvements: usize,
    pub mutations: usize,
    pub mutation_improvements: usize,
}

/// Applies crossover and mutation to the constructed ants.
///
/// Ants are ranked by objective and paired by rank; each pair crosses with
/// probability `p_crossover` and the child replaces the worse parent only if
/// strictly better. Every ant is then mutated with probability `p_mutation`,
/// keeping the mutant only if strictly better.
pub fn refine_population<P: ProblemInstance + ?Sized, O: Recombination + ?Sized>(
    problem: &P,
    ants: &mut [Solution],
    p_crossover: f64,
    p_mutation: f64,
    ops: &O,
    rng: &mut StreamRng,
) -> Result<RefineStats> {
    let mut stats = RefineStats::default();
    ants.sort_by(|a, b| a.objective.total_cmp(&b.objective));
    let mut k = 0;
    while k + 1 < ants.len() {
        if rng.gen::<f64>() < p_crossover {
            stats.crossovers += 1;
            if let Some(child) = ops.crossover(&ants[k].nodes, &ants[k + 1].nodes, rng) {
                if is_valid(problem, &child) {
                    let sol = problem.solution(child);
                    let worse = if ants[k].objective >= ants[k + 1].objective { k } else { k + 1 };
                    if sol.objective < ants[worse].objective {
                        ants[worse] = sol;
                        stats.crossover_improvements += 1;
                    }
                }
            }
        }
        k += 2;
    }
    for ant in ants.iter_mut() {
        if rng.gen::<f64>() < p_mutation {
            stats.mutations += 1;
            if let Some(m) = ops.mutate(&ant.nodes, rng) {
                if is_valid(problem, &m) {
                    let sol = problem.solution(m);
                    if sol.objective < ant.objective {
                        *ant = sol;
                        stats.mutation_improvements += 1;
                    }
                }
            }
        }
    }
    Ok(stats)
}

/// A sequence is valid if it can be replayed through `allowed` and completes.
fn is_valid<P: ProblemInstance + ?Sized>(problem: &P, seq: &[usize]) -> bool {
    let n = problem.graph().len();
    if seq.is_empty() || seq.iter().any(|&v| v >= n) {
        return false;
    }
    let mut visited = vec![false; n];
    let mut allowed = Vec::new();
    visited[seq[0]] = true;
    for k in 1..seq.len() {
        allowed.clear();
        problem.allowed(&seq[..k], &visited, &mut allowed);
        if !allowed.contains(&seq[k]) {
            return false;
        }
        visited[seq[k]] = true;
    }
    problem.is_complete(seq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{ConstructionGraph, Node, TourProblem};
    use crate::rng::stream;

    fn ring(n: usize) -> TourProblem {
        let nodes: Vec<Node> = (0..n)
            .map(|i| {
                let a = i as f64 / n as f64 * std::f64::consts::TAU;
                Node::new(i, vec![a.cos(), a.sin()])
            })
            .collect();
        TourProblem::new(ConstructionGraph::euclidean(nodes).unwrap())
    }

    #[test]
    fn refinement_never_worsens_any_rank() {
        let p = ring(9);
        let mut rng = stream(5, &[1]);
        for ops in [PermutationOps::default(), PermutationOps { crossover: CrossoverKind::PartiallyMapped }] {
            for _ in 0..50 {
                let mut ants: Vec<Solution> = (0..6)
                    .map(|_| {
                        let mut s: Vec<usize> = (0..9).collect();
                        rand::seq::SliceRandom::shuffle(s.as_mut_slice(), &mut rng);
                        p.solution(s)
                    })
                    .collect();
                let mut before: Vec<f64> = ants.iter().map(|a| a.objective).collect();
                before.sort_by(f64::total_cmp);
                refine_population(&p, &mut ants, 1.0, 1.0, &ops, &mut rng).unwrap();
                let mut after: Vec<f64> = ants.iter().map(|a| a.objective).collect();
                after.sort_by(f64::total_cmp);
                for (a, b) in after.iter().zip(&before) {
                    assert!(a <= b);
                }
                for a in &ants {
                    assert!(crate::model::is_permutation(&a.nodes, 9));
                }
            }
        }
    }
}
