use rand::Rng;

use super::constrained::{check_bounds, ContinuousProblem};
use crate::engine::{run_seeded, ConvergenceRecord, EacoParams, StopReason};
use crate::error::{Error, Result};
use crate::evo::{laplace_crossover, power_mutate_gene, LaplaceParams, Recombination};
use crate::model::{ConstructionGraph, Node, ProblemInstance, SquareMatrix, StartRule, TourKind};
use crate::rng::{purpose, stream, StreamRng};

/// Quantisation of a box into `levels` values per dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscretizationScheme {
    pub levels: usize,
    pub ranges: Vec<(f64, f64)>,
    pub original: Vec<(f64, f64)>,
    pub gamma: f64,
}

impl DiscretizationScheme {
    pub fn new(bounds: &[(f64, f64)], levels: usize, gamma: f64) -> Result<Self> {
        check_bounds(bounds)?;
        if levels < 2 {
            return Err(Error::invalid("at least two levels per dimension are required"));
        }
        if !(gamma > 0.0 && gamma <= 1.0) {
            return Err(Error::invalid(format!("shrink factor must lie in (0, 1], got {gamma}")));
        }
        Ok(Self { levels, ranges: bounds.to_vec(), original: bounds.to_vec(), gamma })
    }

    pub fn dimension(&self) -> usize {
        self.ranges.len()
    }

    /// Value of `level` in dimension `k`. Levels are evenly spaced over the
    /// current range; once a range has shrunk, the two end levels stay on
    /// the original bounds so the search can still jump to them.
    pub fn level_value(&self, k: usize, level: usize) -> f64 {
        let (lo, hi) = self.ranges[k];
        let (olo, ohi) = self.original[k];
        let last = self.levels - 1;
        if self.levels >= 4 && (lo, hi) != (olo, ohi) {
            return match level {
                0 => olo,
                l if l == last => ohi,
                l if l + 1 == last => hi,
                l => lo + (hi - lo) * (l - 1) as f64 / (self.levels - 3) as f64,
            };
        }
        if level == last {
            return hi;
        }
        lo + (hi - lo) * level as f64 / last as f64
    }

    /// Graph node of `level` in layer `k`.
    pub fn node_id(&self, k: usize, level: usize) -> usize {
        self.hub(k) + 1 + level
    }

    /// Junction node in front of layer `k`; hub 0 is the source.
    pub fn hub(&self, k: usize) -> usize {
        k * (self.levels + 1)
    }

    pub fn node_count(&self) -> usize {
        self.dimension() * (self.levels + 1)
    }

    /// Nodes on a complete source-to-sink path.
    pub fn path_len(&self) -> usize {
        2 * self.dimension()
    }

    /// Vector encoded by a source-to-sink path.
    pub fn decode(&self, path: &[usize]) -> Result<Vec<f64>> {
        let d = self.dimension();
        if path.len() != self.path_len() {
            return Err(Error::invalid("path must cross every layer"));
        }
        (0..d)
            .map(|k| {
                if path[2 * k] != self.hub(k) {
                    return Err(Error::invalid(format!("missing junction before layer {k}")));
                }
                let id = path[2 * k + 1];
                let first = self.node_id(k, 0);
                if id < first || id >= first + self.levels {
                    return Err(Error::invalid(format!("node {id} is not in layer {k}")));
                }
                Ok(self.level_value(k, id - first))
            })
            .collect()
    }

    /// Path through the nearest level of each coordinate.
    pub fn encode(&self, x: &[f64]) -> Result<Vec<usize>> {
        if x.len() != self.dimension() {
            return Err(Error::invalid("vector length does not match the scheme"));
        }
        let mut path = Vec::with_capacity(self.path_len());
        for (k, &v) in x.iter().enumerate() {
            let mut level = 0;
            for l in 1..self.levels {
                if (self.level_value(k, l) - v).abs() < (self.level_value(k, level) - v).abs() {
                    level = l;
                }
            }
            path.push(self.hub(k));
            path.push(self.node_id(k, level));
        }
        Ok(path)
    }
}

/// Recentres every range on `best_x` with width scaled by `gamma`. A range
/// that would cross an original bound is shifted back inside it.
pub fn shrink_ranges(scheme: &DiscretizationScheme, best_x: &[f64], gamma: f64) -> DiscretizationScheme {
    let mut out = scheme.clone();
    for (k, r) in out.ranges.iter_mut().enumerate() {
        let (olo, ohi) = scheme.original[k];
        let (lo, hi) = scheme.ranges[k];
        let floor = (ohi - olo) * 1e-9;
        let half = ((hi - lo) * gamma).max(floor) / 2.0;
        let c = best_x[k].clamp(olo, ohi);
        *r = if c - half < olo {
            (olo, (olo + 2.0 * half).min(ohi))
        } else if c + half > ohi {
            ((ohi - 2.0 * half).max(olo), ohi)
        } else {
            (c - half, c + half)
        };
    }
    out
}

/// A continuous problem seen as a layered graph: one layer per dimension
/// with `levels` nodes each. A junction node in front of every layer links
/// to all of its levels, and every level links on to the next junction, so
/// the trail on a junction-to-level edge belongs to that (dimension, level)
/// pair alone. η is uniform.
pub struct LayeredProblem<'a, P: ContinuousProblem + ?Sized> {
    problem: &'a P,
    scheme: DiscretizationScheme,
    graph: ConstructionGraph,
}

pub fn discretize<'a, P: ContinuousProblem + ?Sized>(
    problem: &'a P,
    scheme: &DiscretizationScheme,
) -> Result<LayeredProblem<'a, P>> {
    if scheme.dimension() != problem.dimension() {
        return Err(Error::invalid("scheme and problem dimensions differ"));
    }
    let n = scheme.node_count();
    let mut adjacency = vec![Vec::new(); n];
    for k in 0..scheme.dimension() {
        for l in 0..scheme.levels {
            let v = scheme.node_id(k, l);
            let mut link = |a: usize, b: usize| {
                adjacency[a].push(b);
                adjacency[b].push(a);
            };
            link(scheme.hub(k), v);
            if k + 1 < scheme.dimension() {
                link(v, scheme.hub(k + 1));
            }
        }
    }
    let nodes = (0..n).map(|i| Node::new(i, vec![i as f64])).collect();
    let dist = SquareMatrix::from_fn(n, |i, j| if i == j { 0.0 } else { 1.0 });
    let eta = SquareMatrix::filled(n, 1.0);
    let graph = ConstructionGraph::from_parts(nodes, dist, eta, Some(adjacency))?;
    Ok(LayeredProblem { problem, scheme: scheme.clone(), graph })
}

impl<P: ContinuousProblem + ?Sized> LayeredProblem<'_, P> {
    pub fn scheme(&self) -> &DiscretizationScheme {
        &self.scheme
    }

    pub fn decode(&self, path: &[usize]) -> Result<Vec<f64>> {
        self.scheme.decode(path)
    }
}

impl<P: ContinuousProblem + ?Sized> ProblemInstance for LayeredProblem<'_, P> {
    fn graph(&self) -> &ConstructionGraph {
        &self.graph
    }

    fn tour_kind(&self) -> TourKind {
        TourKind::Open
    }

    fn start_rule(&self) -> StartRule {
        StartRule::Fixed(0)
    }

    fn allowed(&self, partial: &[usize], _visited: &[bool], out: &mut Vec<usize>) {
        let pos = partial.len();
        if pos >= self.scheme.path_len() {
            return;
        }
        let k = pos / 2;
        if pos % 2 == 1 {
            let first = self.scheme.node_id(k, 0);
            out.extend(first..first + self.scheme.levels);
        } else {
            out.push(self.scheme.hub(k));
        }
    }

    fn is_complete(&self, partial: &[usize]) -> bool {
        partial.len() == self.scheme.path_len()
    }

    fn objective(&self, sequence: &[usize]) -> f64 {
        match self.scheme.decode(sequence) {
            Ok(x) => self.problem.to_internal(self.problem.evaluate(&x)).max(f64::MIN_POSITIVE),
            Err(_) => f64::INFINITY,
        }
    }

    fn reported(&self, objective: f64) -> f64 {
        self.problem.to_reported(objective)
    }

    fn optimum_known(&self) -> Option<f64> {
        self.problem.optimum_known()
    }
}

/// Genetic operators on layered paths, applied in decoded space: Laplace
/// crossover and power mutation (one gene on average), snapped back to the
/// nearest grid level.
#[derive(Debug, Clone)]
pub struct LayeredOps {
    pub scheme: DiscretizationScheme,
    pub laplace: LaplaceParams,
    pub power_index: f64,
}

impl LayeredOps {
    pub fn new(scheme: DiscretizationScheme) -> Self {
        Self { scheme, laplace: LaplaceParams::default(), power_index: 0.25 }
    }
}

impl Recombination for LayeredOps {
    fn crossover(&self, a: &[usize], b: &[usize], rng: &mut StreamRng) -> Option<Vec<usize>> {
        let xa = self.scheme.decode(a).ok()?;
        let xb = self.scheme.decode(b).ok()?;
        let (c1, c2) = laplace_crossover(&xa, &xb, &self.scheme.ranges, self.laplace, rng).ok()?;
        let child = if rng.gen::<bool>() { c1 } else { c2 };
        self.scheme.encode(&child).ok()
    }

    fn mutate(&self, s: &[usize], rng: &mut StreamRng) -> Option<Vec<usize>> {
        let mut x = self.scheme.decode(s).ok()?;
        let d = x.len();
        let forced = rng.gen_range(0..d);
        for (k, v) in x.iter_mut().enumerate() {
            if k == forced || rng.gen::<f64>() < 1.0 / d as f64 {
                let (lo, hi) = self.scheme.ranges[k];
                *v = power_mutate_gene(*v, lo, hi, self.power_index, rng);
            }
        }
        self.scheme.encode(&x).ok()
    }
}

/// Ratio `τ_max / τ_min` at which a converged colony still builds the
/// best path with probability `p_best`, for `decisions` choices per
/// solution among `branching` options each.
pub fn mmas_bound_ratio(decisions: usize, branching: usize, p_best: f64) -> f64 {
    let root = p_best.powf(1.0 / decisions.max(1) as f64);
    let avg = (branching as f64 / 2.0).max(1.5);
    ((avg - 1.0) * root / (1.0 - root)).max(2.0)
}

/// Settings of the segmented continuous driver.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ContinuousConfig {
    pub levels: usize,
    pub gamma: f64,
    /// Stagnant iterations before the ranges shrink.
    pub reshrink_after: usize,
    pub genetic_operators: bool,
    /// Random points evaluated before the first segment.
    pub initial_solutions: usize,
    /// Target probability of rebuilding the incumbent once trails converge;
    /// sets the pheromone bound ratio unless bounds are given explicitly.
    pub p_best: f64,
}

impl Default for ContinuousConfig {
    fn default() -> Self {
        Self {
            levels: 21,
            gamma: 0.7,
            reshrink_after: 25,
            genetic_operators: true,
            initial_solutions: 20,
            p_best: 0.05,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ContinuousOutcome {
    pub best_x: Vec<f64>,
    /// Best value in reported units.
    pub best_value: f64,
    pub record: ConvergenceRecord,
    pub iterations: usize,
    pub segments: usize,
    pub construction_failures: usize,
}

/// Runs the colony on successive discretisations of `problem`. Every
/// segment is seeded with the incumbent. A segment that improves on it ends
/// at once and the ranges recentre on the new incumbent; a segment that
/// stagnates for `reshrink_after` iterations shrinks the ranges by `gamma`.
/// The iteration budget `params.max_iterations` spans all segments and the
/// record is concatenated.
pub fn run_continuous<P: ContinuousProblem + ?Sized>(
    problem: &P,
    params: &EacoParams,
    cfg: &ContinuousConfig,
) -> Result<ContinuousOutcome> {
    params.validate()?;
    if !(cfg.p_best > 0.0 && cfg.p_best < 1.0) {
        return Err(Error::invalid("p_best must lie in (0, 1)"));
    }
    let mut scheme = DiscretizationScheme::new(problem.bounds(), cfg.levels, cfg.gamma)?;
    let mut record = ConvergenceRecord::default();
    let mut best: Option<(Vec<f64>, f64)> = None;
    let mut init_rng = stream(params.seed, &[purpose::INIT]);
    for _ in 0..cfg.initial_solutions {
        let x: Vec<f64> = (0..scheme.dimension())
            .map(|k| scheme.level_value(k, init_rng.gen_range(0..cfg.levels)))
            .collect();
        let v = problem.evaluate(&x);
        if v.is_finite() && best.as_ref().is_none_or(|b| v < b.1) {
            best = Some((x, v));
        }
    }
    let ratio = mmas_bound_ratio(scheme.dimension(), cfg.levels, cfg.p_best);
    let mut used = 0;
    let mut segments = 0;
    let mut failures = 0;
    while used < params.max_iterations {
        let seg_seed: u64 = stream(params.seed, &[purpose::SEGMENT, segments as u64]).gen();
        let layered = discretize(problem, &scheme)?;
        let seeds: Vec<Vec<usize>> = best.iter().map(|b| scheme.encode(&b.0)).collect::<Result<_>>()?;
        let carry = best.as_ref().map_or(f64::INFINITY, |b| b.1);
        // A segment ends at its first strict improvement so the next one is
        // seeded from the new incumbent.
        let improve = carry - 1e-9 * carry.abs().max(1.0);
        let target = match params.target_objective {
            Some(t) if carry.is_finite() => Some(t.max(improve)),
            Some(t) => Some(t),
            None => carry.is_finite().then_some(improve),
        };
        let seg_params = EacoParams {
            max_iterations: params.max_iterations - used,
            stagnation_limit: Some(cfg.reshrink_after),
            target_objective: target,
            seed: seg_seed,
            tau_ratio: Some(params.tau_ratio.unwrap_or(ratio)),
            ..params.clone()
        };
        let ops = LayeredOps::new(scheme.clone());
        let ops = cfg.genetic_operators.then_some(&ops as &dyn Recombination);
        let out = run_seeded(&layered, &seg_params, ops, &seeds, |_| {})?;
        segments += 1;
        failures += out.construction_failures;
        for row in &out.record.rows {
            let mut row = row.clone();
            row.t += used;
            row.best = row.best.min(carry);
            record.push(row);
        }
        used += out.iterations;
        let x = layered.decode(&out.best.nodes)?;
        if out.best_reported < carry {
            best = Some((x, out.best_reported));
        }
        if params.target_objective.is_some_and(|t| out.best_reported <= t) {
            break;
        }
        let centre = &best.as_ref().expect("a segment ran").0;
        if out.stop == StopReason::TargetReached {
            scheme = shrink_ranges(&scheme, centre, 1.0);
            continue;
        }
        scheme = shrink_ranges(&scheme, centre, cfg.gamma);
    }
    let (best_x, best_value) = best.expect("at least one segment ran");
    Ok(ContinuousOutcome { best_x, best_value, record, iterations: used, segments, construction_failures: failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::Sphere;

    #[test]
    fn uniform_levels() {
        let s = DiscretizationScheme::new(&[(0.0, 1.0)], 3, 0.7).unwrap();
        assert_eq!((0..3).map(|l| s.level_value(0, l)).collect::<Vec<_>>(), vec![0.0, 0.5, 1.0]);
    }

    #[test]
    fn lowest_path_decodes_to_lower_bounds() {
        let b = [(-1.0, 1.0), (2.0, 5.0)];
        let s = DiscretizationScheme::new(&b, 4, 0.7).unwrap();
        let path = vec![s.hub(0), s.node_id(0, 0), s.hub(1), s.node_id(1, 0)];
        assert_eq!(s.decode(&path).unwrap(), vec![-1.0, 2.0]);
    }

    #[test]
    fn encode_decode_round_trip_on_grid() {
        let b = [(0.0, 1.0), (-3.0, 7.0), (10.0, 11.0)];
        let s = DiscretizationScheme::new(&b, 5, 0.7).unwrap();
        for a in 0..5 {
            for c in 0..5 {
                for e in 0..5 {
                    let path = vec![0, s.node_id(0, a), s.hub(1), s.node_id(1, c), s.hub(2), s.node_id(2, e)];
                    let x = s.decode(&path).unwrap();
                    assert_eq!(s.encode(&x).unwrap(), path);
                }
            }
        }
    }

    #[test]
    fn shrink_examples() {
        let s = DiscretizationScheme::new(&[(0.0, 10.0)], 5, 0.5).unwrap();
        let same = shrink_ranges(&s, &[5.0], 1.0);
        assert_eq!(same.ranges, vec![(0.0, 10.0)]);
        let half = shrink_ranges(&s, &[5.0], 0.5);
        assert_eq!(half.ranges, vec![(2.5, 7.5)]);
    }

    #[test]
    fn shrinking_never_leaves_the_original_box() {
        let b = [(0.0, 1.0), (-5.0, 5.0)];
        let mut s = DiscretizationScheme::new(&b, 7, 0.7).unwrap();
        let targets = [[1.0, -5.0], [0.3, 4.9], [0.0, 0.0]];
        for k in 0..50 {
            s = shrink_ranges(&s, &targets[k % 3], 0.7);
            for (r, o) in s.ranges.iter().zip(&b) {
                assert!(r.0 >= o.0 && r.1 <= o.1 && r.0 <= r.1);
            }
        }
    }

    #[test]
    fn layered_walks_decode_inside_bounds() {
        let p = Sphere::new(3, 2.0);
        let s = DiscretizationScheme::new(p.bounds(), 5, 0.7).unwrap();
        let lp = discretize(&p, &s).unwrap();
        let tau = crate::model::PheromoneMatrix::unbounded(s.node_count(), 1.0).unwrap();
        let mut rng = stream(1, &[]);
        for _ in 0..200 {
            let sol = crate::engine::construct_solution(&lp, &tau, &EacoParams::default(), &mut rng).unwrap();
            let x = lp.decode(&sol.nodes).unwrap();
            assert!(x.iter().all(|v| (-2.0..=2.0).contains(v)));
            assert!((lp.reported(sol.objective) - p.evaluate(&x)).abs() < 1e-12);
        }
    }

    #[test]
    fn driver_minimises_sphere() {
        let p = Sphere::new(2, 5.0);
        let params = EacoParams { max_iterations: 300, seed: 4, ..Default::default() };
        let out = run_continuous(&p, &params, &ContinuousConfig::default()).unwrap();
        assert!(out.best_value < 1e-2, "{}", out.best_value);
        assert_eq!(out.record.len(), out.iterations);
    }
}
