use eaco_core::engine::format_sig;
use serde::Serialize;

use crate::config::Algorithm;
use crate::runner::RunResult;

/// Aggregate of one algorithm's repetitions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub algorithm: Algorithm,
    pub runs: usize,
    pub successes: Option<usize>,
    pub success_rate: Option<f64>,
    /// Mean over the runs that reached the target.
    pub mean_iterations_to_target: Option<f64>,
    pub median_iterations_to_target: Option<f64>,
    pub mean_best: f64,
    pub best: f64,
    pub worst: f64,
    pub mean_wall_time_s: f64,
}

pub const REPORT_HEADER: &str =
    "algorithm,runs,successes,success_rate,mean_iterations_to_target,median_iterations_to_target,mean_best,best,worst";

pub fn build_report(runs: &[RunResult], algorithms: &[Algorithm], has_target: bool) -> Vec<ComparisonRow> {
    algorithms
        .iter()
        .filter_map(|&algo| {
            let rs: Vec<&RunResult> = runs.iter().filter(|r| r.algorithm == algo).collect();
            if rs.is_empty() {
                return None;
            }
            let n = rs.len() as f64;
            let mut hits: Vec<usize> = rs.iter().filter_map(|r| r.iterations_to_target).collect();
            hits.sort_unstable();
            let successes = has_target.then(|| rs.iter().filter(|r| r.success == Some(true)).count());
            let mean_its = (!hits.is_empty()).then(|| hits.iter().sum::<usize>() as f64 / hits.len() as f64);
            Some(ComparisonRow {
                algorithm: algo,
                runs: rs.len(),
                successes,
                success_rate: successes.map(|s| s as f64 / n),
                mean_iterations_to_target: mean_its,
                median_iterations_to_target: has_target.then(|| median_with_misses(&rs)).flatten(),
                mean_best: rs.iter().map(|r| r.best).sum::<f64>() / n,
                best: rs.iter().map(|r| r.best).fold(f64::INFINITY, f64::min),
                worst: rs.iter().map(|r| r.best).fold(f64::NEG_INFINITY, f64::max),
                mean_wall_time_s: rs.iter().map(|r| r.wall_time_s).sum::<f64>() / n,
            })
        })
        .collect()
}

/// Median iterations to target over all runs, a miss counting as never;
/// `None` when the median run missed.
fn median_with_misses(runs: &[&RunResult]) -> Option<f64> {
    let mut v: Vec<Option<usize>> = runs.iter().map(|r| r.iterations_to_target).collect();
    v.sort_by_key(|x| x.unwrap_or(usize::MAX));
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2].map(|x| x as f64)
    } else {
        Some((v[n / 2 - 1]? as f64 + v[n / 2]? as f64) / 2.0)
    }
}

/// Deterministic CSV of the report; wall times live in `summary.json` only.
pub fn report_csv(rows: &[ComparisonRow]) -> String {
    let opt = |v: Option<f64>| v.map(|x| format_sig(x, 6)).unwrap_or_default();
    let mut out = String::from(REPORT_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            r.algorithm,
            r.runs,
            r.successes.map(|s| s.to_string()).unwrap_or_default(),
            opt(r.success_rate),
            opt(r.mean_iterations_to_target),
            opt(r.median_iterations_to_target),
            format_sig(r.mean_best, 6),
            format_sig(r.best, 6),
            format_sig(r.worst, 6),
        ));
    }
    out
}
