use std::path::Path;

use eaco_core::engine::format_sig;
use serde::Serialize;

use crate::config::{Algorithm, ExperimentConfig, SweepCell};
use crate::error::{io_error, CliError, CliResult};
use crate::problem::Problem;
use crate::report::ComparisonRow;
use crate::runner::{run_loaded, write};

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    /// Index of the cell in grid order; its artifacts are in `cell_<index>/`.
    pub index: usize,
    pub cell: SweepCell,
    pub row: ComparisonRow,
}

pub const SWEEP_HEADER: &str = "cell,q0,rho_local,p_crossover,p_mutation,runs,success_rate,mean_iterations_to_target,mean_best";

/// Runs EACO once per grid cell and returns the rows sorted by mean
/// iterations to target, cells that never reached it last.
pub fn parameter_sweep(cfg: &ExperimentConfig) -> CliResult<Vec<SweepRow>> {
    let cells = cfg.sweep.expand();
    if cells.is_empty() {
        return Err(CliError::Config("the sweep grid is empty".into()));
    }
    let problem = Problem::load(cfg)?;
    let out_dir = cfg.output_dir();
    std::fs::create_dir_all(&out_dir).map_err(|e| io_error(&out_dir, e))?;
    let mut rows = Vec::with_capacity(cells.len());
    for (index, cell) in cells.into_iter().enumerate() {
        let mut c = cfg.clone();
        c.eaco.q0 = cell.q0;
        c.eaco.rho_local = cell.rho_local;
        c.eaco.p_crossover = cell.p_crossover;
        c.eaco.p_mutation = cell.p_mutation;
        c.eaco.self_adaptive = cfg.sweep.self_adaptive;
        c.validate()?;
        let out = run_loaded(&problem, &c, &[Algorithm::Eaco], &cell_dir(&out_dir, index))?;
        let row = out.report.into_iter().next().expect("one algorithm gives one row");
        rows.push(SweepRow { index, cell, row });
    }
    sort_rows(&mut rows);
    write(&out_dir.join("sweep.csv"), &sweep_csv(&rows))?;
    Ok(rows)
}

pub fn sort_rows(rows: &mut [SweepRow]) {
    rows.sort_by(|a, b| {
        let key = |r: &SweepRow| r.row.mean_iterations_to_target.unwrap_or(f64::INFINITY);
        key(a).total_cmp(&key(b)).then(a.index.cmp(&b.index))
    });
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let opt = |v: Option<f64>| v.map(|x| format_sig(x, 6)).unwrap_or_default();
    let mut out = String::from(SWEEP_HEADER);
    out.push('\n');
    for r in rows {
        let c = &r.cell;
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            r.index,
            format_sig(c.q0, 6),
            format_sig(c.rho_local, 6),
            format_sig(c.p_crossover, 6),
            format_sig(c.p_mutation, 6),
            r.row.runs,
            opt(r.row.success_rate),
            opt(r.row.mean_iterations_to_target),
            format_sig(r.row.mean_best, 6),
        ));
    }
    out
}

/// Path of a cell's artifact directory below the sweep output.
pub fn cell_dir(out_dir: &Path, index: usize) -> std::path::PathBuf {
    out_dir.join(format!("cell_{index}"))
}
