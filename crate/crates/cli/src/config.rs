use std::fmt;
use std::path::{Path, PathBuf};

use eaco_core::baselines::BaselineParams;
use eaco_core::bench::ContinuousConfig;
use eaco_core::engine::EacoParams;
use eaco_core::gait::{GaitBounds, WalkerModel};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Eaco,
    Aco,
    Ga,
    Sa,
    Pso,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [Algorithm::Eaco, Algorithm::Aco, Algorithm::Ga, Algorithm::Sa, Algorithm::Pso];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Eaco => "eaco",
            Algorithm::Aco => "aco",
            Algorithm::Ga => "ga",
            Algorithm::Sa => "sa",
            Algorithm::Pso => "pso",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemConfig {
    /// `g1`..`g4`, `tsp:<file>`, `path:<file>` or `gait`.
    pub id: String,
    /// Waypoint grid spacing for path problems.
    #[serde(default = "default_resolution")]
    pub resolution: f64,
}

fn default_resolution() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentSettings {
    /// Algorithm of the single-algorithm subcommands.
    pub algorithm: Algorithm,
    /// Algorithms of `compare`; empty means every one that fits the problem.
    pub algorithms: Vec<Algorithm>,
    pub repetitions: usize,
    pub seed_base: u64,
    pub output_dir: PathBuf,
    /// Success threshold in reported units; problem default when absent.
    pub target: Option<f64>,
}

impl Default for ExperimentSettings {
    fn default() -> Self {
        ExperimentSettings {
            algorithm: Algorithm::Eaco,
            algorithms: Vec::new(),
            repetitions: 1,
            seed_base: 0,
            output_dir: PathBuf::from("out"),
            target: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GaitSettings {
    pub bounds: GaitBounds,
    pub model: WalkerModel,
    pub cycle_period: f64,
    pub duration: f64,
    /// Sampling rate of the exported joint trajectory.
    pub trajectory_hz: f64,
}

impl Default for GaitSettings {
    fn default() -> Self {
        GaitSettings {
            bounds: GaitBounds::default(),
            model: WalkerModel::default(),
            cycle_period: 1.0,
            duration: 20.0,
            trajectory_hz: 100.0,
        }
    }
}

/// One sweep cell: the four swept colony settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepCell {
    pub q0: f64,
    pub rho_local: f64,
    pub p_crossover: f64,
    pub p_mutation: f64,
}

/// Per-setting value lists whose cross product forms the sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepGrid {
    pub q0: Vec<f64>,
    pub rho_local: Vec<f64>,
    pub p_crossover: Vec<f64>,
    pub p_mutation: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepConfig {
    /// Cross-product grid; takes precedence over `cells`.
    pub grid: Option<SweepGrid>,
    pub cells: Vec<SweepCell>,
    /// Keep rate self-adaptation on so the swept rates are only starting
    /// values.
    pub self_adaptive: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        let cell = |q0, rho_local, p_crossover, p_mutation| SweepCell { q0, rho_local, p_crossover, p_mutation };
        SweepConfig {
            grid: None,
            cells: vec![
                cell(0.2, 0.1, 0.2, 0.2),
                cell(0.4, 0.2, 0.3, 0.3),
                cell(0.6, 0.3, 0.4, 0.4),
                cell(0.8, 0.3, 0.6, 0.5),
                cell(0.9, 0.4, 0.8, 0.8),
            ],
            self_adaptive: false,
        }
    }
}

impl SweepConfig {
    pub fn expand(&self) -> Vec<SweepCell> {
        let Some(g) = &self.grid else {
            return self.cells.clone();
        };
        let mut out = Vec::new();
        for &q0 in &g.q0 {
            for &rho_local in &g.rho_local {
                for &p_crossover in &g.p_crossover {
                    for &p_mutation in &g.p_mutation {
                        out.push(SweepCell { q0, rho_local, p_crossover, p_mutation });
                    }
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub problem: ProblemConfig,
    #[serde(default)]
    pub experiment: ExperimentSettings,
    #[serde(default)]
    pub eaco: EacoParams,
    #[serde(default)]
    pub continuous: ContinuousConfig,
    #[serde(default)]
    pub baselines: BaselineParams,
    #[serde(default)]
    pub gait: GaitSettings,
    #[serde(default)]
    pub sweep: SweepConfig,
    /// Directory that relative problem paths resolve against.
    #[serde(skip)]
    pub base_dir: PathBuf,
}

impl ExperimentConfig {
    pub fn parse(text: &str, base_dir: &Path) -> CliResult<Self> {
        let mut cfg: ExperimentConfig = toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        cfg.base_dir = base_dir.to_path_buf();
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Self::parse(&text, &base).map_err(|e| match e {
            CliError::Config(m) => CliError::Config(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn validate(&self) -> CliResult<()> {
        let invalid = |e: eaco_core::Error| CliError::Config(e.to_string());
        if self.experiment.repetitions == 0 {
            return Err(CliError::Config("experiment.repetitions must be >= 1".into()));
        }
        self.eaco.validate().map_err(invalid)?;
        self.baselines.validate().map_err(invalid)?;
        if !(self.problem.resolution > 0.0 && self.problem.resolution.is_finite()) {
            return Err(CliError::Config("problem.resolution must be positive".into()));
        }
        if let Some(path) = self.problem_file() {
            if !path.is_file() {
                return Err(CliError::Config(format!("problem file {} does not exist", path.display())));
            }
        }
        if self.sweep.expand().is_empty() {
            return Err(CliError::Config("the sweep grid is empty".into()));
        }
        Ok(())
    }

    /// File referenced by a `tsp:` or `path:` id, resolved against the
    /// config directory.
    pub fn problem_file(&self) -> Option<PathBuf> {
        let (_, rest) = self.problem.id.split_once(':')?;
        let p = Path::new(rest);
        Some(if p.is_absolute() { p.to_path_buf() } else { self.base_dir.join(p) })
    }

    pub fn output_dir(&self) -> PathBuf {
        let o = &self.experiment.output_dir;
        if o.is_absolute() {
            o.clone()
        } else {
            self.base_dir.join(o)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_config_uses_defaults() {
        let cfg = ExperimentConfig::parse("[problem]\nid = \"g1\"\n", Path::new(".")).unwrap();
        assert_eq!(cfg.experiment.repetitions, 1);
        assert_eq!(cfg.eaco, EacoParams::default());
        assert_eq!(cfg.sweep.expand().len(), 5);
    }

    #[test]
    fn unknown_keys_are_rejected_with_a_line() {
        let err = ExperimentConfig::parse("[problem]\nid = \"g1\"\n[eaco]\nbogus = 1\n", Path::new(".")).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("bogus") && msg.contains("line 4"), "{msg}");
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn zero_repetitions_rejected() {
        let err = ExperimentConfig::parse("[problem]\nid = \"g1\"\n[experiment]\nrepetitions = 0\n", Path::new("."));
        assert!(err.is_err());
    }

    #[test]
    fn missing_problem_file_rejected() {
        let err = ExperimentConfig::parse("[problem]\nid = \"tsp:nope.txt\"\n", Path::new("/nonexistent")).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn grid_expands_to_the_cross_product() {
        let text = "[problem]\nid = \"g1\"\n[sweep.grid]\nq0 = [0.5, 0.9]\nrho_local = [0.1, 0.2, 0.3]\np_crossover = [0.6]\np_mutation = [0.5]\n";
        let cfg = ExperimentConfig::parse(text, Path::new(".")).unwrap();
        assert_eq!(cfg.sweep.expand().len(), 6);
    }
}
