/// Bounds and reference points for self-adaptive operator rates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdaptConfig {
    /// Diversity below which mutation starts to ramp up.
    pub diversity_low: f64,
    /// Relative quality gap at which crossover reaches its floor.
    pub gap_ref: f64,
    pub p_crossover_min: f64,
    pub p_crossover_max: f64,
    pub p_mutation_min: f64,
    pub p_mutation_max: f64,
}

impl Default for AdaptConfig {
    fn default() -> Self {
        Self {
            diversity_low: 0.2,
            gap_ref: 0.2,
            p_crossover_min: 0.5,
            p_crossover_max: 1.0,
            p_mutation_min: 0.05,
            p_mutation_max: 0.5,
        }
    }
}

/// Returns `(p_crossover, p_mutation)`.
///
/// Mutation ramps linearly from its floor to its ceiling as diversity falls
/// from `diversity_low` to zero. Crossover shrinks from its ceiling toward
/// its floor as the relative gap `(mean - best) / |mean|` grows to `gap_ref`.
pub fn self_adapt_rates(diversity: f64, best: f64, mean: f64, cfg: &AdaptConfig) -> (f64, f64) {
    let low = cfg.diversity_low.max(f64::MIN_POSITIVE);
    let starve = ((low - diversity) / low).clamp(0.0, 1.0);
    let pm = cfg.p_mutation_min + (cfg.p_mutation_max - cfg.p_mutation_min) * starve;

    let gap = if mean.abs() > 0.0 && mean.is_finite() && best.is_finite() {
        ((mean - best) / mean.abs()).max(0.0)
    } else {
        0.0
    };
    let spread = (gap / cfg.gap_ref.max(f64::MIN_POSITIVE)).clamp(0.0, 1.0);
    let pc = cfg.p_crossover_max - (cfg.p_crossover_max - cfg.p_crossover_min) * spread;

    (
        pc.clamp(cfg.p_crossover_min, cfg.p_crossover_max),
        pm.clamp(cfg.p_mutation_min, cfg.p_mutation_max),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn collapsed_population_mutates_at_the_ceiling() {
        let (_, pm) = self_adapt_rates(0.0, 10.0, 10.0, &AdaptConfig::default());
        assert_eq!(pm, 0.5);
    }

    #[test]
    fn diverse_population_with_large_gap() {
        let (pc, pm) = self_adapt_rates(1.0, 10.0, 100.0, &AdaptConfig::default());
        assert_eq!((pc, pm), (0.5, 0.05));
    }

    #[test]
    fn rates_stay_clipped() {
        let cfg = AdaptConfig::default();
        for d in [-1.0, 0.0, 0.1, 0.5, 2.0] {
            for (b, m) in [(1.0, 1.0), (0.0, 5.0), (-3.0, 2.0), (5.0, 1.0), (1.0, 0.0)] {
                let (pc, pm) = self_adapt_rates(d, b, m, &cfg);
                assert!((0.5..=1.0).contains(&pc));
                assert!((0.05..=0.5).contains(&pm));
            }
        }
    }
}
