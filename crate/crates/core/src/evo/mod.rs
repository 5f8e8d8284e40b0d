//! Genetic operators embedded in the colony and used by the real-coded
//! baseline: permutation crossovers, inversion mutation, Laplace crossover,
//! power mutation, genotype diversity and self-adaptive rate control.

mod adapt;
mod diversity;
mod hooks;
mod permutation;
mod real;

pub use adapt::{self_adapt_rates, AdaptConfig};
pub use diversity::{diversity_report, genotype_diversity, pair_distance, DiversityReport, Population};
pub use hooks::{refine_population, CrossoverKind, PermutationOps, Recombination, RefineStats};
pub use permutation::{erx_crossover, invert_segment, mutate, pmx_crossover, pmx_random};
pub use real::{
    clip_to_bounds, laplace_crossover, laplace_crossover_with_draws, laplace_draw, power_mutate_gene,
    power_mutation, LaplaceParams,
};
