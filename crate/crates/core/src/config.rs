//! Bounds and budgets shared by the analysis engines.

use crate::characters::{DEFAULT_ORACLE_BOUND, DEFAULT_SUPERMONOMIAL_BOUND};
use crate::group::{DEFAULT_MAX_ORDER, DEFAULT_MAX_SUBGROUP_ENUM};

/// Default number of chain extensions a single chain search may try.
pub const DEFAULT_CHAIN_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalysisConfig {
    /// Largest group order accepted by constructions and closures.
    pub max_order: usize,
    /// Largest group order for which the full subgroup lattice is built, and
    /// hence the largest group that can be classified.
    pub max_subgroup_enum: usize,
    /// Chain extensions tried per pair before reporting the pair undetermined.
    pub chain_budget: u64,
    /// Largest group order for the character table oracle.
    pub oracle_bound: usize,
    /// Largest group order for exhaustive supermonomiality checks.
    pub supermonomial_bound: usize,
    /// Record wall-clock timings in reports (makes output nondeterministic).
    pub timings: bool,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            max_order: DEFAULT_MAX_ORDER,
            max_subgroup_enum: DEFAULT_MAX_SUBGROUP_ENUM,
            chain_budget: DEFAULT_CHAIN_BUDGET,
            oracle_bound: DEFAULT_ORACLE_BOUND,
            supermonomial_bound: DEFAULT_SUPERMONOMIAL_BOUND,
            timings: false,
        }
    }
}
