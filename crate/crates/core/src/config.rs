//! Resource caps shared by the pipelines.

use serde::{Deserialize, Serialize};

/// Environment variable that overrides [`Limits::max_sheets`].
pub const MAX_SHEETS_ENV: &str = "SCS_MAX_SHEETS";

/// Size caps and retry budgets. Exceeding a cap is reported as a resource
/// error rather than silently truncated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Largest permutation degree any cover may reach.
    pub max_sheets: usize,
    /// Largest product-kernel degree the greedy exclusion tower may reach
    /// before `build_k` falls back to congruence quotients.
    pub tower_budget: usize,
    /// Attempts for randomized constructions.
    pub retry_limit: usize,
    /// Largest total slot count tried by the star gluing generator.
    pub max_glue_slots: usize,
    /// Largest group order enumerated by exhaustive quotient checks.
    pub exhaustive_order: usize,
    /// Longest conjugator tried by the deepening search in `vf decide`.
    pub max_conjugator_length: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_sheets: 1_000_000,
            tower_budget: 50_000,
            retry_limit: 8,
            max_glue_slots: 1 << 21,
            exhaustive_order: 100_000,
            max_conjugator_length: 10,
        }
    }
}

impl Limits {
    /// Defaults, with `max_sheets` taken from `SCS_MAX_SHEETS` when set.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(v) = std::env::var(MAX_SHEETS_ENV).ok().and_then(|s| s.trim().parse().ok()) {
            if v > 0 {
                limits.max_sheets = v;
            }
        }
        limits
    }
}
