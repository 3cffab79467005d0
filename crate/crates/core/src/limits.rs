//! Resource gates that keep enumeration at desk scale.

/// Environment variable that overrides every enumeration gate at once.
pub const MAX_CELLS_ENV: &str = "HYPERWEIGHT_MAX_CELLS";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest torus `(q-1)^s` that may be materialized as a codeword.
    pub max_points: u64,
    /// Largest number of codewords an exhaustive spectrum may enumerate.
    pub max_codewords: u64,
    /// Largest `codewords * length` an exhaustive spectrum may touch.
    pub max_work: u64,
    /// Footprint counting enumerates the exponent box up to this many cells
    /// and falls back to inclusion-exclusion above it.
    pub max_box_cells: u64,
    /// Largest number of variables for which a full Groebner basis is computed.
    pub max_groebner_vars: usize,
    /// Cap on S-pair reductions in Buchberger's algorithm.
    pub buchberger_steps: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_points: 100_000_000,
            max_codewords: 10_000_000,
            max_work: 100_000_000,
            max_box_cells: 10_000_000,
            max_groebner_vars: 4,
            buchberger_steps: 100_000,
        }
    }
}

impl Limits {
    /// Same gates for every enumeration.
    pub fn with_max_cells(cells: u64) -> Limits {
        Limits {
            max_points: cells,
            max_codewords: cells,
            max_work: cells,
            max_box_cells: cells,
            ..Limits::default()
        }
    }

    /// Defaults, overridden by `HYPERWEIGHT_MAX_CELLS` when it holds an integer.
    pub fn from_env() -> Limits {
        match std::env::var(MAX_CELLS_ENV).ok().and_then(|v| v.trim().parse().ok()) {
            Some(cells) => Limits::with_max_cells(cells),
            None => Limits::default(),
        }
    }
}
