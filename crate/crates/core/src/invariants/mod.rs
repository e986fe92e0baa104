//! The complete invariant system `k ↦ (r_2^k, σ_2^k)` for linking pairings
//! on 2-groups, with isomorphism, summand and decomposition queries built on
//! it.

mod decompose;
mod gauss;
mod table;

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::pairing::PairingError;

pub use decompose::{decompose, summand_test, SummandVerdict};
pub use gauss::{gauss_sum, scaled_sum, tau, GaussSum, QuadraticFunction};
pub use table::{
    classify_table, generator_table, invariant_table, invariant_table_with, is_isomorphic,
    sigma_r, table_of_block_sum, table_sum, DifferenceTableSpec, InvariantTable, SigmaSpec,
    TableClassification, TableMethod,
};

/// Default cap on enumerated group elements.
pub const DEFAULT_MAX_GROUP: u64 = 1 << 28;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantsError {
    #[error("group {orders:?} has more than {cap} elements; use the blockwise method or raise LINKFORM_MAX_GROUP")]
    ResourceBound { orders: Vec<u64>, cap: u64 },
    #[error("invariants are only defined here for 2-groups, got prime {0}")]
    NotTwoGroup(u64),
    #[error("no candidate block sum matches the invariant table of {0}")]
    NoCandidate(String),
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Pairing(#[from] PairingError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Enumeration limits for Gauss sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GaussOptions {
    pub max_elements: u64,
    pub workers: usize,
}

impl GaussOptions {
    /// Reads `LINKFORM_MAX_GROUP` and uses every available core.
    pub fn from_env() -> Self {
        let max_elements = std::env::var("LINKFORM_MAX_GROUP")
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .unwrap_or(DEFAULT_MAX_GROUP);
        GaussOptions {
            max_elements,
            ..Self::default()
        }
    }

    pub fn with_workers(self, workers: usize) -> Self {
        GaussOptions {
            workers: workers.max(1),
            ..self
        }
    }
}

impl Default for GaussOptions {
    fn default() -> Self {
        GaussOptions {
            max_elements: DEFAULT_MAX_GROUP,
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }
}
