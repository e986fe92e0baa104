//! Linking pairings of Seifert-fibered rational homology spheres.
//!
//! The crate computes first homology and linking matrices of Seifert manifolds
//! `(O,o,0 | e; (a_1,b_1), ..., (a_m,b_m))` directly from their invariants,
//! cross-checks them against the star-shaped plumbing graph, and classifies the
//! resulting pairings on 2-groups with the Kawauchi–Kojima invariants
//! `(r_2^k, sigma_2^k)` computed from exact Gauss sums.
//!
//! Module map:
//!
//! * [`algebra`]: valuations, `Q/Z` values, Smith normal form, cyclotomic sums.
//! * [`seifert`]: presentations, stratification, homology, linking matrices.
//! * [`pairing`]: linking pairings, generator blocks, 2-adic block reduction.
//! * [`invariants`]: Gauss sums, invariant tables, isomorphism and summands.
//! * [`realize`]: the generator catalog and realization search.
//! * [`cli`]: the `linkform` command-line surface.

pub mod algebra;
pub mod cli;
pub mod invariants;
pub mod pairing;
pub mod parse;
pub mod realize;
pub mod seifert;

pub use algebra::{
    AbelianGroupStructure, AlgebraError, CyclotomicSum, ExtNat, IntMatrix, QZElement, Sigma,
};
pub use invariants::{InvariantTable, TableMethod};
pub use pairing::{BlockSum, GeneratorBlock, LinkingPairing};
pub use seifert::SeifertPresentation;
