//! Seifert realizations of 2-group pairings: the explicit catalog, the
//! verification of claimed realizations and a bounded search.

mod catalog;
mod search;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::AbelianGroupStructure;
use crate::invariants::{invariant_table_with, GaussOptions, InvariantTable, InvariantsError, TableMethod};
use crate::pairing::{BlockKind, BlockSum, GeneratorBlock, LinkingPairing, PairingError};
use crate::seifert::{
    homology_snf, linking_pairing, torsion_homology_formula, PairingPath, SeifertError, SeifertPresentation,
};

pub use catalog::{
    catalog, hyperbolic_family_report, mixed_five_cases, FamilyRow, RealizationEntry, Source,
};
pub use search::{search_realization, SearchBounds, SearchHit};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RealizeError {
    #[error("{0} has no catalog presentation; try the search")]
    NotInCatalog(String),
    #[error("search exhausted after {tried} candidate presentations")]
    Exhausted { tried: u64 },
    #[error(transparent)]
    Seifert(#[from] SeifertError),
    #[error(transparent)]
    Invariants(#[from] InvariantsError),
    #[error(transparent)]
    Pairing(#[from] PairingError),
}

fn pow2(k: u32) -> i64 {
    1i64 << k
}

/// The catalog presentation of a generator.
///
/// `E0(k)` and `E1(k)` come from three fibers of order `2^k`; the cyclic
/// blocks in the classes of `-5` and `+5` come from two fibers of orders
/// `2^(k+2)` and `2^k`. At `k = 1` both classes are `1/2` and the `b = 1`
/// form is used.
pub fn realize_generator(g: &GeneratorBlock) -> Result<SeifertPresentation, RealizeError> {
    let k = g.k();
    let n = pow2(k);
    if k > 40 {
        return Err(RealizeError::NotInCatalog(g.to_string()));
    }
    let fibers: Vec<(i64, i64)> = match g.kind() {
        BlockKind::E0 => vec![(n, n - 1), (n, 1), (n, 1)],
        BlockKind::E1 => vec![(n, n - 1); 3],
        BlockKind::A => {
            let minus = GeneratorBlock::a(-5, k)?.n();
            let plus = GeneratorBlock::a(5, k)?.n();
            if g.n() == minus {
                vec![(4 * n, 1), (n, 1)]
            } else if g.n() == plus {
                vec![(4 * n, -1), (n, -1)]
            } else {
                return Err(RealizeError::NotInCatalog(g.to_string()));
            }
        }
    };
    Ok(SeifertPresentation::from_pairs(1, &fibers))
}

/// The two literal families built from several fibers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum SumPattern {
    /// `(2^(2k), 1)`, `s` fibers `(2^k, 1)` and `t` fibers `(2^k, -1)`;
    /// claimed to realize `s` copies of `-5/2^k` and `t` copies of `5/2^k`.
    MixedFive { s: usize, t: usize, k: u32 },
    /// `(2^k, 2^k - 1)` followed by `j` fibers `(2^k, 1)`.
    Hyperbolic { k: u32, j: usize },
}

impl SumPattern {
    pub fn presentation(&self) -> SeifertPresentation {
        realize_sum_patterns(self)
    }

    /// The block sum the family is claimed to realize, where one is stated.
    pub fn claimed_target(&self) -> Option<BlockSum> {
        match *self {
            SumPattern::MixedFive { s, t, k } => {
                let mut blocks = vec![GeneratorBlock::a(-5, k).ok()?; s];
                blocks.extend(vec![GeneratorBlock::a(5, k).ok()?; t]);
                Some(BlockSum::new(blocks))
            }
            SumPattern::Hyperbolic { .. } => None,
        }
    }
}

pub fn realize_sum_patterns(pattern: &SumPattern) -> SeifertPresentation {
    match *pattern {
        SumPattern::MixedFive { s, t, k } => {
            let n = pow2(k);
            let mut fibers = vec![(n * n, 1)];
            fibers.extend(std::iter::repeat_n((n, 1), s));
            fibers.extend(std::iter::repeat_n((n, -1), t));
            SeifertPresentation::from_pairs(1, &fibers)
        }
        SumPattern::Hyperbolic { k, j } => {
            let n = pow2(k);
            let mut fibers = vec![(n, n - 1)];
            fibers.extend(std::iter::repeat_n((n, 1), j));
            SeifertPresentation::from_pairs(1, &fibers)
        }
    }
}

/// Everything computed while checking `P` against a target pairing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub verdict: bool,
    pub presentation: SeifertPresentation,
    /// `Tors_2 H_1` by Smith normal form.
    pub homology: AbelianGroupStructure,
    /// `Tors_2 H_1` by the closed formula, when it applies.
    pub homology_formula: Option<AbelianGroupStructure>,
    pub target_group: AbelianGroupStructure,
    pub homology_ok: bool,
    pub path: PairingPath,
    pub fallback_reason: Option<String>,
    pub pairing: LinkingPairing,
    pub table_presentation: InvariantTable,
    pub table_target: InvariantTable,
}

/// Compares the 2-primary linking pairing of `p` with `target` by invariant
/// tables. The formula route is used when it applies, else the plumbing one.
pub fn verify_realization(
    p: &SeifertPresentation,
    target: &LinkingPairing,
    opts: &GaussOptions,
) -> Result<VerificationReport, RealizeError> {
    verify_realization_with(p, target, opts, false)
}

pub fn verify_realization_with(
    p: &SeifertPresentation,
    target: &LinkingPairing,
    opts: &GaussOptions,
    force_plumbing: bool,
) -> Result<VerificationReport, RealizeError> {
    let h = homology_snf(p)?;
    if !h.is_finite() {
        return Err(SeifertError::NotRationalHomologySphere.into());
    }
    let homology = h.p_primary(2).map_err(SeifertError::from)?;
    let homology_formula = torsion_homology_formula(p, 2).ok();
    let target_group = target.group();
    let homology_ok = homology == target_group && homology_formula.as_ref().is_none_or(|f| *f == homology);
    let lp = linking_pairing(p, 2, force_plumbing)?;
    let table_presentation = invariant_table_with(&lp.pairing, TableMethod::Auto, opts)?;
    let table_target = invariant_table_with(target, TableMethod::Auto, opts)?;
    Ok(VerificationReport {
        verdict: homology_ok && table_presentation == table_target,
        presentation: p.clone(),
        homology,
        homology_formula,
        target_group,
        homology_ok,
        path: lp.path,
        fallback_reason: lp.fallback_reason,
        pairing: lp.pairing,
        table_presentation,
        table_target,
    })
}
