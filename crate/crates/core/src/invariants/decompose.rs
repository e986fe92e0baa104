use serde::Serialize;

use super::table::{
    classify_table, invariant_table_with, table_of_block_sum, table_sum, DifferenceTableSpec, TableMethod,
};
use super::{GaussOptions, InvariantsError};
use crate::algebra::AbelianGroupStructure;
use crate::pairing::{enumerate_candidates, BlockSum, LinkingPairing};

/// Outcome of an orthogonal-summand query `λ ≅ λ' ⊕ μ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SummandVerdict {
    pub is_summand: bool,
    /// `r_2^k(λ) >= r_2^k(λ')` for every `k`.
    pub ranks_ok: bool,
    /// Every blank of `λ` is a blank of `λ'`.
    pub blanks_ok: bool,
    pub spec: Option<DifferenceTableSpec>,
    /// A complement `μ`, when one exists.
    pub witness: Option<BlockSum>,
}

/// Decides whether `small` is an orthogonal summand of `big`.
///
/// After the rank and blank conditions, candidate complements on the group
/// fixed by the rank differences are enumerated in canonical order. A
/// candidate must match the difference spec and its table added to that of
/// `small` must reproduce the table of `big`; the first such candidate is the
/// witness.
pub fn summand_test(
    big: &LinkingPairing,
    small: &LinkingPairing,
    opts: &GaussOptions,
) -> Result<SummandVerdict, InvariantsError> {
    let tb = invariant_table_with(big, TableMethod::Auto, opts)?;
    let ts = invariant_table_with(small, TableMethod::Auto, opts)?;
    let mut verdict = SummandVerdict {
        is_summand: false,
        ranks_ok: false,
        blanks_ok: false,
        spec: None,
        witness: None,
    };
    let Some(spec) = DifferenceTableSpec::new(&tb, &ts) else {
        return Ok(verdict);
    };
    verdict.ranks_ok = true;
    let (cb, cs) = (classify_table(&tb), classify_table(&ts));
    let top = tb.k_max().max(ts.k_max());
    verdict.blanks_ok = (1..=top).all(|k| !cb.is_blank(k) || cs.is_blank(k));
    if verdict.blanks_ok {
        let group = AbelianGroupStructure::from_cyclic_orders(&spec.group_orders());
        verdict.witness = enumerate_candidates(&group).find(|mu| {
            let tm = table_of_block_sum(mu);
            spec.matches(&tm) && table_sum(&ts, &tm) == tb
        });
        verdict.is_summand = verdict.witness.is_some();
    }
    verdict.spec = Some(spec);
    Ok(verdict)
}

/// The least block sum, in canonical order, with the same invariant table as
/// `l`.
pub fn decompose(l: &LinkingPairing, opts: &GaussOptions) -> Result<BlockSum, InvariantsError> {
    let target = invariant_table_with(l, TableMethod::Auto, opts)?;
    enumerate_candidates(&l.group())
        .find(|c| table_of_block_sum(c) == target)
        .ok_or_else(|| InvariantsError::NoCandidate(l.to_string()))
}
