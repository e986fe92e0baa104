use std::fmt;

use serde::{Deserialize, Serialize};

use super::{realize_generator, realize_sum_patterns, verify_realization, RealizeError, SumPattern, VerificationReport};
use crate::algebra::AbelianGroupStructure;
use crate::invariants::{decompose, invariant_table_with, GaussOptions, InvariantTable, TableMethod};
use crate::pairing::{BlockKind, BlockSum, GeneratorBlock};
use crate::seifert::{linking_pairing, SeifertPresentation};

/// Where a catalog entry comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    /// Three fibers `(2^k, 2^k-1), (2^k, 1), (2^k, 1)`.
    HyperbolicSplit,
    /// Three fibers `(2^k, 2^k-1)`.
    HyperbolicOdd,
    /// `(2^(k+2), ±1), (2^k, ±1)`.
    CyclicPair,
    /// `(2^(2k), 1)` with fibers `(2^k, ±1)`.
    MixedFive,
    /// `(2^k, 2^k-1)` with `j` fibers `(2^k, 1)`; target computed.
    HyperbolicFamily,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("unit variant");
        write!(f, "{}", s.as_str().expect("string tag"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizationEntry {
    pub target: BlockSum,
    pub presentation: SeifertPresentation,
    pub source: Source,
}

/// The shipped catalog: every generator in the catalog for `k = 1..=6`, the
/// three two-summand mixed-five cases for `k = 1..=4`, and the hyperbolic
/// family at `k = 3` for `j = 2, 4, 6, 8` with computed targets.
///
/// Each entry is added only after its target has been confirmed, so the
/// catalog is correct by construction; the test suite checks the shipped JSON
/// against a fresh build.
pub fn catalog(opts: &GaussOptions) -> Result<Vec<RealizationEntry>, RealizeError> {
    let mut out = Vec::new();
    let mut push = |target: BlockSum, presentation: SeifertPresentation, source: Source| -> Result<(), RealizeError> {
        if verify_realization(&presentation, &target.pairing(), opts)?.verdict {
            out.push(RealizationEntry {
                target,
                presentation,
                source,
            });
        }
        Ok(())
    };
    for k in 1..=6 {
        let mut gens = vec![
            (GeneratorBlock::e0(k), Source::HyperbolicSplit),
            (GeneratorBlock::e1(k), Source::HyperbolicOdd),
            (GeneratorBlock::a(-5, k)?, Source::CyclicPair),
        ];
        if k > 1 {
            gens.push((GeneratorBlock::a(5, k)?, Source::CyclicPair));
        }
        for (g, source) in gens {
            push(BlockSum::new(vec![g]), realize_generator(&g)?, source)?;
        }
    }
    for k in 1..=4 {
        for (s, t) in [(2, 0), (0, 2), (1, 1)] {
            let pat = SumPattern::MixedFive { s, t, k };
            push(pat.claimed_target().expect("stated"), realize_sum_patterns(&pat), Source::MixedFive)?;
        }
    }
    for row in hyperbolic_family_report(3, &[2, 4, 6, 8], opts)? {
        push(row.decomposition, row.presentation, Source::HyperbolicFamily)?;
    }
    Ok(out)
}

/// One member of the `(2^k, 2^k-1) + j x (2^k, 1)` family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyRow {
    pub k: u32,
    pub j: usize,
    pub presentation: SeifertPresentation,
    pub group: AbelianGroupStructure,
    pub decomposition: BlockSum,
    pub table: InvariantTable,
    /// Whether the canonical decomposition needs an `E1` block, i.e. whether
    /// the pairing is not a sum of copies of `E0(k)`.
    pub odd_part: bool,
}

pub fn hyperbolic_family_report(
    k: u32,
    js: &[usize],
    opts: &GaussOptions,
) -> Result<Vec<FamilyRow>, RealizeError> {
    js.iter()
        .map(|&j| {
            let presentation = realize_sum_patterns(&SumPattern::Hyperbolic { k, j });
            let pairing = linking_pairing(&presentation, 2, false)?.pairing;
            let decomposition = decompose(&pairing, opts)?;
            Ok(FamilyRow {
                k,
                j,
                group: pairing.group(),
                table: invariant_table_with(&pairing, TableMethod::Auto, opts)?,
                odd_part: decomposition.count(BlockKind::E1, k) % 2 == 1,
                decomposition,
                presentation,
            })
        })
        .collect()
}

/// Verdicts for the three two-summand mixed-five presentations at level `k`.
pub fn mixed_five_cases(k: u32, opts: &GaussOptions) -> Result<Vec<(SumPattern, VerificationReport)>, RealizeError> {
    [(2, 0), (0, 2), (1, 1)]
        .into_iter()
        .map(|(s, t)| {
            let pat = SumPattern::MixedFive { s, t, k };
            let target = pat.claimed_target().expect("stated").pairing();
            Ok((pat, verify_realization(&pat.presentation(), &target, opts)?))
        })
        .collect()
}
