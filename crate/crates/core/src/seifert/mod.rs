//! Seifert presentations `(O,o,0 | e; (a_1,b_1), ..., (a_m,b_m))`.
//!
//! Two independent routes to the linking pairing are provided: the closed
//! block formula over the `p`-valuation stratification ([`linking_matrix`])
//! and the inverse of the star-shaped plumbing matrix
//! ([`linking_from_plumbing`]). Homology likewise has a closed formula and a
//! Smith normal form path.

mod homology;
mod linking;
mod plumbing;

pub use homology::{homology_snf, presentation_matrix, torsion_homology_formula};
pub use linking::{
    linking_matrix, linking_matrix_with, linking_pairing, CDefinition, PairingPath, PairingWithPath,
};
pub use plumbing::{
    linking_from_plumbing, negative_continued_fraction, plumbing_matrix, PLUMBING_SIGN,
};

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{factor_u64, p_valuation, AlgebraError, ExtNat};
use crate::pairing::PairingError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeifertError {
    #[error("fiber {index} ({a},{b}): {reason}")]
    InvalidFiber {
        index: usize,
        a: i64,
        b: i64,
        reason: String,
    },
    #[error("presentation has no fibers")]
    NoFibers,
    #[error("not a rational homology sphere: Ae + C = 0, so H1 has a free summand")]
    NotRationalHomologySphere,
    #[error("closed formula does not apply: {0}")]
    FormulaInapplicable(String),
    #[error("formula output is not a pairing on the expected group: {0}")]
    DegenerateOutput(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Pairing(#[from] PairingError),
}

/// One exceptional fiber `(a, b)` with `gcd(a, b) = 1`, `a >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "(i64, i64)", into = "(i64, i64)")]
pub struct Fiber {
    pub a: i64,
    pub b: i64,
}

impl Fiber {
    pub fn new(a: i64, b: i64) -> Self {
        Fiber { a, b }
    }
}

impl From<(i64, i64)> for Fiber {
    fn from((a, b): (i64, i64)) -> Self {
        Fiber { a, b }
    }
}

impl From<Fiber> for (i64, i64) {
    fn from(f: Fiber) -> Self {
        (f.a, f.b)
    }
}

/// Euler number and fibers; the text form is `e; a1/b1, a2/b2, ...`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeifertPresentation {
    pub e: i64,
    pub fibers: Vec<Fiber>,
}

impl SeifertPresentation {
    pub fn new(e: i64, fibers: Vec<Fiber>) -> Self {
        SeifertPresentation { e, fibers }
    }

    pub fn from_pairs(e: i64, pairs: &[(i64, i64)]) -> Self {
        Self::new(e, pairs.iter().map(|&p| p.into()).collect())
    }

    pub fn m(&self) -> usize {
        self.fibers.len()
    }

    /// Fibers sorted by `a` descending, then `b` descending.
    pub fn sorted(&self) -> Self {
        let mut fibers = self.fibers.clone();
        fibers.sort_by_key(|f| std::cmp::Reverse((f.a, f.b)));
        Self::new(self.e, fibers)
    }
}

impl std::str::FromStr for SeifertPresentation {
    type Err = crate::parse::ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        crate::parse::parse_presentation(s)
    }
}

/// `A = prod a_i`, `A_j = A / a_j`, `C = sum b_i A_i`, and `Ae + C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarInvariants {
    pub a: BigInt,
    pub a_j: Vec<BigInt>,
    pub c: BigInt,
    pub aec: BigInt,
    /// Exponent of the leading cyclic factor of `Tors_p H1` for each prime
    /// dividing `A`; empty when there are fewer than two fibers.
    pub leading_exponent: BTreeMap<u64, i64>,
}

impl ScalarInvariants {
    pub fn is_rational_homology_sphere(&self) -> bool {
        !self.aec.is_zero()
    }
}

/// Fiber-level checks: at least one fiber, `a >= 2`, `gcd(a, b) = 1`.
pub fn check_fibers(p: &SeifertPresentation) -> Result<(), SeifertError> {
    if p.fibers.is_empty() {
        return Err(SeifertError::NoFibers);
    }
    for (index, f) in p.fibers.iter().enumerate() {
        let bad = |reason: &str| SeifertError::InvalidFiber {
            index,
            a: f.a,
            b: f.b,
            reason: reason.into(),
        };
        if f.a < 2 {
            return Err(bad("a must be at least 2"));
        }
        if f.a.gcd(&f.b) != 1 {
            return Err(bad("a and b are not coprime"));
        }
    }
    Ok(())
}

pub fn scalar_invariants(p: &SeifertPresentation) -> Result<ScalarInvariants, SeifertError> {
    check_fibers(p)?;
    let a: BigInt = p.fibers.iter().map(|f| BigInt::from(f.a)).product();
    let a_j: Vec<BigInt> = p.fibers.iter().map(|f| &a / f.a).collect();
    let c: BigInt = p
        .fibers
        .iter()
        .zip(&a_j)
        .map(|(f, aj)| aj * f.b)
        .sum();
    let aec = &a * p.e + &c;
    let mut leading_exponent = BTreeMap::new();
    if p.m() >= 2 && !aec.is_zero() {
        let mut primes: Vec<u64> = p
            .fibers
            .iter()
            .flat_map(|f| factor_u64(f.a as u64).into_iter().map(|(q, _)| q))
            .collect();
        primes.sort_unstable();
        primes.dedup();
        for q in primes {
            leading_exponent.insert(q, leading_exponent_for(p, &a, &aec, q)?);
        }
    }
    Ok(ScalarInvariants {
        a,
        a_j,
        c,
        aec,
        leading_exponent,
    })
}

/// `c = ν(Ae+C) - ν(A) + ν(a_(m-1)) + ν(a_m)` over the ascending reordering.
pub(crate) fn leading_exponent_for(
    p: &SeifertPresentation,
    a: &BigInt,
    aec: &BigInt,
    q: u64,
) -> Result<i64, SeifertError> {
    let fin = |x: ExtNat| -> i64 { x.finite().expect("nonzero") as i64 };
    let mut vals: Vec<i64> = p
        .fibers
        .iter()
        .map(|f| p_valuation(&BigInt::from(f.a), q).map(fin))
        .collect::<Result<_, _>>()?;
    vals.sort_unstable();
    let m = vals.len();
    Ok(fin(p_valuation(aec, q)?) - fin(p_valuation(a, q)?) + vals[m - 1] + vals[m - 2])
}

/// Validated presentation together with its scalar invariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckedPresentation {
    pub presentation: SeifertPresentation,
    pub invariants: ScalarInvariants,
}

/// Fiber checks plus the rational homology sphere condition `Ae + C != 0`.
pub fn validate_presentation(p: &SeifertPresentation) -> Result<CheckedPresentation, SeifertError> {
    let invariants = scalar_invariants(p)?;
    if !invariants.is_rational_homology_sphere() {
        return Err(SeifertError::NotRationalHomologySphere);
    }
    Ok(CheckedPresentation {
        presentation: p.clone(),
        invariants,
    })
}

/// A fiber tagged with its position in the input.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StratifiedFiber {
    pub fiber: Fiber,
    pub index: usize,
}

/// Fibers grouped by `p`-valuation of `a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stratification {
    pub p: u64,
    /// Largest valuation `s`.
    pub s: u32,
    /// `levels[t]` holds the fibers with valuation exactly `t`, in input order.
    pub levels: Vec<Vec<StratifiedFiber>>,
    /// Number of fibers with positive valuation.
    pub n: usize,
}

impl Stratification {
    pub fn r(&self, t: u32) -> usize {
        self.levels.get(t as usize).map_or(0, Vec::len)
    }

    /// All fibers ascending by valuation (stable within a level).
    pub fn ascending(&self) -> impl Iterator<Item = (u32, &StratifiedFiber)> {
        self.levels
            .iter()
            .enumerate()
            .flat_map(|(t, l)| l.iter().map(move |f| (t as u32, f)))
    }

    /// Input positions in ascending-valuation order.
    pub fn index_map(&self) -> Vec<usize> {
        self.ascending().map(|(_, f)| f.index).collect()
    }

    /// The distinguished fiber `(a_(s,1), b_(s,1))`.
    pub fn top_fiber(&self) -> Option<&StratifiedFiber> {
        if self.s == 0 {
            return None;
        }
        self.levels[self.s as usize].first()
    }
}

pub fn stratify(p: &SeifertPresentation, q: u64) -> Result<Stratification, SeifertError> {
    check_fibers(p)?;
    let vals: Vec<u32> = p
        .fibers
        .iter()
        .map(|f| {
            p_valuation(&BigInt::from(f.a), q).map(|v| v.finite().expect("a >= 2"))
        })
        .collect::<Result<_, _>>()?;
    let s = vals.iter().copied().max().unwrap_or(0);
    let mut levels = vec![Vec::new(); s as usize + 1];
    for (index, (&v, &fiber)) in vals.iter().zip(&p.fibers).enumerate() {
        levels[v as usize].push(StratifiedFiber { fiber, index });
    }
    Ok(Stratification {
        p: q,
        s,
        n: vals.iter().filter(|&&v| v > 0).count(),
        levels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(e: i64, f: &[(i64, i64)]) -> SeifertPresentation {
        SeifertPresentation::from_pairs(e, f)
    }

    #[test]
    fn scalar_invariants_of_three_fibers() {
        let c = validate_presentation(&pres(1, &[(8, 7), (8, 1), (8, 1)])).unwrap();
        assert_eq!(c.invariants.a, BigInt::from(512));
        assert_eq!(c.invariants.c, BigInt::from(576));
        assert_eq!(c.invariants.aec, BigInt::from(1088));
        assert_eq!(c.invariants.leading_exponent[&2], 3);
    }

    #[test]
    fn validation_errors() {
        assert_eq!(
            validate_presentation(&pres(0, &[(2, 1), (2, -1)])),
            Err(SeifertError::NotRationalHomologySphere)
        );
        assert!(matches!(
            validate_presentation(&pres(1, &[(4, 2)])),
            Err(SeifertError::InvalidFiber { index: 0, .. })
        ));
        assert!(matches!(
            validate_presentation(&pres(1, &[(1, 1)])),
            Err(SeifertError::InvalidFiber { .. })
        ));
        assert_eq!(validate_presentation(&pres(1, &[])), Err(SeifertError::NoFibers));
    }

    #[test]
    fn stratification_examples() {
        let s = stratify(&pres(1, &[(8, 7), (8, 1), (8, 1)]), 2).unwrap();
        assert_eq!((s.s, s.r(3), s.n), (3, 3, 3));

        let s = stratify(&pres(1, &[(12, 1), (8, 1), (3, 1)]), 2).unwrap();
        assert_eq!(s.s, 3);
        assert_eq!(s.levels[3][0].fiber.a, 8);
        assert_eq!(s.levels[2][0].fiber.a, 12);
        assert_eq!(s.levels[0][0].fiber.a, 3);
        assert_eq!(s.n, 2);
        assert_eq!(s.index_map(), vec![2, 0, 1]);

        let s = stratify(&pres(1, &[(32, 1), (8, 1)]), 2).unwrap();
        assert_eq!((s.s, s.r(5), s.r(3), s.n), (5, 1, 1, 2));
        assert_eq!(s.top_fiber().unwrap().fiber.a, 32);
    }

    #[test]
    fn json_form() {
        let p = pres(1, &[(8, 7), (8, 1)]);
        let js = serde_json::to_string(&p).unwrap();
        assert_eq!(js, r#"{"e":1,"fibers":[[8,7],[8,1]]}"#);
        assert_eq!(serde_json::from_str::<SeifertPresentation>(&js).unwrap(), p);
    }
}
