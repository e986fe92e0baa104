use num_bigint::BigInt;
use serde::Serialize;

use super::{
    linking_from_plumbing, plumbing_matrix, stratify, torsion_homology_formula,
    validate_presentation, SeifertError, SeifertPresentation,
};
use crate::algebra::{mod_inverse, AbelianGroupStructure, AlgebraError, QZElement};
use crate::pairing::{validate_pairing, LinkingPairing, PairingError};

/// How `c_(t,i)` is derived from `b_(t,i)` in the block formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CDefinition {
    /// `c = -b^{-1} mod p^(2s+2)`.
    #[default]
    Inverse,
    /// `c = -b`; agrees with `Inverse` whenever `b^2 = 1` to the needed power.
    Negation,
}

/// The linking matrix `Λ^p` from the closed block formula.
///
/// Generators come from the fibers of levels `1..=s`, except the first fiber
/// of level `s`, which supplies `K = a_(s,1) c_(s,1)`. Entry `(i, j)` is
/// `(K + δ_ij a_i c_i) / p^(t_i + t_j)`, the value of the pairing on the classes
/// `u_i w_i - p^(s - t_i) u_s w_top`, where `w` are the arm-end classes and `u`
/// the prime-to-`p` parts of the fiber orders. Each generator's order is the
/// largest denominator in its row. When those orders do not give the group of
/// the homology formula, or the form is degenerate, the generators do not
/// span `Tors_p` and `DegenerateOutput` is returned.
pub fn linking_matrix(p: &SeifertPresentation, q: u64) -> Result<LinkingPairing, SeifertError> {
    linking_matrix_with(p, q, CDefinition::Inverse)
}

pub fn linking_matrix_with(
    p: &SeifertPresentation,
    q: u64,
    cdef: CDefinition,
) -> Result<LinkingPairing, SeifertError> {
    validate_presentation(p)?;
    if p.m() < 2 {
        return Err(SeifertError::FormulaInapplicable(
            "the block formula needs at least two fibers".into(),
        ));
    }
    let group = torsion_homology_formula(p, q)?;
    let strat = stratify(p, q)?;
    let Some(top) = strat.top_fiber() else {
        if group.is_trivial() {
            return Ok(LinkingPairing::trivial(q));
        }
        return Err(SeifertError::FormulaInapplicable(format!(
            "no fiber order is divisible by {q}"
        )));
    };
    let s = strat.s;
    let modulus = BigInt::from(q).pow(2 * s + 2);
    let c_of = |b: i64| -> Result<BigInt, AlgebraError> {
        match cdef {
            CDefinition::Inverse => {
                let inv = mod_inverse(&BigInt::from(b), &modulus)?;
                Ok((&modulus - inv) % &modulus)
            }
            CDefinition::Negation => Ok(BigInt::from(-b)),
        }
    };
    let k_const = BigInt::from(top.fiber.a) * c_of(top.fiber.b)?;

    let mut gens: Vec<(u32, BigInt)> = Vec::new();
    for t in 1..=s {
        let level = &strat.levels[t as usize];
        let skip = usize::from(t == s);
        for f in &level[skip..] {
            gens.push((t, BigInt::from(f.fiber.a) * c_of(f.fiber.b)?));
        }
    }
    if gens.len() != group.orders().len() {
        return Err(SeifertError::DegenerateOutput(format!(
            "{} generators for the group {group}",
            gens.len()
        )));
    }
    if group.is_trivial() {
        return Ok(LinkingPairing::trivial(q));
    }

    let qb = BigInt::from(q);
    let matrix = gens
        .iter()
        .enumerate()
        .map(|(i, (ti, xi))| {
            gens.iter()
                .enumerate()
                .map(|(j, (tj, _))| {
                    let num = if i == j { &k_const + xi } else { k_const.clone() };
                    QZElement::from_bigint(&num, &qb.pow(ti + tj))
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    // the order of each generator is read off its row; if these orders
    // multiply to |Tors_p| and the form is nondegenerate, the generators
    // span Tors_p and the matrix is the whole pairing
    let orders: Vec<u64> = matrix
        .iter()
        .map(|row| row.iter().map(|x| x.den()).max().unwrap_or(1))
        .collect();
    let mut sorted = orders.clone();
    sorted.sort_unstable();
    if AbelianGroupStructure::from_cyclic_orders(&sorted) != group {
        return Err(SeifertError::DegenerateOutput(format!(
            "generator orders {orders:?} do not match {group}"
        )));
    }

    let pairing = LinkingPairing::new(q, orders, matrix)?;
    match validate_pairing(&pairing) {
        Ok(()) => Ok(pairing),
        Err(PairingError::Degenerate) => Err(SeifertError::DegenerateOutput(
            "assembled matrix is degenerate".into(),
        )),
        Err(PairingError::DenominatorMismatch { i, j, entry, .. }) => Err(
            SeifertError::DegenerateOutput(format!("entry ({i},{j}) = {entry} exceeds the generator orders")),
        ),
        Err(e) => Err(e.into()),
    }
}

/// Which route produced a pairing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PairingPath {
    Formula,
    Plumbing,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingWithPath {
    pub pairing: LinkingPairing,
    pub path: PairingPath,
    /// Why the formula was not used, when it was not.
    pub fallback_reason: Option<String>,
}

/// The `q`-primary linking pairing: the block formula when it applies,
/// otherwise (or when `force_plumbing`) the plumbing route. The reason for a
/// fallback is reported, never hidden.
pub fn linking_pairing(
    p: &SeifertPresentation,
    q: u64,
    force_plumbing: bool,
) -> Result<PairingWithPath, SeifertError> {
    validate_presentation(p)?;
    let fallback_reason = if force_plumbing {
        Some("plumbing path requested".to_string())
    } else {
        match linking_matrix(p, q) {
            Ok(pairing) => {
                return Ok(PairingWithPath {
                    pairing,
                    path: PairingPath::Formula,
                    fallback_reason: None,
                })
            }
            Err(e @ (SeifertError::FormulaInapplicable(_) | SeifertError::DegenerateOutput(_))) => {
                Some(e.to_string())
            }
            Err(e) => return Err(e),
        }
    };
    let pairing = linking_from_plumbing(&plumbing_matrix(p)?, q)?;
    Ok(PairingWithPath {
        pairing,
        path: PairingPath::Plumbing,
        fallback_reason,
    })
}
