use num_bigint::BigInt;

use super::{leading_exponent_for, stratify, validate_presentation, SeifertError, SeifertPresentation};
use crate::algebra::{torsion_of_cokernel, AbelianGroupStructure, AlgebraError, Cokernel, IntMatrix};

/// The relation matrix of `<s_j, h | a_j s_j + b_j h, sum s_j - e h>` with
/// relations as columns: generators `s_1..s_m` are rows `0..m`, `h` is row `m`.
pub fn presentation_matrix(p: &SeifertPresentation) -> IntMatrix {
    let m = p.m();
    let mut mat = IntMatrix::zeros(m + 1, m + 1);
    for (j, f) in p.fibers.iter().enumerate() {
        mat[(j, j)] = BigInt::from(f.a);
        mat[(m, j)] = BigInt::from(f.b);
        mat[(j, m)] = BigInt::from(1);
    }
    mat[(m, m)] = BigInt::from(-p.e);
    mat
}

/// Full first homology by Smith normal form. Works for any valid fiber list,
/// including presentations with a free summand.
pub fn homology_snf(p: &SeifertPresentation) -> Result<Cokernel, SeifertError> {
    super::check_fibers(p)?;
    Ok(torsion_of_cokernel(&presentation_matrix(p)))
}

/// `Tors_p H1 = Z/p^c + Z/p^ν(a_1) + ... + Z/p^ν(a_(n-2))` over the
/// positive-valuation fibers in ascending order.
pub fn torsion_homology_formula(
    p: &SeifertPresentation,
    q: u64,
) -> Result<AbelianGroupStructure, SeifertError> {
    let checked = validate_presentation(p)?;
    if p.m() < 2 {
        return Err(SeifertError::FormulaInapplicable(
            "the homology formula needs at least two fibers".into(),
        ));
    }
    let inv = &checked.invariants;
    let c = leading_exponent_for(p, &inv.a, &inv.aec, q)?;
    if c < 0 {
        return Err(SeifertError::FormulaInapplicable(format!(
            "leading exponent came out negative ({c})"
        )));
    }
    let pow = |e: u32| {
        q.checked_pow(e)
            .ok_or_else(|| AlgebraError::Overflow(format!("{q}^{e}")))
    };
    let strat = stratify(p, q)?;
    let positive: Vec<u32> = strat
        .ascending()
        .filter(|(t, _)| *t > 0)
        .map(|(t, _)| t)
        .collect();
    let mut orders = vec![pow(c as u32)?];
    if positive.len() > 2 {
        for &t in &positive[..positive.len() - 2] {
            orders.push(pow(t)?);
        }
    }
    Ok(AbelianGroupStructure::from_cyclic_orders(&orders))
}
