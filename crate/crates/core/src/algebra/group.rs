use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::smith::smith_normal_form;
use super::valuation::{factor_u64, p_valuation};
use super::{AlgebraError, IntMatrix};

/// A finite abelian group as a sorted multiset of prime-power cyclic orders.
/// The trivial group is the empty multiset.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AbelianGroupStructure {
    cyclic_orders: Vec<u64>,
}

impl AbelianGroupStructure {
    pub fn trivial() -> Self {
        Self::default()
    }

    /// Canonicalizes arbitrary cyclic orders: splits into prime powers, drops
    /// trivial factors and sorts ascending.
    pub fn from_cyclic_orders(orders: &[u64]) -> Self {
        let mut out = Vec::new();
        for &n in orders {
            for (p, e) in factor_u64(n) {
                out.push(p.pow(e));
            }
        }
        out.sort_unstable();
        AbelianGroupStructure { cyclic_orders: out }
    }

    pub fn orders(&self) -> &[u64] {
        &self.cyclic_orders
    }

    pub fn is_trivial(&self) -> bool {
        self.cyclic_orders.is_empty()
    }

    pub fn order(&self) -> BigInt {
        self.cyclic_orders.iter().map(|&o| BigInt::from(o)).product()
    }

    /// Largest cyclic order (1 for the trivial group).
    pub fn exponent(&self) -> u64 {
        self.cyclic_orders.last().copied().unwrap_or(1)
    }

    pub fn p_part(&self, p: u64) -> Self {
        AbelianGroupStructure {
            cyclic_orders: self
                .cyclic_orders
                .iter()
                .copied()
                .filter(|o| o % p == 0)
                .collect(),
        }
    }

    pub fn is_p_group(&self, p: u64) -> bool {
        self.p_part(p) == *self
    }

    /// Number of cyclic factors of order exactly `q`.
    pub fn rank_of_order(&self, q: u64) -> usize {
        self.cyclic_orders.iter().filter(|&&o| o == q).count()
    }
}

impl fmt::Display for AbelianGroupStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cyclic_orders.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.cyclic_orders.iter().map(|o| format!("Z/{o}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Cokernel of an integer matrix whose columns are relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cokernel {
    /// Invariant factors greater than one, in divisibility order.
    pub invariant_factors: Vec<BigInt>,
    pub free_rank: usize,
}

impl Cokernel {
    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn torsion_order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    /// The full torsion subgroup; fails when an invariant factor exceeds 64 bits.
    pub fn torsion(&self) -> Result<AbelianGroupStructure, AlgebraError> {
        let orders = self
            .invariant_factors
            .iter()
            .map(|d| d.to_u64().ok_or_else(|| AlgebraError::Overflow(d.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(AbelianGroupStructure::from_cyclic_orders(&orders))
    }

    /// The `p`-primary torsion; works for invariant factors of any size.
    pub fn p_primary(&self, p: u64) -> Result<AbelianGroupStructure, AlgebraError> {
        let mut orders = Vec::new();
        for d in &self.invariant_factors {
            let e = p_valuation(d, p)?
                .finite()
                .expect("invariant factors are nonzero");
            if e > 0 {
                let q = p
                    .checked_pow(e)
                    .ok_or_else(|| AlgebraError::Overflow(format!("{p}^{e}")))?;
                orders.push(q);
            }
        }
        orders.sort_unstable();
        Ok(AbelianGroupStructure {
            cyclic_orders: orders,
        })
    }
}

/// `Z^rows / (column span of m)`.
pub fn torsion_of_cokernel(m: &IntMatrix) -> Cokernel {
    let sf = smith_normal_form(m);
    let factors = sf.invariant_factors();
    let free_rank = m.rows() - factors.len();
    Cokernel {
        invariant_factors: factors.into_iter().filter(|d| !d.is_one() && !d.is_zero()).collect(),
        free_rank,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_has_trivial_cokernel() {
        let c = torsion_of_cokernel(&IntMatrix::identity(3));
        assert!(c.torsion().unwrap().is_trivial());
        assert_eq!(c.free_rank, 0);
    }

    #[test]
    fn small_cokernels() {
        let m = IntMatrix::from_rows(&[vec![2, 1], vec![1, 2]]).unwrap();
        let c = torsion_of_cokernel(&m);
        assert_eq!(c.torsion().unwrap().orders(), &[3]);
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 0]]).unwrap();
        let c = torsion_of_cokernel(&m);
        assert_eq!(c.free_rank, 1);
        assert_eq!(c.torsion().unwrap().orders(), &[2]);
    }

    #[test]
    fn seifert_presentation_cokernel() {
        let m = IntMatrix::from_rows(&[
            vec![8, 0, 0, 1],
            vec![0, 8, 0, 1],
            vec![0, 0, 8, 1],
            vec![7, 1, 1, -1],
        ])
        .unwrap();
        let c = torsion_of_cokernel(&m);
        assert_eq!(c.torsion().unwrap().orders(), &[8, 8, 17]);
        assert_eq!(c.p_primary(2).unwrap().orders(), &[8, 8]);
        assert!(c.p_primary(3).unwrap().is_trivial());
    }

    #[test]
    fn canonical_form() {
        let g = AbelianGroupStructure::from_cyclic_orders(&[12, 1, 8]);
        assert_eq!(g.orders(), &[3, 4, 8]);
        assert_eq!(g.p_part(2).orders(), &[4, 8]);
        assert_eq!(g.to_string(), "Z/3 + Z/4 + Z/8");
        assert_eq!(g.order(), BigInt::from(96));
    }
}
