//! Linking pairings on finite abelian `p`-groups.
//!
//! A pairing is stored on declared cyclic generators `g_1, ..., g_n` of orders
//! `p^(e_i)` as the symmetric matrix `λ(g_i, g_j)` in `Q/Z`. The 2-group
//! catalog (`A(n,k)`, `E0(k)`, `E1(k)`), congruence reduction into that catalog
//! and candidate enumeration live in the submodules.

mod blocks;
mod enumerate;
mod reduce;

pub use blocks::{generator, BlockKind, BlockSum, GeneratorBlock};
pub use enumerate::{enumerate_candidates, residues_for_level};
pub use reduce::{block_diagonalize, Diagonalization};

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{
    factor_u64, smith_normal_form, AbelianGroupStructure, AlgebraError, IntMatrix, QZElement,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PairingError {
    #[error("matrix is not symmetric at ({0}, {1})")]
    Asymmetric(usize, usize),
    #[error("entry ({i}, {j}) = {entry} does not fit generator orders {oi} and {oj}")]
    DenominatorMismatch {
        i: usize,
        j: usize,
        entry: QZElement,
        oi: u64,
        oj: u64,
    },
    #[error("pairing is degenerate")]
    Degenerate,
    #[error("bad shape: {0}")]
    Shape(String),
    #[error("generator order {order} is not a power of {prime} greater than 1")]
    BadOrder { order: u64, prime: u64 },
    #[error("pairings over different primes: {0} and {1}")]
    PrimeMismatch(u64, u64),
    #[error("invalid generator: {0}")]
    InvalidGenerator(String),
    #[error("operation needs a pairing on a 2-group, got prime {0}")]
    NotTwoGroup(u64),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A bilinear form `G x G -> Q/Z` on declared generators of a `p`-group.
///
/// Construction only checks shapes and orders; [`validate_pairing`] checks
/// symmetry, well-definedness and nondegeneracy.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinkingPairing {
    prime: u64,
    orders: Vec<u64>,
    matrix: Vec<Vec<QZElement>>,
}

impl LinkingPairing {
    pub fn new(
        prime: u64,
        orders: Vec<u64>,
        matrix: Vec<Vec<QZElement>>,
    ) -> Result<Self, PairingError> {
        if !crate::algebra::is_prime(prime) {
            return Err(AlgebraError::NotPrime(prime).into());
        }
        for &o in &orders {
            if !is_power_of(o, prime) {
                return Err(PairingError::BadOrder { order: o, prime });
            }
        }
        if matrix.len() != orders.len() || matrix.iter().any(|r| r.len() != orders.len()) {
            return Err(PairingError::Shape(format!(
                "{} generators need a {0}x{0} matrix",
                orders.len()
            )));
        }
        for x in matrix.iter().flatten() {
            if let Some(q) = x.prime() {
                if q != prime {
                    return Err(PairingError::PrimeMismatch(prime, q));
                }
            }
        }
        Ok(LinkingPairing {
            prime,
            orders,
            matrix,
        })
    }

    /// Builds from integer numerators over a common denominator `den`.
    pub fn from_numerators(
        prime: u64,
        orders: Vec<u64>,
        numerators: &[Vec<i128>],
        den: u64,
    ) -> Result<Self, PairingError> {
        let matrix = numerators
            .iter()
            .map(|row| row.iter().map(|&n| QZElement::new(n, den)).collect())
            .collect::<Result<Vec<Vec<_>>, _>>()?;
        Self::new(prime, orders, matrix)
    }

    pub fn trivial(prime: u64) -> Self {
        LinkingPairing {
            prime,
            orders: Vec::new(),
            matrix: Vec::new(),
        }
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn matrix(&self) -> &[Vec<QZElement>] {
        &self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> QZElement {
        self.matrix[i][j]
    }

    pub fn dim(&self) -> usize {
        self.orders.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn group(&self) -> AbelianGroupStructure {
        AbelianGroupStructure::from_cyclic_orders(&self.orders)
    }

    /// Largest generator order (1 for the trivial pairing).
    pub fn exponent(&self) -> u64 {
        self.orders.iter().copied().max().unwrap_or(1)
    }

    /// Smallest `m` with every entry in `p^(-m) Z / Z`.
    pub fn denominator_exponent(&self) -> u32 {
        self.matrix
            .iter()
            .flatten()
            .map(|x| log_p(x.den(), self.prime))
            .max()
            .unwrap_or(0)
    }

    /// Entries as integers modulo `den`, which must be a multiple of every
    /// entry's denominator.
    pub fn numerators_over(&self, den: u64) -> Vec<Vec<u64>> {
        self.matrix
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| x.numerator_over(den).expect("denominator divides den"))
                    .collect()
            })
            .collect()
    }

    pub fn neg(&self) -> Self {
        LinkingPairing {
            prime: self.prime,
            orders: self.orders.clone(),
            matrix: self
                .matrix
                .iter()
                .map(|r| r.iter().map(|&x| -x).collect())
                .collect(),
        }
    }

    /// The form on new generators `u_a = sum_i cols[a][i] g_i` with the given
    /// orders. The caller is responsible for the new family being a basis.
    pub fn change_basis(&self, new_orders: Vec<u64>, cols: &[Vec<i128>]) -> Self {
        let den = self.exponent().max(self.max_entry_den());
        let n = self.numerators_over(den);
        let d = den as i128;
        let value = |u: &[i128], v: &[i128]| -> i128 {
            let mut acc = 0i128;
            for (i, &ui) in u.iter().enumerate() {
                if ui == 0 {
                    continue;
                }
                let mut row = 0i128;
                for (j, &vj) in v.iter().enumerate() {
                    row = (row + vj.rem_euclid(d) * n[i][j] as i128) % d;
                }
                acc = (acc + ui.rem_euclid(d) * row) % d;
            }
            acc
        };
        let matrix = cols
            .iter()
            .map(|u| {
                cols.iter()
                    .map(|v| QZElement::new(value(u, v), den).expect("den is a prime power"))
                    .collect()
            })
            .collect();
        LinkingPairing {
            prime: self.prime,
            orders: new_orders,
            matrix,
        }
    }

    fn max_entry_den(&self) -> u64 {
        self.matrix.iter().flatten().map(|x| x.den()).max().unwrap_or(1)
    }

    /// Rows of `n/d` strings, each entry written over `gcd(o_i, o_j)`.
    pub fn display_rows(&self) -> Vec<Vec<String>> {
        (0..self.dim())
            .map(|i| {
                (0..self.dim())
                    .map(|j| {
                        let g = self.orders[i].min(self.orders[j]);
                        self.matrix[i][j].display_over(g)
                    })
                    .collect()
            })
            .collect()
    }
}

fn is_power_of(n: u64, p: u64) -> bool {
    if n < p {
        return false;
    }
    let mut n = n;
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

fn log_p(mut n: u64, p: u64) -> u32 {
    let mut e = 0;
    while n > 1 {
        n /= p;
        e += 1;
    }
    e
}

impl fmt::Display for LinkingPairing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "(trivial pairing)");
        }
        let rows = self.display_rows();
        let width = rows.iter().flatten().map(String::len).max().unwrap_or(1);
        let orders: Vec<String> = self.orders.iter().map(|o| format!("Z/{o}")).collect();
        writeln!(f, "on {}", orders.join(" + "))?;
        for row in rows {
            let cells: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "[ {} ]", cells.join("  "))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct PairingJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    prime: Option<u64>,
    orders: Vec<u64>,
    matrix: Vec<Vec<String>>,
}

impl Serialize for LinkingPairing {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PairingJson {
            prime: (self.prime != 2).then_some(self.prime),
            orders: self.orders.clone(),
            matrix: self.display_rows(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LinkingPairing {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = PairingJson::deserialize(d)?;
        let prime = match raw.prime {
            Some(p) => p,
            None => raw
                .orders
                .first()
                .and_then(|&o| factor_u64(o).first().map(|&(p, _)| p))
                .unwrap_or(2),
        };
        let matrix = raw
            .matrix
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| s.parse::<QZElement>().map_err(D::Error::custom))
                    .collect()
            })
            .collect::<Result<Vec<Vec<_>>, _>>()?;
        LinkingPairing::new(prime, raw.orders, matrix).map_err(D::Error::custom)
    }
}

/// Block-diagonal sum over the same prime.
pub fn direct_sum(a: &LinkingPairing, b: &LinkingPairing) -> Result<LinkingPairing, PairingError> {
    if a.is_trivial() {
        return Ok(b.clone());
    }
    if b.is_trivial() {
        return Ok(a.clone());
    }
    if a.prime != b.prime {
        return Err(PairingError::PrimeMismatch(a.prime, b.prime));
    }
    let n = a.dim() + b.dim();
    let mut matrix = vec![vec![QZElement::ZERO; n]; n];
    for i in 0..a.dim() {
        matrix[i][..a.dim()].copy_from_slice(&a.matrix[i]);
    }
    for i in 0..b.dim() {
        matrix[a.dim() + i][a.dim()..].copy_from_slice(&b.matrix[i]);
    }
    let mut orders = a.orders.clone();
    orders.extend_from_slice(&b.orders);
    Ok(LinkingPairing {
        prime: a.prime,
        orders,
        matrix,
    })
}

/// Checks symmetry, that `λ(g_i, g_j)` is killed by both `o_i` and `o_j`, and
/// that `x -> λ(x, -)` is injective.
///
/// Injectivity is tested as surjectivity of the integer map into
/// `⊕ Z/o_j` (the groups have equal order): the columns of
/// `[M | diag(o)]` with `M_ji = o_j λ(g_i, g_j)` must span `Z^n`.
pub fn validate_pairing(l: &LinkingPairing) -> Result<(), PairingError> {
    let n = l.dim();
    for i in 0..n {
        for j in 0..i {
            if l.matrix[i][j] != l.matrix[j][i] {
                return Err(PairingError::Asymmetric(i, j));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            let g = l.orders[i].min(l.orders[j]);
            if !g.is_multiple_of(l.matrix[i][j].den()) {
                return Err(PairingError::DenominatorMismatch {
                    i,
                    j,
                    entry: l.matrix[i][j],
                    oi: l.orders[i],
                    oj: l.orders[j],
                });
            }
        }
    }
    if n == 0 {
        return Ok(());
    }
    let mut m = IntMatrix::zeros(n, 2 * n);
    for j in 0..n {
        for i in 0..n {
            let x = l.matrix[i][j];
            m[(j, i)] = BigInt::from(x.numerator_over(l.orders[j]).expect("checked above"));
        }
        m[(j, n + j)] = BigInt::from(l.orders[j]);
    }
    let sf = smith_normal_form(&m);
    let f = sf.invariant_factors();
    if f.len() == n && f.iter().all(|d| *d == BigInt::from(1)) {
        Ok(())
    } else {
        Err(PairingError::Degenerate)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i128, d: u64) -> QZElement {
        QZElement::new(n, d).unwrap()
    }

    #[test]
    fn validation_cases() {
        let e0 = generator(&GeneratorBlock::e0(3)).unwrap();
        assert!(validate_pairing(&e0).is_ok());
        let zero = LinkingPairing::new(2, vec![2], vec![vec![QZElement::ZERO]]).unwrap();
        assert_eq!(validate_pairing(&zero), Err(PairingError::Degenerate));
        let big = LinkingPairing::new(2, vec![8], vec![vec![q(1, 16)]]).unwrap();
        assert!(matches!(
            validate_pairing(&big),
            Err(PairingError::DenominatorMismatch { .. })
        ));
        let asym = LinkingPairing::new(
            2,
            vec![4, 4],
            vec![vec![q(1, 4), q(1, 4)], vec![q(3, 4), q(1, 4)]],
        )
        .unwrap();
        assert_eq!(validate_pairing(&asym), Err(PairingError::Asymmetric(1, 0)));
    }

    #[test]
    fn degenerate_off_diagonal_only() {
        // (1/2) [[0,1],[1,0]] on Z/4 + Z/4 kills 2 g_1
        let l = LinkingPairing::new(
            2,
            vec![4, 4],
            vec![vec![QZElement::ZERO, q(1, 2)], vec![q(1, 2), QZElement::ZERO]],
        )
        .unwrap();
        assert_eq!(validate_pairing(&l), Err(PairingError::Degenerate));
    }

    #[test]
    fn sums_and_json() {
        let a = generator(&GeneratorBlock::a(1, 1).unwrap()).unwrap();
        let s = direct_sum(&a, &a).unwrap();
        assert_eq!(s.orders(), &[2, 2]);
        assert_eq!(s.entry(0, 1), QZElement::ZERO);
        assert_eq!(direct_sum(&a, &LinkingPairing::trivial(2)).unwrap(), a);

        let e0 = generator(&GeneratorBlock::e0(3)).unwrap();
        let js = serde_json::to_string(&e0).unwrap();
        assert_eq!(js, r#"{"orders":[8,8],"matrix":[["0/8","1/8"],["1/8","0/8"]]}"#);
        let back: LinkingPairing = serde_json::from_str(&js).unwrap();
        assert_eq!(back, e0);
    }

    #[test]
    fn change_basis_swaps() {
        let e1 = generator(&GeneratorBlock::e1(2)).unwrap();
        let swapped = e1.change_basis(vec![4, 4], &[vec![0, 1], vec![1, 0]]);
        assert_eq!(swapped, e1);
        let l = e1.change_basis(vec![4, 4], &[vec![1, 0], vec![1, 1]]);
        // λ(g1+g2, g1+g2) = (2+1+1+2)/4 = 6/4
        assert_eq!(l.entry(1, 1), q(6, 4));
        assert!(validate_pairing(&l).is_ok());
    }
}
