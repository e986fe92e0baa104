use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{direct_sum, LinkingPairing, PairingError};
use crate::algebra::QZElement;

/// Kind order `A < E0 < E1` is part of the canonical block order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BlockKind {
    A,
    E0,
    E1,
}

/// One generator of the monoid of 2-group pairings.
///
/// `A(n,k)` is `(n/2^k)` on `Z/2^k` with `n` odd, stored as its class mod
/// `2^min(k,3)` (squares of units are 1 mod 8, so this is the isomorphism
/// class). `E0(k)` and `E1(k)` live on `(Z/2^k)^2`. Field order gives the
/// canonical sort `(k, kind, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorBlock {
    k: u32,
    kind: BlockKind,
    n: u8,
}

/// Residue modulus for `A(n,k)`.
pub(crate) fn residue_modulus(k: u32) -> i64 {
    1 << k.min(3)
}

impl GeneratorBlock {
    pub fn a(n: i64, k: u32) -> Result<Self, PairingError> {
        if k == 0 {
            return Err(PairingError::InvalidGenerator("k must be positive".into()));
        }
        if n % 2 == 0 {
            return Err(PairingError::InvalidGenerator(format!(
                "A({n},{k}) needs an odd numerator"
            )));
        }
        Ok(GeneratorBlock {
            k,
            kind: BlockKind::A,
            n: n.rem_euclid(residue_modulus(k)) as u8,
        })
    }

    pub fn e0(k: u32) -> Self {
        assert!(k > 0);
        GeneratorBlock {
            k,
            kind: BlockKind::E0,
            n: 0,
        }
    }

    pub fn e1(k: u32) -> Self {
        assert!(k > 0);
        GeneratorBlock {
            k,
            kind: BlockKind::E1,
            n: 0,
        }
    }

    pub fn kind(&self) -> BlockKind {
        self.kind
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Canonical odd residue for `A` blocks, 0 otherwise.
    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn rank(&self) -> usize {
        match self.kind {
            BlockKind::A => 1,
            _ => 2,
        }
    }

    pub fn order(&self) -> u64 {
        1 << self.k
    }
}

impl fmt::Display for GeneratorBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            BlockKind::A => write!(f, "A({},{})", self.n, self.k),
            BlockKind::E0 => write!(f, "E0({})", self.k),
            BlockKind::E1 => write!(f, "E1({})", self.k),
        }
    }
}

/// Explicit matrix of a generator block.
pub fn generator(g: &GeneratorBlock) -> Result<LinkingPairing, PairingError> {
    let d = g.order();
    let z = |n: i128| QZElement::new(n, d).expect("power of two");
    match g.kind {
        BlockKind::A => {
            if g.n.is_multiple_of(2) {
                return Err(PairingError::InvalidGenerator(g.to_string()));
            }
            LinkingPairing::new(2, vec![d], vec![vec![z(g.n as i128)]])
        }
        BlockKind::E0 => LinkingPairing::new(2, vec![d, d], vec![vec![z(0), z(1)], vec![z(1), z(0)]]),
        BlockKind::E1 => LinkingPairing::new(2, vec![d, d], vec![vec![z(2), z(1)], vec![z(1), z(2)]]),
    }
}

/// A multiset of generator blocks, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BlockSum {
    blocks: Vec<GeneratorBlock>,
}

impl BlockSum {
    pub fn new(mut blocks: Vec<GeneratorBlock>) -> Self {
        blocks.sort();
        BlockSum { blocks }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn blocks(&self) -> &[GeneratorBlock] {
        &self.blocks
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn orders(&self) -> Vec<u64> {
        self.blocks
            .iter()
            .flat_map(|b| std::iter::repeat_n(b.order(), b.rank()))
            .collect()
    }

    pub fn count(&self, kind: BlockKind, k: u32) -> usize {
        self.blocks.iter().filter(|b| b.kind == kind && b.k == k).count()
    }

    pub fn has_diagonal_block(&self) -> bool {
        self.blocks.iter().any(|b| b.kind == BlockKind::A)
    }

    /// Block-diagonal pairing in canonical block order.
    pub fn pairing(&self) -> LinkingPairing {
        self.blocks.iter().fold(LinkingPairing::trivial(2), |acc, b| {
            direct_sum(&acc, &generator(b).expect("stored blocks are valid"))
                .expect("all blocks are 2-primary")
        })
    }

    pub fn concat(&self, other: &BlockSum) -> BlockSum {
        let mut v = self.blocks.clone();
        v.extend_from_slice(&other.blocks);
        BlockSum::new(v)
    }
}

impl fmt::Display for BlockSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.blocks.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join("+"))
    }
}

impl FromStr for GeneratorBlock {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        crate::parse::parse_block(s).map_err(|e| e.to_string())
    }
}

impl FromStr for BlockSum {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        crate::parse::parse_block_sum(s).map_err(|e| e.to_string())
    }
}

impl Serialize for BlockSum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for BlockSum {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Serialize for GeneratorBlock {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GeneratorBlock {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
