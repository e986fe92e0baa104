use std::collections::BTreeMap;

use super::blocks::{residue_modulus, BlockSum, GeneratorBlock};
use crate::algebra::AbelianGroupStructure;

/// Odd residues mod `2^min(k,3)`: the classes of `A(n,k)`.
pub fn residues_for_level(k: u32) -> Vec<i64> {
    (1..residue_modulus(k)).step_by(2).collect()
}

fn multisets(items: &[i64], size: usize) -> Vec<Vec<i64>> {
    fn go(items: &[i64], size: usize, start: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            go(items, size, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, size, 0, &mut Vec::new(), &mut out);
    out
}

/// All block multisets on one homogeneous layer `(Z/2^k)^r`, sorted.
fn level_candidates(k: u32, r: usize) -> Vec<Vec<GeneratorBlock>> {
    let residues = residues_for_level(k);
    let mut out = Vec::new();
    for a in 0..=r / 2 {
        for b in 0..=(r - 2 * a) / 2 {
            let d = r - 2 * a - 2 * b;
            for diag in multisets(&residues, d) {
                let mut blocks: Vec<GeneratorBlock> = diag
                    .iter()
                    .map(|&n| GeneratorBlock::a(n, k).expect("odd residue"))
                    .collect();
                blocks.extend(std::iter::repeat_n(GeneratorBlock::e0(k), a));
                blocks.extend(std::iter::repeat_n(GeneratorBlock::e1(k), b));
                blocks.sort();
                out.push(blocks);
            }
        }
    }
    out.sort();
    out
}

/// Every generator-block multiset whose underlying group is `g`, in
/// canonical [`BlockSum`] order. `g` must be a 2-group.
///
/// Per layer `(Z/2^k)^r` this runs over `a` copies of `E0(k)`, `b` copies of
/// `E1(k)` and a multiset of `r - 2a - 2b` diagonal blocks. `E1(1)` is kept
/// as a separate multiset even though its matrix equals `E0(1)`.
pub fn enumerate_candidates(g: &AbelianGroupStructure) -> impl Iterator<Item = BlockSum> {
    assert!(g.is_p_group(2), "candidate enumeration needs a 2-group");
    let mut layers: BTreeMap<u32, usize> = BTreeMap::new();
    for &o in g.orders() {
        *layers.entry(o.trailing_zeros()).or_default() += 1;
    }
    let lists: Vec<Vec<Vec<GeneratorBlock>>> = layers
        .iter()
        .map(|(&k, &r)| level_candidates(k, r))
        .collect();
    CandidateIter {
        idx: vec![0; lists.len()],
        lists,
        done: false,
    }
}

/// Odometer over per-layer lists; the lowest layer varies slowest, which with
/// sorted per-layer lists yields globally sorted output.
struct CandidateIter {
    lists: Vec<Vec<Vec<GeneratorBlock>>>,
    idx: Vec<usize>,
    done: bool,
}

impl Iterator for CandidateIter {
    type Item = BlockSum;

    fn next(&mut self) -> Option<BlockSum> {
        if self.done {
            return None;
        }
        let blocks: Vec<GeneratorBlock> = self
            .idx
            .iter()
            .zip(&self.lists)
            .flat_map(|(&i, l)| l[i].iter().copied())
            .collect();
        let mut pos = self.lists.len();
        loop {
            if pos == 0 {
                self.done = true;
                break;
            }
            pos -= 1;
            self.idx[pos] += 1;
            if self.idx[pos] < self.lists[pos].len() {
                break;
            }
            self.idx[pos] = 0;
        }
        Some(BlockSum::new(blocks))
    }
}
