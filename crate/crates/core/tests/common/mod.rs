//! Random generator sums and random automorphisms shared by the suites.

#![allow(dead_code)]

use linkform::pairing::{BlockSum, GeneratorBlock, LinkingPairing};
use linkform::seifert::validate_presentation;
use linkform::SeifertPresentation;
use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn random_block<R: Rng>(rng: &mut R, max_k: u32) -> GeneratorBlock {
    let k = rng.gen_range(1..=max_k);
    match rng.gen_range(0..4) {
        0 => GeneratorBlock::e0(k),
        1 => GeneratorBlock::e1(k),
        _ => GeneratorBlock::a(2 * rng.gen_range(0..4) + 1, k).unwrap(),
    }
}

/// A nonempty block sum of total rank at most `max_rank`.
pub fn random_block_sum<R: Rng>(rng: &mut R, max_rank: usize, max_k: u32) -> BlockSum {
    loop {
        let mut blocks = Vec::new();
        let mut rank = 0;
        let target = rng.gen_range(1..=max_rank);
        while rank < target {
            let b = random_block(rng, max_k);
            if rank + b.rank() <= max_rank {
                rank += b.rank();
                blocks.push(b);
            } else if rank > 0 {
                break;
            }
        }
        if !blocks.is_empty() {
            return BlockSum::new(blocks);
        }
    }
}

/// Columns of a random automorphism of the group with cyclic `orders`, and the
/// orders of the new generators. Built from swaps, odd rescalings and
/// `g_i += c g_j` with `o_j <= o_i`, each of which maps a basis to a basis.
pub fn random_automorphism<R: Rng>(rng: &mut R, orders: &[u64]) -> (Vec<u64>, Vec<Vec<i128>>) {
    let n = orders.len();
    let modulus = orders.iter().copied().max().unwrap_or(1) as i128;
    let mut cols: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect();
    let mut ords = orders.to_vec();
    for _ in 0..4 * n {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        match rng.gen_range(0..3) {
            0 => {
                cols.swap(i, j);
                ords.swap(i, j);
            }
            1 => {
                let u = 2 * rng.gen_range(0..modulus) + 1;
                for x in &mut cols[i] {
                    *x = (*x * u).rem_euclid(modulus);
                }
            }
            _ if i != j && ords[j] <= ords[i] => {
                let c = rng.gen_range(1..modulus.max(2));
                let add = cols[j].clone();
                for (x, y) in cols[i].iter_mut().zip(add) {
                    *x = (*x + c * y).rem_euclid(modulus);
                }
            }
            _ => {}
        }
    }
    (ords, cols)
}

/// The same pairing written on a random other basis.
pub fn scramble<R: Rng>(rng: &mut R, l: &LinkingPairing) -> LinkingPairing {
    let (orders, cols) = random_automorphism(rng, l.orders());
    l.change_basis(orders, &cols)
}

/// Scrambled generator sums of rank at most 4 and exponent at most 8.
pub fn corpus<R: Rng>(rng: &mut R, n: usize) -> Vec<(BlockSum, LinkingPairing)> {
    (0..n)
        .map(|_| {
            let b = random_block_sum(rng, 4, 3);
            let l = scramble(rng, &b.pairing());
            (b, l)
        })
        .collect()
}

pub fn shuffled<T: Clone, R: Rng>(rng: &mut R, v: &[T]) -> Vec<T> {
    let mut out = v.to_vec();
    out.shuffle(rng);
    out
}

/// A rational homology sphere with 2 to 5 fibers of orders `2^t * u`,
/// `t` in 1..=4 and odd `u <= 9`.
pub fn random_presentation<R: Rng>(rng: &mut R) -> SeifertPresentation {
    loop {
        let m = rng.gen_range(2..=5);
        let fibers: Vec<(i64, i64)> = (0..m)
            .map(|_| {
                let two = [2i64, 4, 8, 16][rng.gen_range(0..4)];
                let odd = [1i64, 3, 5, 7, 9][rng.gen_range(0..5)];
                let a = two * odd;
                let mut b = rng.gen_range(-a..=a);
                while b.gcd(&a) != 1 {
                    b += 1;
                }
                (a, b)
            })
            .collect();
        let p = SeifertPresentation::from_pairs(rng.gen_range(-3..=3), &fibers);
        if validate_presentation(&p).is_ok() {
            return p;
        }
    }
}

/// A random block sum of rank at most `max_rank`, on a scrambled basis.
pub fn random_scrambled<R: Rng>(rng: &mut R, max_rank: usize, max_k: u32) -> LinkingPairing {
    let b = random_block_sum(rng, max_rank, max_k);
    scramble(rng, &b.pairing())
}
