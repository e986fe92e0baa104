//! 2-adic congruence reduction of a pairing into generator blocks.

use super::blocks::{BlockSum, GeneratorBlock};
use super::{validate_pairing, LinkingPairing, PairingError};
use crate::algebra::mod_inverse_u64;

/// Result of [`block_diagonalize`]: the blocks and the new generators that
/// realize them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagonalization {
    pub blocks: BlockSum,
    /// New generators as integer vectors over the input generators, in the
    /// order of `blocks` (one column per cyclic factor).
    pub basis: Vec<Vec<i128>>,
}

impl Diagonalization {
    /// `U^T Λ U` equals the block-diagonal matrix exactly in `Q/Z`.
    pub fn verify(&self, l: &LinkingPairing) -> bool {
        let moved = l.change_basis(self.blocks.orders(), &self.basis);
        moved == self.blocks.pairing()
    }
}

struct Reducer {
    n: Vec<Vec<i128>>,
    den: i128,
    gens: Vec<Vec<i128>>,
    exps: Vec<u32>,
}

fn modp(x: i128, m: i128) -> i128 {
    x.rem_euclid(m)
}

fn inv(x: i128, m: i128) -> i128 {
    mod_inverse_u64(x, m as u64).expect("odd element of Z/2^S") as i128
}

impl Reducer {
    /// `λ(u, v)` as a numerator over `den`.
    fn lam(&self, u: &[i128], v: &[i128]) -> i128 {
        let mut acc = 0;
        for (i, &ui) in u.iter().enumerate() {
            if ui == 0 {
                continue;
            }
            let mut row = 0;
            for (j, &vj) in v.iter().enumerate() {
                row = (row + vj * self.n[i][j]) % self.den;
            }
            acc = (acc + ui * row) % self.den;
        }
        modp(acc, self.den)
    }

    /// `2^s λ(g_a, g_b)` as an integer mod `2^s`.
    fn top(&self, a: usize, b: usize, s: u32) -> i128 {
        let r = self.lam(&self.gens[a], &self.gens[b]);
        let shift = self.den >> s;
        debug_assert_eq!(r % shift, 0, "entry denominator exceeds 2^{s}");
        r / shift
    }

    fn combine(&self, terms: &[(i128, usize)]) -> Vec<i128> {
        let len = self.gens[0].len();
        let mut out = vec![0; len];
        for &(c, g) in terms {
            for (o, &x) in out.iter_mut().zip(&self.gens[g]) {
                *o = modp(*o + c * x, self.den);
            }
        }
        out
    }

    fn subtract(&mut self, h: usize, terms: &[(i128, usize)]) {
        let neg: Vec<(i128, usize)> = terms.iter().map(|&(c, g)| (-c, g)).collect();
        let mut all = vec![(1, h)];
        all.extend(neg);
        self.gens[h] = self.combine(&all);
    }
}

/// Hensel lift of a root of `g` modulo `2^bits`, given that `g` has odd
/// derivative and even value at the starting point `0` or `1`.
fn lift_root(bits: u32, g: impl Fn(i128) -> i128) -> i128 {
    let m = 1i128 << bits;
    let mut x = if modp(g(0), 2) == 0 { 0 } else { 1 };
    debug_assert_eq!(modp(g(x), 2), 0);
    for i in 1..bits {
        if (modp(g(x), m) >> i) & 1 == 1 {
            x += 1 << i;
        }
    }
    debug_assert_eq!(modp(g(x), m), 0);
    x
}

/// Splits a valid pairing on a 2-group into generator blocks by congruence.
///
/// Works layer by layer from the largest order `2^S`: a unit on the diagonal
/// splits off a rank-1 block, otherwise an odd off-diagonal entry splits off
/// a rank-2 block (`E0` when `ac` is even for `[[2a, b], [b, 2c]]`, else
/// `E1`); the rest is made orthogonal to it. The returned blocks are not a
/// canonical form; see `invariants::decompose` for that.
pub fn block_diagonalize(l: &LinkingPairing) -> Result<Diagonalization, PairingError> {
    if l.prime() != 2 {
        return Err(PairingError::NotTwoGroup(l.prime()));
    }
    validate_pairing(l)?;
    let dim = l.dim();
    if dim == 0 {
        return Ok(Diagonalization {
            blocks: BlockSum::empty(),
            basis: Vec::new(),
        });
    }
    let den = l.exponent();
    let mut r = Reducer {
        n: l
            .numerators_over(den)
            .into_iter()
            .map(|row| row.into_iter().map(|x| x as i128).collect())
            .collect(),
        den: den as i128,
        gens: (0..dim)
            .map(|i| (0..dim).map(|j| i128::from(i == j)).collect())
            .collect(),
        exps: l.orders().iter().map(|o| o.trailing_zeros()).collect(),
    };
    let mut remaining: Vec<usize> = (0..dim).collect();
    let mut found: Vec<(GeneratorBlock, Vec<Vec<i128>>)> = Vec::new();

    while !remaining.is_empty() {
        let s = remaining.iter().map(|&i| r.exps[i]).max().expect("nonempty");
        let m = 1i128 << s;
        let layer: Vec<usize> = remaining.iter().copied().filter(|&i| r.exps[i] == s).collect();

        if let Some(&i) = layer.iter().find(|&&i| r.top(i, i, s) % 2 == 1) {
            let u = r.top(i, i, s);
            let u_inv = inv(u, m);
            for &h in remaining.iter().filter(|&&h| h != i) {
                let alpha = modp(r.top(h, i, s) * u_inv, m);
                r.subtract(h, &[(alpha, i)]);
            }
            remaining.retain(|&h| h != i);
            let n = u % (1 << s.min(3));
            // w^2 = n/u mod 2^S; n/u is 1 mod 8, so w exists
            let v = modp(n * u_inv, m);
            let mut w: i128 = 1;
            for bit in 3..s {
                if (modp(w * w - v, m) >> bit) & 1 == 1 {
                    w += 1 << (bit - 1);
                }
            }
            let g = r.combine(&[(w, i)]);
            debug_assert_eq!(modp(r.lam(&g, &g) / (r.den >> s), m), n);
            let block = GeneratorBlock::a(n as i64, s).expect("odd residue");
            found.push((block, vec![g]));
            continue;
        }

        let pair = layer
            .iter()
            .enumerate()
            .flat_map(|(x, &i)| layer[x + 1..].iter().map(move |&j| (i, j)))
            .find(|&(i, j)| r.top(i, j, s) % 2 == 1);
        let Some((i, j)) = pair else {
            return Err(PairingError::Degenerate);
        };
        let (nii, nij, njj) = (r.top(i, i, s), r.top(i, j, s), r.top(j, j, s));
        let det = modp(nii * njj - nij * nij, m);
        let det_inv = inv(det, m);
        let inv_b = [
            [modp(njj * det_inv, m), modp(-nij * det_inv, m)],
            [modp(-nij * det_inv, m), modp(nii * det_inv, m)],
        ];
        for &h in remaining.iter().filter(|&&h| h != i && h != j) {
            let (mi, mj) = (r.top(h, i, s), r.top(h, j, s));
            let a = modp(mi * inv_b[0][0] + mj * inv_b[1][0], m);
            let b = modp(mi * inv_b[0][1] + mj * inv_b[1][1], m);
            r.subtract(h, &[(a, i), (b, j)]);
        }
        remaining.retain(|&h| h != i && h != j);

        if s == 1 {
            // E1(1) and E0(1) coincide as matrices over Z/2
            let cols = vec![r.gens[i].clone(), r.gens[j].clone()];
            found.push((GeneratorBlock::e0(1), cols));
            continue;
        }
        let half = 1i128 << (s - 1);
        let (a2, c2) = (nii / 2, njj / 2);
        let is_e1 = (a2 * c2) % 2 == 1;
        let t_half = i128::from(is_e1);
        let hq = |x: i128, y: i128| modp(a2 * x * x + nij * x * y + c2 * y * y, half);
        let bil = |u: (i128, i128), v: (i128, i128)| {
            modp(u.0 * (nii * v.0 + nij * v.1) + u.1 * (nij * v.0 + njj * v.1), m)
        };

        let y = lift_root(s - 1, |y| hq(1, y) - t_half);
        let e = (1, y);
        let alpha = bil(e, (1, 0));
        let beta = bil(e, (0, 1));
        let f0 = (0, inv(beta, m));
        let v = (beta, -alpha);
        let z = lift_root(s - 1, |z| hq(f0.0 + z * v.0, f0.1 + z * v.1) - t_half);
        let f = (modp(f0.0 + z * v.0, m), modp(f0.1 + z * v.1, m));
        debug_assert_eq!(bil(e, f), 1);

        let ge = r.combine(&[(e.0, i), (e.1, j)]);
        let gf = r.combine(&[(f.0, i), (f.1, j)]);
        let block = if is_e1 {
            GeneratorBlock::e1(s)
        } else {
            GeneratorBlock::e0(s)
        };
        found.push((block, vec![ge, gf]));
    }

    found.sort_by_key(|a| a.0);
    let blocks = BlockSum::new(found.iter().map(|(b, _)| *b).collect());
    let basis = found.into_iter().flat_map(|(_, cols)| cols).collect();
    let d = Diagonalization { blocks, basis };
    debug_assert!(d.verify(l));
    Ok(d)
}
