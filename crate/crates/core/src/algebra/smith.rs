use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// `d = u * m * v` with `d` diagonal, `d_1 | d_2 | ...`, nonnegative, and
/// `u`, `v` unimodular. `u_inv` is kept alongside `u` so callers can lift
/// cokernel generators without inverting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries, in divisibility order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .filter(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

struct Reducer {
    d: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.d.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.d.swap_cols(i, j);
        self.v.swap_cols(i, j);
    }

    fn add_row(&mut self, src: usize, dst: usize, f: &BigInt) {
        self.d.add_row(src, dst, f);
        self.u.add_row(src, dst, f);
        self.u_inv.add_col(dst, src, &-f);
    }

    fn add_col(&mut self, src: usize, dst: usize, f: &BigInt) {
        self.d.add_col(src, dst, f);
        self.v.add_col(src, dst, f);
    }

    fn negate_row(&mut self, i: usize) {
        self.d.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    /// Eliminates row and column `t` around the pivot at `(t, t)`.
    fn clear_cross(&mut self, t: usize) {
        let (rows, cols) = (self.d.rows(), self.d.cols());
        loop {
            // smallest nonzero in the cross becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                let x = &self.d[(i, t)];
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < self.d[(bi, bj)].abs()) {
                    best = Some((i, t));
                }
            }
            for j in t + 1..cols {
                let x = &self.d[(t, j)];
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < self.d[(bi, bj)].abs()) {
                    best = Some((t, j));
                }
            }
            let Some((bi, bj)) = best else { return };
            self.swap_rows(t, bi);
            self.swap_cols(t, bj);
            let pivot = self.d[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if self.d[(i, t)].is_zero() {
                    continue;
                }
                let q = self.d[(i, t)].div_floor(&pivot);
                self.add_row(t, i, &-q);
                clean &= self.d[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if self.d[(t, j)].is_zero() {
                    continue;
                }
                let q = self.d[(t, j)].div_floor(&pivot);
                self.add_col(t, j, &-q);
                clean &= self.d[(t, j)].is_zero();
            }
            if clean {
                return;
            }
        }
    }

    fn diagonalize(&mut self) -> usize {
        let (rows, cols) = (self.d.rows(), self.d.cols());
        let mut t = 0;
        while t < rows.min(cols) {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = &self.d[(i, j)];
                    if x.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| x.abs() < self.d[(bi, bj)].abs()) {
                        best = Some((i, j));
                        if x.abs().is_one() {
                            break;
                        }
                    }
                }
                if best.is_some_and(|(bi, bj)| self.d[(bi, bj)].abs().is_one()) {
                    break;
                }
            }
            let Some((bi, bj)) = best else { break };
            self.swap_rows(t, bi);
            self.swap_cols(t, bj);
            self.clear_cross(t);
            if self.d[(t, t)].is_negative() {
                self.negate_row(t);
            }
            t += 1;
        }
        t
    }

    /// Replaces `diag(a, b)` at positions `(i, j)` with `diag(gcd, lcm)`.
    fn gcd_lcm(&mut self, i: usize, j: usize) {
        let a = self.d[(i, i)].clone();
        let b = self.d[(j, j)].clone();
        if b.is_zero() || (&b % &a).is_zero() {
            return;
        }
        let ext = a.extended_gcd(&b);
        let (g, s, t) = (ext.gcd, ext.x, ext.y);
        let ag = &a / &g;
        let bg = &b / &g;
        let one = BigInt::one();
        let (neg_bg, neg_t) = (-&bg, -&t);
        self.d.mix_rows(i, j, [&s, &t, &neg_bg, &ag]);
        self.u.mix_rows(i, j, [&s, &t, &neg_bg, &ag]);
        self.u_inv.mix_cols(i, j, [&ag, &neg_t, &bg, &s]);
        let f01 = -(&t * &bg);
        let f11 = &s * &ag;
        self.d.mix_cols(i, j, [&one, &f01, &one, &f11]);
        self.v.mix_cols(i, j, [&one, &f01, &one, &f11]);
    }
}

/// Smith normal form of an integer matrix together with both transforms.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut r = Reducer {
        d: m.clone(),
        u: IntMatrix::identity(m.rows()),
        u_inv: IntMatrix::identity(m.rows()),
        v: IntMatrix::identity(m.cols()),
    };
    let rank = r.diagonalize();
    for i in 0..rank {
        for j in i + 1..rank {
            r.gcd_lcm(i, j);
        }
    }
    SmithForm {
        d: r.d,
        u: r.u,
        u_inv: r.u_inv,
        v: r.v,
    }
}
