//! Exact Gauss sums over finite abelian 2-groups.

use std::thread;

use super::{GaussOptions, InvariantsError};
use crate::algebra::CyclotomicSum;
use crate::pairing::LinkingPairing;

/// `q(x) = sum_ij n_ij x_i x_j / 2^m` on `prod Z/o_i`, with `o_i n_ij = 0 mod
/// 2^m` so that `q` is well defined.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticFunction {
    m: u32,
    orders: Vec<u64>,
    n: Vec<Vec<u64>>,
}

impl QuadraticFunction {
    pub fn new(m: u32, orders: Vec<u64>, n: Vec<Vec<u64>>) -> Result<Self, InvariantsError> {
        if !(1..=40).contains(&m) {
            return Err(InvariantsError::Input(format!("phase exponent {m} out of range")));
        }
        let mask = (1u64 << m) - 1;
        let dim = orders.len();
        if n.len() != dim || n.iter().any(|r| r.len() != dim) {
            return Err(InvariantsError::Input("coefficient matrix shape".into()));
        }
        for i in 0..dim {
            for j in 0..dim {
                if n[i][j] != n[j][i] {
                    return Err(InvariantsError::Input("coefficients must be symmetric".into()));
                }
                if n[i][j].wrapping_mul(orders[i]) & mask != 0 {
                    return Err(InvariantsError::Input(format!(
                        "coefficient ({i},{j}) is not killed by the order {}",
                        orders[i]
                    )));
                }
            }
        }
        let n = n
            .into_iter()
            .map(|r| r.into_iter().map(|x| x & mask).collect())
            .collect();
        Ok(QuadraticFunction { m, orders, n })
    }

    /// `q_λ(x) = λ(x, x)`.
    pub fn from_pairing(l: &LinkingPairing) -> Result<Self, InvariantsError> {
        if l.prime() != 2 {
            return Err(InvariantsError::NotTwoGroup(l.prime()));
        }
        let m = l.denominator_exponent().max(1);
        Self::new(m, l.orders().to_vec(), l.numerators_over(1 << m))
    }

    pub fn phase_exponent(&self) -> u32 {
        self.m
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    /// Number of group elements, if it fits in 64 bits.
    pub fn group_order(&self) -> Option<u64> {
        self.orders.iter().try_fold(1u64, |acc, &o| acc.checked_mul(o))
    }

    fn phase_of(&self, x: &[u64]) -> (u64, Vec<u64>) {
        let mask = (1u64 << self.m) - 1;
        let w: Vec<u64> = self
            .n
            .iter()
            .map(|row| {
                row.iter()
                    .zip(x)
                    .fold(0u64, |acc, (&c, &xi)| acc.wrapping_add(c.wrapping_mul(xi)))
                    & mask
            })
            .collect();
        let phase = w
            .iter()
            .zip(x)
            .fold(0u64, |acc, (&wi, &xi)| acc.wrapping_add(wi.wrapping_mul(xi)))
            & mask;
        (phase, w)
    }

    /// Counts of `2^m q(x)` over the index range `[start, start + len)` in
    /// mixed radix (first coordinate fastest).
    fn count_range(&self, start: u64, len: u64) -> Vec<u64> {
        let mask = (1u64 << self.m) - 1;
        let dim = self.orders.len();
        let mut counts = vec![0u64; 1 << self.m];
        let mut x = vec![0u64; dim];
        let mut rest = start;
        for (xi, &o) in x.iter_mut().zip(&self.orders) {
            *xi = rest % o;
            rest /= o;
        }
        let (mut phase, mut w) = self.phase_of(&x);
        // column-major copy so the update below walks contiguous memory
        let cols: Vec<Vec<u64>> = (0..dim).map(|i| (0..dim).map(|j| self.n[j][i]).collect()).collect();
        for step in 0..len {
            counts[phase as usize] += 1;
            if step + 1 == len {
                break;
            }
            // adding e_i changes q by 2 w_i + n_ii; wrapping x_i back to 0
            // changes nothing modulo 2^m because o_i kills column i
            let mut i = 0;
            loop {
                phase = phase.wrapping_add(2u64.wrapping_mul(w[i])).wrapping_add(cols[i][i]) & mask;
                for (wj, &c) in w.iter_mut().zip(&cols[i]) {
                    *wj = wj.wrapping_add(c) & mask;
                }
                x[i] += 1;
                if x[i] < self.orders[i] {
                    break;
                }
                x[i] = 0;
                i += 1;
            }
        }
        counts
    }

    /// Histogram of `2^m q(x)` over the whole group, enumerated by
    /// `opts.workers` threads over disjoint index ranges.
    pub fn phase_counts(&self, opts: &GaussOptions) -> Result<Vec<u64>, InvariantsError> {
        let total = self
            .group_order()
            .filter(|&t| t <= opts.max_elements)
            .ok_or_else(|| InvariantsError::ResourceBound {
                orders: self.orders.clone(),
                cap: opts.max_elements,
            })?;
        let workers = (opts.workers.max(1) as u64).min(total.div_ceil(1 << 16)).max(1);
        if workers == 1 {
            return Ok(self.count_range(0, total));
        }
        let chunk = total.div_ceil(workers);
        let parts: Vec<Vec<u64>> = thread::scope(|s| {
            let handles: Vec<_> = (0..workers)
                .map(|t| {
                    let start = t * chunk;
                    let len = chunk.min(total.saturating_sub(start));
                    s.spawn(move || {
                        if len == 0 {
                            vec![0; 1 << self.m]
                        } else {
                            self.count_range(start, len)
                        }
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
        });
        let mut counts = vec![0u64; 1 << self.m];
        for p in parts {
            for (c, x) in counts.iter_mut().zip(p) {
                *c += x;
            }
        }
        Ok(counts)
    }
}

/// An unnormalized Gauss sum together with `|G|`; the normalized value is
/// `sum / sqrt(|G|)`, whose argument is that of `sum`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussSum {
    pub sum: CyclotomicSum,
    pub group_order: u64,
}

/// `sum_x exp(2 pi i 2^(k-1) q(x))` from a phase histogram of `q`.
pub fn scaled_sum(counts: &[u64], m: u32, k: u32) -> CyclotomicSum {
    let mask = (1u64 << m) - 1;
    let mut scaled = vec![0u64; 1 << m];
    for (ph, &c) in counts.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let idx = if k > m { 0 } else { ((ph as u64) << (k - 1)) & mask };
        scaled[idx as usize] += c;
    }
    CyclotomicSum::from_phase_counts(m, &scaled)
}

/// `Γ(G, q)` up to the positive factor `|G|^(-1/2)`.
pub fn gauss_sum(q: &QuadraticFunction, opts: &GaussOptions) -> Result<GaussSum, InvariantsError> {
    let counts = q.phase_counts(opts)?;
    Ok(GaussSum {
        sum: scaled_sum(&counts, q.m, 1),
        group_order: counts.iter().sum(),
    })
}

/// `τ^k(λ) = Γ(G, 2^(k-1) q_λ)`, unnormalized.
pub fn tau(l: &LinkingPairing, k: u32, opts: &GaussOptions) -> Result<GaussSum, InvariantsError> {
    assert!(k >= 1);
    let q = QuadraticFunction::from_pairing(l)?;
    let counts = q.phase_counts(opts)?;
    Ok(GaussSum {
        sum: scaled_sum(&counts, q.m, k),
        group_order: counts.iter().sum(),
    })
}
