use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{check_fibers, SeifertError, SeifertPresentation};
use crate::algebra::{p_valuation, smith_normal_form, IntMatrix, QZElement};
use crate::pairing::LinkingPairing;

/// Sign `ε` in `λ(u, v) = ε u^T Q^{-1} v`, calibrated once against the
/// closed formula on the `E0`, `E1` and `(±5/2^k)` catalog.
pub const PLUMBING_SIGN: i64 = 1;

/// `a/b = x_1 - 1/(x_2 - 1/(...))` with every `x_j >= 2`; needs `a > b > 0`.
pub fn negative_continued_fraction(a: i64, b: i64) -> Vec<i64> {
    assert!(a > b && b > 0, "need a > b > 0, got {a}/{b}");
    let (mut a, mut b) = (a, b);
    let mut xs = Vec::new();
    while b != 0 {
        let x = Integer::div_ceil(&a, &b);
        xs.push(x);
        (a, b) = (b, x * b - a);
    }
    xs
}

/// Intersection matrix of the star-shaped plumbing.
///
/// Each fiber is normalized to `b' = b - q a` with `0 < b' < a`; the arm carries
/// weights `-x_j` from the continued fraction of `a/b'` and the shifts `q` are
/// absorbed into the central weight `e + sum q`. Vertex 0 is the center; arms
/// follow in fiber order, each listed from the vertex adjacent to the center.
pub fn plumbing_matrix(p: &SeifertPresentation) -> Result<IntMatrix, SeifertError> {
    check_fibers(p)?;
    let mut center = p.e;
    let mut arms = Vec::with_capacity(p.m());
    for f in &p.fibers {
        let q = Integer::div_floor(&f.b, &f.a);
        center += q;
        arms.push(negative_continued_fraction(f.a, f.b - q * f.a));
    }
    let n = 1 + arms.iter().map(Vec::len).sum::<usize>();
    let mut m = IntMatrix::zeros(n, n);
    m[(0, 0)] = BigInt::from(center);
    let mut idx = 1;
    for arm in arms {
        let mut prev = 0;
        for x in arm {
            m[(idx, idx)] = BigInt::from(-x);
            m[(idx, prev)] = BigInt::from(1);
            m[(prev, idx)] = BigInt::from(1);
            prev = idx;
            idx += 1;
        }
    }
    Ok(m)
}

/// The `q`-primary linking pairing `ε u^T Q^{-1} v` on the torsion of
/// `coker Q`.
///
/// With `D = U Q V`, the classes `g_i = U^{-1} e_i` generate the cokernel with
/// orders `d_i`, and `λ(g_i, g_j) = ε (U^{-T} V)_ij / d_j`. The `q`-part uses
/// `w_i g_i` where `w_i` is the prime-to-`q` cofactor of `d_i`.
pub fn linking_from_plumbing(qm: &IntMatrix, q: u64) -> Result<LinkingPairing, SeifertError> {
    if !qm.is_square() || !qm.is_symmetric() {
        return Err(crate::algebra::AlgebraError::Shape("plumbing matrix must be symmetric".into()).into());
    }
    if qm.determinant()?.is_zero() {
        return Err(SeifertError::NotRationalHomologySphere);
    }
    let sf = smith_normal_form(qm);
    let w = &sf.u_inv.transpose() * &sf.v;
    let mut gens = Vec::new();
    for i in 0..qm.rows() {
        let d = sf.d[(i, i)].abs();
        let v = p_valuation(&d, q)?.finite().expect("d is nonzero");
        if v == 0 {
            continue;
        }
        let qv = BigInt::from(q).pow(v);
        let cof = &d / &qv;
        gens.push((i, d, qv, cof));
    }
    let mut orders = Vec::with_capacity(gens.len());
    for (_, _, qv, _) in &gens {
        orders.push(qv.to_u64().ok_or_else(|| crate::algebra::AlgebraError::Overflow(qv.to_string()))?);
    }
    let matrix = gens
        .iter()
        .map(|(i, _, _, wi)| {
            gens.iter()
                .map(|(j, dj, _, wj)| {
                    let num = wi * wj * &w[(*i, *j)] * PLUMBING_SIGN;
                    QZElement::from_bigint(&num, dj)
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(LinkingPairing::new(q, orders, matrix)?)
}
