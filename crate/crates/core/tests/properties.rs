//! Structural properties of the invariants, checked on random pairings.

mod common;

use linkform::invariants::{
    decompose, invariant_table_with, sigma_r, summand_test, table_sum, tau, GaussOptions, InvariantTable,
    TableMethod,
};
use linkform::pairing::{block_diagonalize, direct_sum, BlockKind, BlockSum, GeneratorBlock, LinkingPairing};
use linkform::seifert::{linking_pairing, validate_presentation};
use linkform::{CyclotomicSum, SeifertPresentation, Sigma};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn opts() -> GaussOptions {
    GaussOptions::default().with_workers(1)
}

fn direct(l: &LinkingPairing) -> InvariantTable {
    invariant_table_with(l, TableMethod::Direct, &opts()).unwrap()
}

fn same_value(a: &CyclotomicSum, b: &CyclotomicSum) -> bool {
    let m = a.order_exponent().max(b.order_exponent());
    a.lift(m) == b.lift(m)
}

fn block() -> impl Strategy<Value = GeneratorBlock> {
    (1u32..=3, 0u8..4, 0i64..4).prop_map(|(k, kind, n)| match kind {
        0 => GeneratorBlock::e0(k),
        1 => GeneratorBlock::e1(k),
        _ => GeneratorBlock::a(2 * n + 1, k).unwrap(),
    })
}

/// Block sums of rank at most two, so that sums of two stay within `(Z/8)^4`.
fn small_sum() -> impl Strategy<Value = BlockSum> {
    prop_oneof![
        block().prop_map(|b| BlockSum::new(vec![b])),
        (block(), block()).prop_map(|(a, b)| {
            if a.rank() + b.rank() <= 2 {
                BlockSum::new(vec![a, b])
            } else {
                BlockSum::new(vec![a])
            }
        }),
    ]
}

/// A block sum written on a scrambled basis.
fn scrambled() -> impl Strategy<Value = (BlockSum, LinkingPairing)> {
    (small_sum(), any::<u64>()).prop_map(|(b, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let l = common::scramble(&mut rng, &b.pairing());
        (b, l)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn tau_is_multiplicative((_, l) in scrambled(), (_, m) in scrambled(), k in 1u32..=4) {
        let s = direct_sum(&l, &m).unwrap();
        let o = opts();
        let prod = tau(&l, k, &o).unwrap().sum.mul(&tau(&m, k, &o).unwrap().sum);
        prop_assert!(same_value(&tau(&s, k, &o).unwrap().sum, &prod));
    }

    #[test]
    fn tables_are_additive((_, l) in scrambled(), (_, m) in scrambled()) {
        let s = direct_sum(&l, &m).unwrap();
        prop_assert_eq!(direct(&s), table_sum(&direct(&l), &direct(&m)));
    }

    #[test]
    fn negation_conjugates((_, l) in scrambled(), k in 1u32..=4) {
        let o = opts();
        let t = tau(&l, k, &o).unwrap().sum;
        let tn = tau(&l.neg(), k, &o).unwrap().sum;
        prop_assert!(same_value(&tn, &t.conj()));
        let (a, b) = (direct(&l), direct(&l.neg()));
        for k in 1..=a.k_max() {
            prop_assert_eq!(b.sigma(k), -a.sigma(k));
        }
    }

    #[test]
    fn tables_vanish_above_the_exponent((_, l) in scrambled(), extra in 1u32..=3) {
        let s = l.exponent().trailing_zeros();
        prop_assert_eq!(sigma_r(&l, s + extra, &opts()).unwrap(), (0, Sigma::new(0)));
    }

    #[test]
    fn decompose_is_isomorphic((b, l) in scrambled()) {
        let d = decompose(&l, &opts()).unwrap();
        prop_assert_eq!(direct(&d.pairing()), direct(&l));
        prop_assert_eq!(direct(&b.pairing()), direct(&l));
    }

    #[test]
    fn diagonal_blocks_force_vanishing_tau((_, l) in scrambled()) {
        let d = decompose(&l, &opts()).unwrap();
        for g in d.blocks().iter().filter(|g| g.kind() == BlockKind::A) {
            prop_assert!(tau(&l, g.k(), &opts()).unwrap().sum.is_zero(), "{} in {}", g, d);
        }
    }

    #[test]
    fn a_summand_is_found((_, l) in scrambled(), (_, m) in scrambled()) {
        let s = direct_sum(&l, &m).unwrap();
        let v = summand_test(&s, &l, &opts()).unwrap();
        prop_assert!(v.is_summand);
        let w = v.witness.unwrap();
        prop_assert_eq!(table_sum(&direct(&l), &direct(&w.pairing())), direct(&s));
    }

    #[test]
    fn reduction_basis_preserves_the_table((_, l) in scrambled()) {
        let d = block_diagonalize(&l).unwrap();
        prop_assert!(d.verify(&l));
        let moved = l.change_basis(d.blocks.orders(), &d.basis);
        prop_assert_eq!(direct(&moved), direct(&l));
        prop_assert_eq!(
            invariant_table_with(&l, TableMethod::Blockwise, &opts()).unwrap(),
            direct(&l)
        );
    }

    #[test]
    fn fiber_order_does_not_change_the_table(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_presentation(&mut rng);
        let q = SeifertPresentation::new(p.e, common::shuffled(&mut rng, &p.fibers));
        let (a, b) = (linking_pairing(&p, 2, false).unwrap(), linking_pairing(&q, 2, false).unwrap());
        let o = opts();
        prop_assert_eq!(
            invariant_table_with(&a.pairing, TableMethod::Auto, &o).unwrap(),
            invariant_table_with(&b.pairing, TableMethod::Auto, &o).unwrap()
        );
    }
}

fn random_presentation(rng: &mut ChaCha8Rng) -> SeifertPresentation {
    use rand::Rng;
    loop {
        let m = rng.gen_range(2..=5);
        let fibers: Vec<(i64, i64)> = (0..m)
            .map(|_| {
                let a = [2i64, 4, 8][rng.gen_range(0..3)] * [1i64, 3, 5][rng.gen_range(0..3)];
                let mut b = rng.gen_range(-a..=a);
                while num_integer::Integer::gcd(&a, &b) != 1 {
                    b += 1;
                }
                (a, b)
            })
            .collect();
        let p = SeifertPresentation::from_pairs(rng.gen_range(-2..=2), &fibers);
        if validate_presentation(&p).is_ok() {
            return p;
        }
    }
}

#[test]
fn hyperbolic_squares_agree() {
    for k in 1..=5 {
        let a = BlockSum::new(vec![GeneratorBlock::e0(k); 2]).pairing();
        let b = BlockSum::new(vec![GeneratorBlock::e1(k); 2]).pairing();
        assert_eq!(direct(&a), direct(&b), "k={k}");
    }
}

#[test]
fn parallel_enumeration_matches_serial() {
    let l = "E0(3)+E1(3)+A(3,2)".parse::<BlockSum>().unwrap().pairing();
    let serial = invariant_table_with(&l, TableMethod::Direct, &opts()).unwrap();
    let parallel = invariant_table_with(&l, TableMethod::Direct, &GaussOptions::default().with_workers(4)).unwrap();
    assert_eq!(serial, parallel);
}
