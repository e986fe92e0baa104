//! The catalog presentations and the worked examples, checked exactly.

use linkform::invariants::{
    decompose, invariant_table_with, is_isomorphic, table_of_block_sum, tau, GaussOptions, InvariantTable, TableMethod,
};
use linkform::pairing::{generator, BlockSum, GeneratorBlock, LinkingPairing};
use linkform::realize::{hyperbolic_family_report, mixed_five_cases, realize_generator, realize_sum_patterns, SumPattern};
use linkform::seifert::{homology_snf, linking_matrix, torsion_homology_formula};
use linkform::{SeifertPresentation, Sigma};

fn opts() -> GaussOptions {
    GaussOptions::default()
}

fn pres(fibers: &[(i64, i64)]) -> SeifertPresentation {
    SeifertPresentation::from_pairs(1, fibers)
}

fn both_homologies(p: &SeifertPresentation) -> (Vec<u64>, Vec<u64>) {
    let snf = homology_snf(p).unwrap().p_primary(2).unwrap();
    let formula = torsion_homology_formula(p, 2).unwrap();
    (snf.orders().to_vec(), formula.orders().to_vec())
}

/// `1/8` off the diagonal, `0` on it.
fn all_ones(n: usize) -> LinkingPairing {
    let rows: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| i128::from(i != j)).collect()).collect();
    LinkingPairing::from_numerators(2, vec![8; n], &rows, 8).unwrap()
}

fn table(rows: &[(u32, u32, i64)]) -> InvariantTable {
    InvariantTable::from_entries(rows.iter().map(|&(k, r, s)| (k, (r, Sigma::new(s)))))
}

fn bs(s: &str) -> BlockSum {
    s.parse().unwrap()
}

#[test]
fn hyperbolic_split_presentations() {
    for k in 1..=6 {
        let n = 1i64 << k;
        let p = pres(&[(n, n - 1), (n, 1), (n, 1)]);
        assert_eq!(both_homologies(&p), (vec![n as u64; 2], vec![n as u64; 2]), "k={k}");
        assert_eq!(linking_matrix(&p, 2).unwrap(), generator(&GeneratorBlock::e0(k)).unwrap(), "k={k}");
        assert_eq!(realize_generator(&GeneratorBlock::e0(k)).unwrap(), p);
    }
}

#[test]
fn hyperbolic_odd_presentations() {
    for k in 1..=6 {
        let n = 1i64 << k;
        let p = pres(&[(n, n - 1); 3]);
        assert_eq!(both_homologies(&p), (vec![n as u64; 2], vec![n as u64; 2]), "k={k}");
        assert_eq!(linking_matrix(&p, 2).unwrap(), generator(&GeneratorBlock::e1(k)).unwrap(), "k={k}");
    }
}

#[test]
fn cyclic_pair_presentations() {
    for k in 1..=6 {
        let n = 1i64 << k;
        for (sign, residue) in [(1, -5), (-1, 5)] {
            let p = pres(&[(4 * n, sign), (n, sign)]);
            assert_eq!(both_homologies(&p), (vec![n as u64], vec![n as u64]), "k={k}");
            let want = LinkingPairing::from_numerators(2, vec![n as u64], &[vec![i128::from(residue)]], n as u64).unwrap();
            assert_eq!(linking_matrix(&p, 2).unwrap(), want, "k={k} b={sign}");
        }
    }
}

#[test]
fn five_fiber_presentation() {
    let p = pres(&[(8, 7), (8, 1), (8, 1), (8, 1), (8, 1)]);
    assert_eq!(both_homologies(&p), (vec![8; 4], vec![8; 4]));
    let l = linking_matrix(&p, 2).unwrap();
    assert_eq!(l, all_ones(4));
    assert_eq!(decompose(&l, &opts()).unwrap(), bs("E0(3)+E1(3)"));
}

#[test]
fn boxed_tables_by_direct_enumeration() {
    let o = opts();
    let zero = table(&[(1, 0, 0), (2, 0, 0), (3, 2, 0), (4, 0, 0)]);
    let odd = table(&[(1, 0, 0), (2, 0, 4), (3, 2, 0), (4, 0, 0)]);
    let cases: [(&[&str], InvariantTable); 6] = [
        (&["E0(3)"], zero),
        (&["E1(3)"], odd),
        (&["E0(3)+E1(3)"], table(&[(3, 4, 0), (2, 0, 4)])),
        (&["E0(3)+E0(3)", "E1(3)+E1(3)"], table(&[(3, 4, 0)])),
        (&["E0(3)+E0(3)+E0(3)", "E0(3)+E1(3)+E1(3)"], table(&[(3, 6, 0)])),
        (&["E0(3)+E0(3)+E1(3)", "E1(3)+E1(3)+E1(3)"], table(&[(3, 6, 0), (2, 0, 4)])),
    ];
    for (sums, want) in cases {
        for s in sums {
            let got = invariant_table_with(&bs(s).pairing(), TableMethod::Direct, &o).unwrap();
            assert_eq!(got, want, "{s}");
            assert_eq!(got.k_max(), 4);
        }
    }
    // the one nonzero phase: tau at k = 2 of E1(3) sits on the ray at angle 4
    let t = tau(&generator(&GeneratorBlock::e1(3)).unwrap(), 2, &o).unwrap();
    assert_eq!(t.sum.coeffs()[0], -32);
}

#[test]
fn six_by_six_matrix() {
    let l = all_ones(6);
    let t = invariant_table_with(&l, TableMethod::Direct, &opts()).unwrap();
    assert_eq!(t, table(&[(1, 0, 0), (2, 0, 4), (3, 6, 0), (4, 0, 0)]));
    assert!(is_isomorphic(&l, &bs("E0(3)+E0(3)+E1(3)").pairing()).unwrap());
    assert!(is_isomorphic(&l, &bs("E1(3)+E1(3)+E1(3)").pairing()).unwrap());
    assert!(!is_isomorphic(&l, &bs("E0(3)+E0(3)+E0(3)").pairing()).unwrap());
}

#[test]
fn nine_fiber_presentation() {
    let p = realize_sum_patterns(&SumPattern::Hyperbolic { k: 3, j: 8 });
    assert_eq!(p, pres(&[(8, 7), (8, 1), (8, 1), (8, 1), (8, 1), (8, 1), (8, 1), (8, 1), (8, 1)]));
    assert_eq!(both_homologies(&p), (vec![8; 8], vec![8; 8]));
    let l = linking_matrix(&p, 2).unwrap();
    assert_eq!(l, all_ones(8));
    let want = table(&[(3, 8, 0)]);
    assert_eq!(invariant_table_with(&l, TableMethod::Blockwise, &opts()).unwrap(), want);
    let d = decompose(&l, &opts()).unwrap();
    assert_eq!(table_of_block_sum(&d), table_of_block_sum(&bs("E0(3)+E0(3)+E1(3)+E1(3)")));
}

#[test]
fn hyperbolic_family_decompositions() {
    let rows = hyperbolic_family_report(3, &[2, 4, 6, 8], &opts()).unwrap();
    let got: Vec<String> = rows.iter().map(|r| r.decomposition.to_string()).collect();
    assert_eq!(got, ["E0(3)", "E0(3)+E1(3)", "E0(3)+E0(3)+E1(3)", "E0(3)+E0(3)+E0(3)+E0(3)"]);
    assert_eq!(rows[3].table, table(&[(3, 8, 0)]));
    assert_eq!(rows.iter().map(|r| r.odd_part).collect::<Vec<_>>(), [false, true, true, false]);
}

#[test]
fn mixed_five_two_summands() {
    for k in 1..=4 {
        for (pat, r) in mixed_five_cases(k, &opts()).unwrap() {
            assert!(r.verdict, "{pat:?}");
            assert_eq!(r.homology.orders(), &[1u64 << k, 1 << k]);
        }
    }
    // the intermediate matrix is diag(-1, -1) / 2^k
    let p = realize_sum_patterns(&SumPattern::MixedFive { s: 2, t: 0, k: 3 });
    let want = LinkingPairing::from_numerators(2, vec![8, 8], &[vec![-1, 0], vec![0, -1]], 8).unwrap();
    assert_eq!(linking_matrix(&p, 2).unwrap(), want);
}

#[test]
fn mixed_five_single_summand_differs_at_level_three() {
    // (2^6, 1), (2^3, 1) gives (-1/8), which is not (-5/8)
    let pat = SumPattern::MixedFive { s: 1, t: 0, k: 3 };
    let l = linking_matrix(&pat.presentation(), 2).unwrap();
    let claimed = pat.claimed_target().unwrap().pairing();
    assert!(!is_isomorphic(&l, &claimed).unwrap());
    let at_two = SumPattern::MixedFive { s: 1, t: 0, k: 2 };
    let l = linking_matrix(&at_two.presentation(), 2).unwrap();
    assert!(is_isomorphic(&l, &at_two.claimed_target().unwrap().pairing()).unwrap());
}
