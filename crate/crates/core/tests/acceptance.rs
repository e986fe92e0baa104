//! Acceptance criteria 1 to 11, one PASS/FAIL line each.
//!
//! Runs as a plain binary (`harness = false`) so the lines come out in order
//! and uncaptured. Exits nonzero if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use linkform::invariants::{
    decompose, invariant_table_with, is_isomorphic, summand_test, table_of_block_sum, table_sum, tau, GaussOptions,
    InvariantTable, TableMethod,
};
use linkform::pairing::{direct_sum, enumerate_candidates, generator, BlockKind, BlockSum, GeneratorBlock, LinkingPairing};
use linkform::realize::{hyperbolic_family_report, mixed_five_cases, realize_sum_patterns, SumPattern};
use linkform::seifert::{
    homology_snf, linking_from_plumbing, linking_matrix, plumbing_matrix, torsion_homology_formula, SeifertError,
};
use linkform::{SeifertPresentation, Sigma};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn opts() -> GaussOptions {
    GaussOptions::default()
}

fn pres(fibers: &[(i64, i64)]) -> SeifertPresentation {
    SeifertPresentation::from_pairs(1, fibers)
}

fn bs(s: &str) -> BlockSum {
    s.parse().expect("block sum literal")
}

fn table(rows: &[(u32, u32, i64)]) -> InvariantTable {
    InvariantTable::from_entries(rows.iter().map(|&(k, r, s)| (k, (r, Sigma::new(s)))))
}

fn all_ones(n: usize) -> LinkingPairing {
    let rows: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| i128::from(i != j)).collect()).collect();
    LinkingPairing::from_numerators(2, vec![8; n], &rows, 8).unwrap()
}

fn homology_both(p: &SeifertPresentation) -> Result<Vec<u64>, String> {
    let snf = homology_snf(p).map_err(|e| e.to_string())?.p_primary(2).map_err(|e| e.to_string())?;
    let formula = torsion_homology_formula(p, 2).map_err(|e| e.to_string())?;
    ensure(snf == formula, || format!("{p}: SNF {snf} vs formula {formula}"))?;
    Ok(snf.orders().to_vec())
}

fn generator_suite(name: &str, k_of: impl Fn(u32) -> (Vec<(i64, i64)>, Vec<u64>, LinkingPairing)) -> Outcome {
    for k in 1..=6 {
        let (fibers, group, want) = k_of(k);
        let p = pres(&fibers);
        let h = homology_both(&p)?;
        ensure(h == group, || format!("{name} k={k}: group {h:?}"))?;
        let l = linking_matrix(&p, 2).map_err(|e| e.to_string())?;
        ensure(l == want, || format!("{name} k={k}: got {l}, want {want}"))?;
    }
    Ok("k = 1..6 exact".into())
}

fn c1() -> Outcome {
    generator_suite("E0", |k| {
        let n = 1i64 << k;
        (vec![(n, n - 1), (n, 1), (n, 1)], vec![n as u64; 2], generator(&GeneratorBlock::e0(k)).unwrap())
    })
}

fn c2() -> Outcome {
    generator_suite("E1", |k| {
        let n = 1i64 << k;
        (vec![(n, n - 1); 3], vec![n as u64; 2], generator(&GeneratorBlock::e1(k)).unwrap())
    })
}

fn c3() -> Outcome {
    let cyclic = |n: u64, num: i128| LinkingPairing::from_numerators(2, vec![n], &[vec![num]], n).unwrap();
    generator_suite("-5", |k| {
        let n = 1i64 << k;
        (vec![(4 * n, 1), (n, 1)], vec![n as u64], cyclic(n as u64, -5))
    })?;
    generator_suite("+5", |k| {
        let n = 1i64 << k;
        (vec![(4 * n, -1), (n, -1)], vec![n as u64], cyclic(n as u64, 5))
    })?;
    Ok("k = 1..6, both signs exact".into())
}

fn c4() -> Outcome {
    let p = pres(&[(8, 7), (8, 1), (8, 1), (8, 1), (8, 1)]);
    ensure(homology_both(&p)? == vec![8; 4], || "group".into())?;
    let l = linking_matrix(&p, 2).map_err(|e| e.to_string())?;
    ensure(l == all_ones(4), || format!("matrix {l}"))?;
    let d = decompose(&l, &opts()).map_err(|e| e.to_string())?;
    ensure(d == bs("E0(3)+E1(3)"), || format!("decompose gave {d}"))?;
    Ok(format!("decompose = {d}"))
}

fn c5() -> Outcome {
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
    let mut n = 0;
    for (sums, want) in cases {
        for s in sums {
            let got = invariant_table_with(&bs(s).pairing(), TableMethod::Direct, &opts()).map_err(|e| e.to_string())?;
            ensure(got == want, || format!("{s}: got {got}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} pairings, six tables"))
}

fn c6() -> Outcome {
    let l = all_ones(6);
    let t = invariant_table_with(&l, TableMethod::Direct, &opts()).map_err(|e| e.to_string())?;
    ensure(t == table(&[(1, 0, 0), (2, 0, 4), (3, 6, 0), (4, 0, 0)]), || format!("table {t}"))?;
    for other in ["E0(3)+E0(3)+E1(3)", "E1(3)+E1(3)+E1(3)"] {
        ensure(is_isomorphic(&l, &bs(other).pairing()).unwrap(), || format!("not isomorphic to {other}"))?;
    }
    Ok("(r3, σ2) = (6, 4)".into())
}

fn c7() -> Outcome {
    let p = realize_sum_patterns(&SumPattern::Hyperbolic { k: 3, j: 8 });
    ensure(homology_both(&p)? == vec![8; 8], || "group".into())?;
    let l = linking_matrix(&p, 2).map_err(|e| e.to_string())?;
    ensure(l == all_ones(8), || format!("matrix {l}"))?;
    let want = table(&[(3, 8, 0)]);
    let t = Instant::now();
    let direct = invariant_table_with(&l, TableMethod::Direct, &opts()).map_err(|e| e.to_string())?;
    let t_direct = t.elapsed();
    let t = Instant::now();
    let block = invariant_table_with(&l, TableMethod::Blockwise, &opts()).map_err(|e| e.to_string())?;
    let t_block = t.elapsed();
    ensure(direct == want && block == want, || format!("direct {direct} blockwise {block}"))?;
    ensure(t_direct < Duration::from_secs(300), || format!("direct took {t_direct:?}"))?;
    ensure(t_block < Duration::from_secs(5), || format!("blockwise took {t_block:?}"))?;
    let d = decompose(&l, &opts()).map_err(|e| e.to_string())?;
    ensure(table_of_block_sum(&d) == table_of_block_sum(&bs("E0(3)+E0(3)+E1(3)+E1(3)")), || format!("{d}"))?;
    Ok(format!("2^24 direct in {t_direct:.2?}, blockwise in {t_block:.2?}, decompose = {d}"))
}

fn c8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for i in 0..200 {
        let l = common::random_scrambled(&mut rng, 2, 3);
        let m = common::random_scrambled(&mut rng, 2, 3);
        let s = direct_sum(&l, &m).map_err(|e| e.to_string())?;
        let t = |x: &LinkingPairing| invariant_table_with(x, TableMethod::Direct, &opts()).unwrap();
        ensure(t(&s) == table_sum(&t(&l), &t(&m)), || format!("case {i}: {l} + {m}"))?;
    }
    Ok("200 pairs, zero failures".into())
}

fn c9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let (mut compared, mut skipped) = (0, 0);
    while compared < 100 {
        let p = common::random_presentation(&mut rng);
        let formula = match linking_matrix(&p, 2) {
            Ok(l) => l,
            Err(SeifertError::FormulaInapplicable(_) | SeifertError::DegenerateOutput(_)) => {
                skipped += 1;
                continue;
            }
            Err(e) => return Err(format!("{p}: {e}")),
        };
        let oracle = linking_from_plumbing(&plumbing_matrix(&p).unwrap(), 2).map_err(|e| e.to_string())?;
        let t = |x: &LinkingPairing| invariant_table_with(x, TableMethod::Auto, &opts()).unwrap();
        ensure(t(&formula) == t(&oracle), || format!("{p}: tables differ"))?;
        compared += 1;
    }
    Ok(format!("100 agree; {skipped} sampled presentations were outside the closed formula"))
}

fn c10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let corpus = common::corpus(&mut rng, 300);
    let mut converse_gaps = 0;
    for (i, (_, l)) in corpus.iter().enumerate() {
        let o = opts();
        let d = decompose(l, &o).map_err(|e| e.to_string())?;
        let tl = invariant_table_with(l, TableMethod::Auto, &o).unwrap();
        ensure(table_of_block_sum(&d) == tl, || format!("case {i}: decompose {d}"))?;
        for g in d.blocks().iter().filter(|g| g.kind() == BlockKind::A) {
            ensure(tau(l, g.k(), &o).unwrap().sum.is_zero(), || format!("case {i}: {g} with τ ≠ 0"))?;
        }
        // the converse direction is only reported
        for k in 1..=3 {
            let vanishes = tl.r(k) > 0 && tau(l, k, &o).unwrap().sum.is_zero();
            let has_a = enumerate_candidates(&l.group())
                .filter(|c| table_of_block_sum(c) == tl)
                .any(|c| c.count(BlockKind::A, k) > 0);
            if vanishes && !has_a {
                converse_gaps += 1;
            }
        }
        let mu = common::random_scrambled(&mut rng, 2, 3);
        let s = direct_sum(l, &mu).map_err(|e| e.to_string())?;
        let v = summand_test(&s, l, &o).map_err(|e| e.to_string())?;
        ensure(v.is_summand, || format!("case {i}: {l} not found in its sum with {mu}"))?;
    }
    Ok(format!(
        "300 cases; τ = 0 without a cyclic summand of that order: {converse_gaps}"
    ))
}

fn c11() -> Outcome {
    let run = || -> Result<(Vec<String>, Vec<String>), String> {
        let rows = hyperbolic_family_report(3, &[2, 4, 6, 8], &opts()).map_err(|e| e.to_string())?;
        let fam = rows
            .iter()
            .map(|r| format!("j={} {} odd={}", r.j, r.decomposition, r.odd_part))
            .collect();
        let mut mixed = Vec::new();
        for k in 1..=4 {
            for (pat, r) in mixed_five_cases(k, &opts()).map_err(|e| e.to_string())? {
                mixed.push(format!("{:?} -> {}", pat, r.verdict));
            }
        }
        let want = [bs("E0(3)"), bs("E0(3)+E1(3)"), bs("E0(3)+E0(3)+E1(3)")];
        for (r, w) in rows.iter().zip(&want) {
            ensure(table_of_block_sum(&r.decomposition) == table_of_block_sum(w), || format!("j={}", r.j))?;
        }
        ensure(rows[3].table == table(&[(3, 8, 0)]), || "j=8 table".into())?;
        Ok((fam, mixed))
    };
    let first = run()?;
    ensure(first == run()?, || "nondeterministic".into())?;
    let verdicts: Vec<&str> = first.1.iter().map(|s| s.rsplit(' ').next().unwrap()).collect();
    Ok(format!(
        "family k=3: [{}]; E1 needed for j = 4, 6 only; mixed-five two-summand verdicts: {}",
        first.0.join("; "),
        if verdicts.iter().all(|v| *v == "true") { "all true for k = 1..4".to_string() } else { first.1.join(", ") }
    ))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("1 hyperbolic split generators", c1, Duration::from_secs(1)),
        ("2 hyperbolic odd generators", c2, Duration::from_secs(1)),
        ("3 cyclic generators", c3, Duration::from_secs(1)),
        ("4 five-fiber presentation", c4, Duration::from_secs(1)),
        ("5 boxed tables", c5, Duration::from_secs(30)),
        ("6 six-by-six matrix", c6, Duration::from_secs(10)),
        ("7 nine-fiber presentation", c7, Duration::from_secs(300)),
        ("8 additivity", c8, Duration::from_secs(600)),
        ("9 oracle equivalence", c9, Duration::from_secs(120)),
        ("10 summand and decompose consistency", c10, Duration::from_secs(600)),
        ("11 family and mixed-five verdicts", c11, Duration::from_secs(600)),
    ];
    let mut failed = 0;
    for (name, f, budget) in criteria {
        let t = Instant::now();
        let r = f();
        let dt = t.elapsed();
        let r = r.and_then(|d| if dt <= budget { Ok(d) } else { Err(format!("{d}; over budget {budget:?}")) });
        match r {
            Ok(detail) => println!("PASS  {name:<40} {dt:>10.2?}  {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name:<40} {dt:>10.2?}  {why}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
