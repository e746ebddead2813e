//! Acceptance suite: one test per release criterion, each ending in a
//! single PASS line. Everything here must stay green; a red criterion
//! blocks a release.

use polysemi::battery::{self, op_battery, Level};
use polysemi::construct::{fixture, witness_strict_inclusion, InclusionWitness};
use polysemi::enumerate::{
    enumerate_nary_exhaustive, enumerate_nary_naive, enumerate_semigroups,
    enumerate_semigroups_alt, enumerate_semigroups_naive, extension_universe,
};
use polysemi::predicates::{
    is_associative_direct, is_quasitrivial_on, neutral_elements,
};
use polysemi::reduction::{conjugating_map, extend_binary, reduce_via_neutral};
use polysemi::structure::{classify, verify_unique_block, StructureReport};
use polysemi::table::{Elem, NaryOp};
use polysemi::TupleFamily;
use std::time::{Duration, Instant};

fn classify_timed(op: &NaryOp) -> (StructureReport, Duration) {
    let start = Instant::now();
    let report = classify(op).expect("classification completes");
    (report, start.elapsed())
}

/// Criterion 1: the example zoo classifies exactly as documented, well
/// under a second per table.
#[test]
fn criterion_1_fixture_classifications() {
    let z2sq = fixture("z2sq-ternary-sum").unwrap();
    let (r, t) = classify_timed(&z2sq);
    assert!(r.strictly_between(), "strictly between the classes");
    assert_eq!(r.member_fn1, Some(true));
    assert_eq!(r.member_f1, Some(false));
    assert_eq!(
        r.neutral.as_ref().unwrap().elements(),
        &[0, 1, 2, 3],
        "every element is neutral"
    );
    assert!(t < Duration::from_secs(1), "took {t:?}");

    let diamond = fixture("diamond-join-ternary").unwrap();
    let (r, t) = classify_timed(&diamond);
    assert_eq!(r.member_fn, Some(true));
    assert_eq!(r.member_fn1, Some(false), "join escapes the one-off family");
    assert!(t < Duration::from_secs(1), "took {t:?}");

    let z37 = fixture("z3-7ary").unwrap();
    let (r, t) = classify_timed(&z37);
    assert!(r.strictly_between());
    assert_eq!(r.group_block.as_deref(), Some(&[0, 1, 2][..]));
    assert!(t < Duration::from_secs(1), "took {t:?}");

    let chain5 = fixture("chain5-4ary").unwrap();
    let (r, t) = classify_timed(&chain5);
    assert!(r.strictly_between());
    assert_eq!(r.group_block.as_deref(), Some(&[0, 1, 2][..]), "block recovered");
    assert_eq!(r.group.as_ref().unwrap().exponent, Some(3));
    assert_eq!(r.tail.as_ref().map(|t| t.neutral_count), Some(1));
    assert_eq!(r.annihilator_ok, Some(true));
    assert!(t < Duration::from_secs(1), "took {t:?}");

    let six = fixture("six-elt-ternary").unwrap();
    let (r, t) = classify_timed(&six);
    assert_eq!(r.member_g2, Some(true));
    assert_eq!(r.member_f1, Some(false));
    assert_eq!(r.arity % 2, 1, "arity is odd");
    assert_eq!(r.group.as_ref().unwrap().exponent, Some(2));
    assert!(t < Duration::from_secs(1), "took {t:?}");

    println!("PASS criterion 1: fixture classifications");
}

/// Criterion 2: enumeration counts match across two independent methods.
#[test]
fn criterion_2_enumeration_counts() {
    let quick = Instant::now();
    for (m, want) in [(1usize, 1usize), (2, 8), (3, 113)] {
        let fast = enumerate_semigroups(m).unwrap();
        let naive = enumerate_semigroups_naive(m).unwrap();
        assert_eq!(fast.len(), want, "backtracker at size {m}");
        assert_eq!(naive.len(), want, "brute force at size {m}");
        assert!(
            fast.iter().zip(&naive).all(|(a, b)| a.table() == b.table()),
            "streams agree at size {m}"
        );
    }
    let quick_elapsed = quick.elapsed();
    assert!(
        quick_elapsed < Duration::from_secs(10),
        "quick counts took {quick_elapsed:?}"
    );

    let big = Instant::now();
    let fast = enumerate_semigroups(4).unwrap();
    let alt = enumerate_semigroups_alt(4).unwrap();
    assert_eq!(fast.len(), 3492, "row-major backtracker");
    assert_eq!(alt.len(), 3492, "column-major backtracker");
    assert!(fast.iter().zip(&alt).all(|(a, b)| a.table() == b.table()));
    let big_elapsed = big.elapsed();
    assert!(
        big_elapsed < Duration::from_secs(900),
        "size-4 count took {big_elapsed:?}"
    );
    println!(
        "PASS criterion 2: counts 1/8/113/3492 twice over ({quick_elapsed:?} + {big_elapsed:?})"
    );
}

fn universes() -> Vec<(String, Vec<NaryOp>)> {
    let mut out = Vec::new();
    for n in [3usize, 4] {
        out.push((
            format!("size=2 arity={n} exhaustive"),
            enumerate_nary_exhaustive(2, n, false).unwrap(),
        ));
    }
    for n in [3usize, 4, 5] {
        out.push((
            format!("size=3 arity={n} extended"),
            extension_universe(3, n).unwrap(),
        ));
    }
    out
}

/// Criterion 3: the full structural suite holds with zero counterexamples
/// over every target universe, with associativity double-checked by the
/// defining scan.
#[test]
fn criterion_3_theorem_battery() {
    for (name, ops) in universes() {
        for op in &ops {
            assert!(
                is_associative_direct(op).is_ok(),
                "direct associativity scan over {name}"
            );
            if let Err(msg) = op_battery(op) {
                panic!("counterexample in {name} at {:?}: {msg}", op.table());
            }
        }
    }
    // block uniqueness by exhaustive subset search on constructed carriers
    let mut constructed = vec![
        fixture("z2sq-ternary-sum").unwrap(),
        fixture("chain5-4ary").unwrap(),
    ];
    for (n, m) in [(3usize, 5usize), (5, 4), (5, 5)] {
        match witness_strict_inclusion(n, m).unwrap() {
            InclusionWitness::Found(f) => constructed.push(f),
            InclusionWitness::NotCovered { note } => panic!("uncovered shape ({n},{m}): {note}"),
        }
    }
    for f in &constructed {
        let report = classify(f).unwrap();
        verify_unique_block(f, &report).unwrap();
    }
    println!("PASS criterion 3: zero counterexamples across all universes");
}

/// Criterion 4: reduction and extension are exact inverses wherever they
/// apply, and reductions through different neutral elements are conjugate.
#[test]
fn criterion_4_round_trips() {
    // extend after reduce: every universe member, every neutral element
    for (name, ops) in universes() {
        for op in &ops {
            let n = op.arity();
            for e in neutral_elements(op).iter() {
                let g = reduce_via_neutral(op, e).unwrap();
                let back = extend_binary(&g, n).unwrap();
                assert_eq!(back.table(), op.table(), "extend∘reduce on {name}");
            }
            let neutrals: Vec<Elem> = neutral_elements(op).iter().collect();
            for &e1 in &neutrals {
                for &e2 in &neutrals {
                    let psi = conjugating_map(op, e1, e2).unwrap();
                    assert!(psi.is_bijective());
                }
            }
        }
    }
    // reduce after extend: every binary table with a neutral element
    for m in 1..=3usize {
        for g in enumerate_semigroups(m).unwrap() {
            for n in [3usize, 4, 5] {
                let f = extend_binary(&g, n).unwrap();
                for e in neutral_elements(&g).iter() {
                    let back = reduce_via_neutral(&f, e).unwrap();
                    assert_eq!(back.table(), g.table(), "reduce∘extend at size {m}");
                }
            }
        }
    }
    println!("PASS criterion 4: round trips and conjugacy exact everywhere");
}

/// Criterion 5: randomized conforming construction specs assemble into
/// verified strict-gap members with the block recovered; mutations are
/// rejected under the right clause tag.
#[test]
fn criterion_5_constructor_soundness() {
    let start = Instant::now();
    for n in 3..=5usize {
        for m in 4..=6usize {
            let seed = 0xACCE_0000 + (n * 16 + m) as u64;
            if let Err(msg) = battery::random_spec_suite(seed, n, m, 50) {
                panic!("randomized specs failed at arity {n}, size {m}: {msg}");
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_secs(30),
        "constructor suite took {elapsed:?}"
    );
    println!("PASS criterion 5: 450 randomized specs in {elapsed:?}");
}

/// Criterion 6: strict-inclusion witnesses exist for every covered shape
/// and verify by full predicate evaluation.
#[test]
fn criterion_6_strict_inclusion_witnesses() {
    for (n, m) in [(3usize, 4usize), (3, 5), (4, 3), (4, 4), (5, 4), (5, 5), (7, 3)] {
        let start = Instant::now();
        let f = match witness_strict_inclusion(n, m).unwrap() {
            InclusionWitness::Found(f) => f,
            InclusionWitness::NotCovered { note } => {
                panic!("no witness for ({n},{m}): {note}")
            }
        };
        assert_eq!((f.arity(), f.size()), (n, m));
        assert!(
            is_associative_direct(&f).is_ok(),
            "({n},{m}): full associativity scan"
        );
        let one_off = TupleFamily::d_k(m, n, n - 1).unwrap();
        assert!(
            is_quasitrivial_on(&f, &one_off).is_ok(),
            "({n},{m}): quasitrivial on the one-off family"
        );
        let everywhere = TupleFamily::all(m, n);
        assert!(
            is_quasitrivial_on(&f, &everywhere).is_err(),
            "({n},{m}): not quasitrivial everywhere"
        );
        let elapsed = start.elapsed();
        assert!(
            elapsed < Duration::from_secs(5),
            "witness ({n},{m}) took {elapsed:?}"
        );
    }
    println!("PASS criterion 6: witness grid verified");
}

/// The full battery behind `check-paper` agrees: nothing fails, and in
/// particular nothing theorem-tagged fails.
#[test]
fn check_paper_full_battery_is_green() {
    let report = battery::run(Level::Full);
    for check in &report.checks {
        assert!(check.passed, "{}: {}", check.name, check.detail);
    }
    assert_eq!(report.theorem_violations(), 0);
    println!("PASS battery: {} checks green", report.checks.len());
}

/// Naive-filter cross-check retained at the n-ary level: the exhaustive
/// backtracker agrees with brute force on two-element carriers.
#[test]
fn nary_enumeration_cross_check() {
    for n in [3usize, 4] {
        let fast = enumerate_nary_exhaustive(2, n, false).unwrap();
        let naive = enumerate_nary_naive(2, n).unwrap();
        assert_eq!(fast.len(), naive.len());
        assert!(fast.iter().zip(&naive).all(|(a, b)| a.table() == b.table()));
    }
    println!("PASS enumeration cross-check at arity 3 and 4");
}
