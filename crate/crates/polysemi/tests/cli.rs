//! Golden tests for the command-line interface: byte-exact stdout and the
//! documented exit codes.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_polysemi"))
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

#[test]
fn classify_golden() {
    let out = run(&["classify", data("z2sq_ternary_sum.optab").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "arity: 3\n\
         size: 4\n\
         labels: 00 01 10 11\n\
         associative: true\n\
         member-f1: false\n\
         member-fn-1: true\n\
         member-fn: true\n\
         member-g2: true\n\
         neutral-elements: 00 01 10 11\n\
         group-block: 00 01 10 11\n\
         group-abelian: true\n\
         group-exponent: 2\n\
         reduction-method: neutral-element\n\
         reduction-neutral: 00\n\
         witness-not-quasitrivial: 00 01 10 -> 11\n"
    );
}

#[test]
fn classify_is_deterministic() {
    let path = data("chain5_4ary.optab");
    let first = run(&["classify", path.to_str().unwrap()]);
    let second = run(&["classify", path.to_str().unwrap()]);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    let text = stdout(&first);
    assert!(text.contains("group-block: 1 2 3\n"), "labels 1..3 name the block:\n{text}");
    assert!(text.contains("group-exponent: 3\n"));
    assert!(text.contains("tail-quasitrivial: true\n"));
    assert!(text.contains("annihilator-ok: true\n"));
}

#[test]
fn verify_witness_golden() {
    let out = run(&[
        "verify",
        data("z2sq_ternary_sum.optab").to_str().unwrap(),
        "--property",
        "qt-dk:1",
    ]);
    assert_eq!(out.status.code(), Some(1), "failing property exits 1");
    assert_eq!(stdout(&out), "qt-dk:1: fail\n  witness: 00 01 10 -> 11\n");
}

#[test]
fn verify_all_golden() {
    let out = run(&["verify", data("z2_ternary_sum.optab").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "assoc: pass\nidem: pass\nqt-dk:1: pass\nqt-dk:2: pass\nqt-sk:2: pass\n\
         neutral-elements: 0 1\n"
    );
}

#[test]
fn reduce_then_extend_reproduces_the_input() {
    let out = run(&["reduce", data("z3_7ary.optab").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "optab 1\narity 2\nsize 3\ntable\n0 1 2\n1 2 0\n2 0 1\n"
    );
    // every fixture in the one-off class survives the reduce/extend cycle
    let dir = tempfile::tempdir().unwrap();
    for (file, arity) in [
        ("z2_ternary_sum.optab", "3"),
        ("z2sq_ternary_sum.optab", "3"),
        ("z3_7ary.optab", "7"),
        ("chain5_4ary.optab", "4"),
        ("six_elt_ternary.optab", "3"),
    ] {
        let out = run(&["reduce", data(file).to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{file}");
        let reduced = dir.path().join("reduced.optab");
        std::fs::write(&reduced, out.stdout).unwrap();
        let ext = run(&["extend", reduced.to_str().unwrap(), "--arity", arity]);
        assert_eq!(ext.status.code(), Some(0), "{file}");
        let original = std::fs::read_to_string(data(file)).unwrap();
        assert_eq!(stdout(&ext), original, "{file}: byte-exact reproduction");
    }
}

#[test]
fn construct_golden() {
    let nary = run(&["construct", data("chain5.construct").to_str().unwrap()]);
    assert_eq!(nary.status.code(), Some(0));
    let expected = std::fs::read_to_string(data("chain5_nary.golden")).unwrap();
    assert_eq!(stdout(&nary), expected);
    let binary = run(&[
        "construct",
        data("chain5.construct").to_str().unwrap(),
        "--emit-binary",
    ]);
    let expected = std::fs::read_to_string(data("chain5_binary.golden")).unwrap();
    assert_eq!(stdout(&binary), expected);
    // the glue rows are forced: tail elements absorb the block
    assert!(expected.contains("3 3 3 3 4\n"));
    assert!(expected.contains("4 4 4 4 4\n"));
}

#[test]
fn construct_clause_errors_exit_2() {
    let out = run(&["construct", data("bad_exponent.construct").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("(a)"), "clause tag in: {err}");
}

#[test]
fn enumerate_golden_stream() {
    let out = run(&["enumerate", "--size", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let expected = std::fs::read_to_string(data("semigroups_size2.golden")).unwrap();
    assert_eq!(stdout(&out), expected);
}

#[test]
fn census_golden() {
    let out = run(&["enumerate", "--size", "3", "--arity", "4", "--census"]);
    assert_eq!(out.status.code(), Some(0));
    let expected = std::fs::read_to_string(data("census_3_4.golden")).unwrap();
    assert_eq!(stdout(&out), expected);
}

#[test]
fn witness_outputs() {
    let found = run(&["witness", "--arity", "4", "--size", "3"]);
    assert_eq!(found.status.code(), Some(0));
    assert!(stdout(&found).starts_with("optab 1\narity 4\nsize 3\n"));
    let none = run(&["witness", "--arity", "3", "--size", "3"]);
    assert_eq!(none.status.code(), Some(1));
    assert!(stdout(&none).starts_with("none:"));
}

#[test]
fn exit_codes() {
    // parse error in the input file
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.optab");
    std::fs::write(&bad, "optab 2\n").unwrap();
    let out = run(&["classify", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    // capacity
    let out = run(&["enumerate", "--size", "5"]);
    assert_eq!(out.status.code(), Some(3));
    // clap usage errors also exit 2
    let out = run(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_paper_quick_passes() {
    let out = run(&["check-paper", "--level", "quick"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.lines().filter(|l| l.starts_with("PASS")).count() >= 25);
    assert!(!text.contains("\nFAIL"));
    assert!(text.trim_end().ends_with("0 failed, 0 theorem violations"));
}

#[test]
fn jobs_flag_does_not_change_output() {
    let path = data("z3_7ary.optab");
    let one = run(&["classify", path.to_str().unwrap()]);
    let four = run(&["--jobs", "4", "classify", path.to_str().unwrap()]);
    assert_eq!(one.stdout, four.stdout);
    let env = bin()
        .env("POLYSEMI_JOBS", "3")
        .args(["classify", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(one.stdout, env.stdout);
}

#[test]
fn parsed_fixture_files_match_the_builtin_zoo() {
    for (file, name) in [
        ("z2_ternary_sum.optab", "z2-ternary-sum"),
        ("z2sq_ternary_sum.optab", "z2sq-ternary-sum"),
        ("z3_7ary.optab", "z3-7ary"),
        ("chain5_4ary.optab", "chain5-4ary"),
        ("six_elt_ternary.optab", "six-elt-ternary"),
        ("diamond_join_ternary.optab", "diamond-join-ternary"),
    ] {
        let text = std::fs::read_to_string(data(file)).unwrap();
        let parsed = polysemi::io::parse_optab(&text).unwrap();
        let builtin = polysemi::construct::fixture(name).unwrap();
        assert_eq!(parsed, builtin, "{file}");
        assert_eq!(polysemi::io::serialize_optab(&parsed), text, "{file}");
    }
}
