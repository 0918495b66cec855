//! End-to-end runs of the `anncat` binary on the fixtures.

use anncat::algebra::{find_isomorphism, Bimodule, FiniteRing};
use anncat::cli::format::{CochainFile, RingFile};
use anncat::cli::Report;
use anncat::cochain::{delta2, is_cocycle3, AnyCochain, Cochain, Cochain2};
use serde_json::Value;
use std::path::PathBuf;
use std::process::Command;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).display().to_string()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_anncat")).args(args).env_remove("ANNCAT_SIZE_GUARD").output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn run_json(args: &[&str]) -> (i32, Report, String) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let (code, stdout, _) = run(&full);
    let report: Report = serde_json::from_str(&stdout).unwrap();
    (code, report, stdout)
}

#[test]
fn h3_of_z2_is_trivial() {
    let (code, out, _) =
        run(&["cohomology", "--level", "3", "--ring", &fixture("z2.json"), "--module", &fixture("z2-regular.json")]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some("H3 = trivial group"));
}

#[test]
fn zero_cochain_passes() {
    let (code, out, _) = run(&[
        "cocycle-check",
        "--ring",
        &fixture("z2.json"),
        "--module",
        &fixture("z2-regular.json"),
        "--cochain",
        &fixture("zero.json"),
    ]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "PASS (17 relations + regularity)");
}

#[test]
fn failing_cochain_reports_violations() {
    let (code, report, _) = run_json(&[
        "cocycle-check",
        "--ring",
        &fixture("z2.json"),
        "--module",
        &fixture("z2-regular.json"),
        "--cochain",
        &fixture("z2-bad.json"),
    ]);
    assert_eq!(code, 1);
    assert!(!report.violations.is_empty());
    assert!(report.violations.iter().all(|v| v.get("relation").is_some() && v.get("residual").is_some()));
}

fn ext_build(factor_sets: &str) -> (i32, Report) {
    let (code, report, _) = run_json(&[
        "ext-build",
        "--base",
        &fixture("null2.json"),
        "--ring",
        &fixture("z2.json"),
        "--theta",
        &fixture("theta-null2.json"),
        "--factor-sets",
        &fixture(factor_sets),
    ]);
    (code, report)
}

#[test]
fn extensions_of_z2_by_null_z2() {
    let (code, report) = ext_build("factor-sets-z4.json");
    assert_eq!(code, 0);
    let ring: RingFile = serde_json::from_value(report.result["ring"].clone()).unwrap();
    let s = ring.to_ring().unwrap();
    assert!(find_isomorphism(s.rng(), FiniteRing::cyclic(4).unwrap().rng()).is_some());

    let (code, report) = ext_build("factor-sets-dual.json");
    assert_eq!(code, 0);
    let ring: RingFile = serde_json::from_value(report.result["ring"].clone()).unwrap();
    let s = ring.to_ring().unwrap();
    assert!(find_isomorphism(s.rng(), FiniteRing::dual_numbers(2).unwrap().rng()).is_some());
}

#[test]
fn reports_round_trip() {
    let cases: Vec<Vec<String>> = vec![
        vec!["cohomology", "--level", "2", "--representatives", "--ring", &fixture("dual2.json"), "--module", &fixture("regular.json")],
        vec!["classify", "--ring", &fixture("z2.json"), "--module", &fixture("z2-regular.json")],
        vec!["ext-bimult", "--base", &fixture("null2.json"), "--ring", &fixture("z2.json")],
        vec!["functor-enumerate", "--source-ring", &fixture("z2.json"), "--source-module", &fixture("z2-regular.json"), "--functor", &fixture("identity-pair.json")],
    ]
    .into_iter()
    .map(|v| v.into_iter().map(String::from).collect())
    .collect();
    for args in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code, report, stdout) = run_json(&args);
        assert_eq!(code, 0, "{args:?}");
        let again = serde_json::to_string_pretty(&report).unwrap() + "\n";
        assert_eq!(again, stdout);
        let reparsed: Report = serde_json::from_str(&again).unwrap();
        assert_eq!(reparsed, report);
    }
}

#[test]
fn emitted_representatives_are_cocycles() {
    let (_, report, _) = run_json(&[
        "cohomology",
        "--level",
        "3",
        "--representatives",
        "--ring",
        &fixture("z3.json"),
        "--module",
        &fixture("regular.json"),
    ]);
    let m = Bimodule::regular(&FiniteRing::cyclic(3).unwrap());
    let reps = report.result["representatives"].as_array().unwrap();
    assert!(!reps.is_empty());
    for r in reps {
        let file: CochainFile = serde_json::from_value(r["cochain"].clone()).unwrap();
        let c = file.to_cochain(&m).unwrap();
        assert_eq!(CochainFile::from_cochain(&m, &c), file);
        assert!(is_cocycle3(&m, c.as_three().unwrap()).passed());
    }
}

#[test]
fn sampled_check_is_deterministic() {
    let args = [
        "--seed",
        "11",
        "coherence-verify",
        "--samples",
        "200",
        "--ring",
        &fixture("dual2.json"),
        "--module",
        &fixture("regular.json"),
    ];
    let (code, _, first) = run_json(&args);
    let (_, _, second) = run_json(&args);
    assert_eq!(code, 0);
    assert_eq!(first, second);
}

#[test]
fn non_regular_pair_is_a_violation() {
    // a nonzero coboundary on the source side
    let r = FiniteRing::dual_numbers(2).unwrap();
    let m = Bimodule::regular(&r);
    let mut g = Cochain2::zero(4);
    g.set(0, &[2, 2], 2);
    let f = delta2(&m, &g);
    assert!(!f.is_zero());
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("source.json");
    std::fs::write(&path, serde_json::to_string(&CochainFile::from_cochain(&m, &AnyCochain::Three(f))).unwrap())
        .unwrap();
    let pair = dir.path().join("pair.json");
    std::fs::write(&pair, r#"{"f0": [0, 1, 2, 3], "f1": [[1, 0], [0, 1]]}"#).unwrap();
    let base = [
        "--source-ring",
        &fixture("dual2.json"),
        "--source-module",
        &fixture("regular.json"),
        "--source-cochain",
        path.to_str().unwrap(),
        "--functor",
        pair.to_str().unwrap(),
    ];
    let (code, report, _) = run_json(&[&["functor-exists"], &base[..]].concat());
    assert_eq!(code, 0);
    assert_eq!(report.result["exists"], Value::Bool(true));
    let (code, report, _) = run_json(&[&["functor-enumerate"], &base[..]].concat());
    assert_eq!(code, 1);
    assert!(report.violations.iter().all(|v| v.get("component").is_some()));
}

#[test]
fn input_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ring.json");
    std::fs::write(&path, "{\"order\": 2,\n \"add\": [[0, 1], [1, 0]],\n \"mul\": 7}").unwrap();
    let (code, _, err) = run(&["ring-validate", "--ring", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 3"), "{err}");

    let (code, report, _) = run_json(&[
        "cocycle-check",
        "--ring",
        &fixture("z2.json"),
        "--module",
        &fixture("z2-regular.json"),
        "--cochain",
        &fixture("identity-pair.json"),
    ]);
    assert_eq!(code, 2);
    assert_eq!(report.error.unwrap().kind, "invalid-input");
}

#[test]
fn size_guard_exits_with_three() {
    let (code, report, _) = run_json(&[
        "--size-guard",
        "2",
        "cohomology",
        "--level",
        "3",
        "--ring",
        &fixture("z3.json"),
        "--module",
        &fixture("regular.json"),
    ]);
    assert_eq!(code, 3);
    assert_eq!(report.error.unwrap().kind, "size-guard");
    let out = Command::new(env!("CARGO_BIN_EXE_anncat"))
        .args(["cohomology", "--level", "3", "--ring", &fixture("z3.json"), "--module", &fixture("regular.json")])
        .env("ANNCAT_SIZE_GUARD", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn axiom_failure_in_ring_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ring.json");
    std::fs::write(&path, r#"{"order": 2, "add": [[0, 1], [1, 0]], "mul": [[0, 0], [0, 1]], "zero": 0, "unit": 0}"#)
        .unwrap();
    let (code, report, _) = run_json(&["ring-validate", "--ring", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(report.violations[0]["structure"], "ring");
}
