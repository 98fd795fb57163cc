use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use polycut::Verdict;
use tempfile::TempDir;

const V_POSET: &str = "poset v1\nelements a b c\ncover c a\ncover c b\n";
const V_HYPERPLANE: &str = "hyperplane v1\ncoeff a -1\ncoeff b -1\ncoeff c 1\nrhs 0\n";

fn polycut(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polycut"))
        .args(args)
        .env_remove("POLYCUT_GUARD_MAX_VERTICES")
        .env_remove("POLYCUT_GUARD_MAX_CANDIDATES")
        .output()
        .expect("binary runs")
}

fn verdict(out: &Output) -> Verdict {
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    assert_eq!(text.lines().count(), 1, "one JSON line expected: {text}");
    serde_json::from_str(text.trim()).unwrap()
}

fn files(entries: &[(&str, &str)]) -> (TempDir, Vec<PathBuf>) {
    let dir = tempfile::tempdir().unwrap();
    let paths = entries
        .iter()
        .map(|(name, body)| {
            let p = dir.path().join(name);
            std::fs::write(&p, body).unwrap();
            p
        })
        .collect();
    (dir, paths)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn cube_check_separating() {
    let out = polycut(&["cube", "check", "--coeffs", "1,-1,0", "--rhs", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = verdict(&out);
    assert_eq!(v.command, "cube check");
    assert_eq!(v.verdict, "separating");
    assert_eq!((v.witness["k"].as_u64(), v.witness["l"].as_u64()), (Some(2), Some(1)));
}

#[test]
fn cube_check_not_separating_reports_crossing_edge() {
    let out = polycut(&["cube", "check", "--coeffs", "2,-1", "--rhs", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = verdict(&out);
    assert_eq!(v.verdict, "not separating");
    assert_eq!(v.details["failure"], "bad_edge");
    assert!(v.witness["crossing_edge"].is_array());
}

#[test]
fn cube_canonicalize_and_second() {
    let v = verdict(&polycut(&["cube", "canonicalize", "--coeffs", "1,-1,1", "--rhs", "0"]));
    assert_eq!(v.verdict, "canonical");
    assert_eq!((v.witness["k"].as_u64(), v.witness["l"].as_u64()), (Some(3), Some(1)));
    let v = verdict(&polycut(&["cube", "canonicalize", "--coeffs", "2,-1", "--rhs", "0"]));
    assert_eq!(v.verdict, "not separating");

    let out = polycut(&[
        "cube",
        "second",
        "--d",
        "3",
        "--k",
        "2",
        "--l",
        "1",
        "--I",
        "1",
        "--J",
        "2",
        "--h",
        "0",
        "--verify-oracle",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = verdict(&out);
    assert_eq!(v.details["oracle"], v.verdict);
    assert_eq!(v.details["agree"], true);
}

#[test]
fn cube_enumerate_and_guard() {
    let v = verdict(&polycut(&["cube", "enumerate", "--d", "3"]));
    assert_eq!(v.details["form_count"], 3);
    let out = polycut(&["cube", "enumerate", "--d", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("guard"));
}

#[test]
fn guard_can_be_raised_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_polycut"))
        .args(["cube", "enumerate", "--d", "3"])
        .env("POLYCUT_GUARD_MAX_CANDIDATES", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_polycut"))
        .args(["cube", "enumerate", "--d", "3"])
        .env("POLYCUT_GUARD_MAX_CANDIDATES", "lots")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn poset_check_v_poset() {
    let (_dir, p) = files(&[("v.poset", V_POSET), ("h.hp", V_HYPERPLANE)]);
    let out = polycut(&[
        "poset",
        "check",
        "--poset",
        s(&p[0]),
        "--hyperplane",
        s(&p[1]),
        "--target",
        "order",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = verdict(&out);
    assert_eq!(v.verdict, "separating");
    assert!(v.witness.is_null());

    let v = verdict(&polycut(&[
        "poset",
        "check",
        "--poset",
        s(&p[0]),
        "--hyperplane",
        s(&p[1]),
        "--target",
        "chain",
    ]));
    assert_eq!(v.verdict, "not separating");
    assert_eq!(v.witness["bad_pair"], serde_json::json!([["a"], ["c"]]));
}

#[test]
fn poset_target_is_mandatory() {
    let (_dir, p) = files(&[("v.poset", V_POSET), ("h.hp", V_HYPERPLANE)]);
    let out = polycut(&["poset", "check", "--poset", s(&p[0]), "--hyperplane", s(&p[1])]);
    assert_eq!(out.status.code(), Some(1));
    let out = polycut(&[
        "poset",
        "check",
        "--poset",
        s(&p[0]),
        "--hyperplane",
        s(&p[1]),
        "--target",
        "both",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn poset_enumerate_classify_witness() {
    let chain = "poset v1\nelements x y z\ncover x y\ncover y z\n";
    let (_dir, p) = files(&[("v.poset", V_POSET), ("h.hp", V_HYPERPLANE), ("c.poset", chain)]);

    let v = verdict(&polycut(&[
        "poset",
        "enumerate",
        "--poset",
        s(&p[0]),
        "--target",
        "order",
    ]));
    assert_eq!(v.details["decompositions"], 2);

    let v = verdict(&polycut(&[
        "poset",
        "classify",
        "--poset",
        s(&p[0]),
        "--hyperplane",
        s(&p[1]),
        "--family",
        "zigzag",
    ]));
    assert_eq!(v.verdict, "separating");
    assert_eq!(v.details["conditions"]["min_signs"], false);

    let out = polycut(&[
        "poset",
        "classify",
        "--poset",
        s(&p[0]),
        "--hyperplane",
        s(&p[1]),
        "--family",
        "chains",
    ]);
    assert_eq!(out.status.code(), Some(1));

    let v = verdict(&polycut(&["poset", "witness", "--poset", s(&p[0])]));
    assert_eq!(v.verdict, "found");
    assert_eq!(v.details["order"], "separating");
    assert_eq!(v.details["chain"], "separating");

    let v = verdict(&polycut(&["poset", "witness", "--poset", s(&p[2])]));
    assert_eq!(v.verdict, "none");
}

#[test]
fn input_errors_exit_one() {
    let (_dir, p) = files(&[
        ("bad.poset", "poset v1\nelements a b\ncover a q\n"),
        ("h.hp", V_HYPERPLANE),
    ]);
    let out = polycut(&["poset", "witness", "--poset", s(&p[0])]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    let out = polycut(&["poset", "witness", "--poset", "/nonexistent/file.poset"]);
    assert_eq!(out.status.code(), Some(1));

    assert_eq!(
        polycut(&["cube", "check", "--coeffs", "1,x", "--rhs", "0"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        polycut(&["cube", "check", "--coeffs", "0,0", "--rhs", "0"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(polycut(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(polycut(&["birkhoff", "verify", "--n", "5"]).status.code(), Some(1));
}

#[test]
fn birkhoff_commands() {
    let out = polycut(&["birkhoff", "verify", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = verdict(&out);
    assert_eq!(v.verdict, "none");
    assert_eq!(v.details["summary"], "skeleton complete");

    let v = verdict(&polycut(&[
        "birkhoff",
        "certificate",
        "--perm",
        "(123)(456)(78)",
        "--n",
        "8",
    ]));
    assert_eq!(v.verdict, "pass");
    assert_eq!(v.witness["sigma"][0], "(78)");

    let out = polycut(&["birkhoff", "certificate", "--perm", "(12)(34)", "--n", "4"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unsupported"));

    assert_eq!(verdict(&polycut(&["birkhoff", "identities"])).verdict, "pass");
}

#[test]
fn output_is_deterministic_and_round_trips() {
    let (_dir, p) = files(&[("v.poset", V_POSET), ("h.hp", V_HYPERPLANE)]);
    let runs: Vec<Vec<&str>> = vec![
        vec!["cube", "check", "--coeffs", "1,-1/2,1/3", "--rhs", "1/6"],
        vec![
            "poset",
            "check",
            "--poset",
            s(&p[0]),
            "--hyperplane",
            s(&p[1]),
            "--target",
            "chain",
        ],
        vec!["birkhoff", "certificate", "--perm", "(1234)(567)", "--n", "7"],
    ];
    for args in runs {
        let a = polycut(&args);
        let b = polycut(&args);
        assert_eq!(a.stdout, b.stdout);
        let v = verdict(&a);
        let line = String::from_utf8(a.stdout).unwrap();
        assert_eq!(v.to_line(), line.trim_end());
    }
}

#[test]
fn rationals_are_fraction_strings() {
    let v = verdict(&polycut(&["cube", "check", "--coeffs", "3,-3", "--rhs", "0"]));
    assert_eq!(v.details["hyperplane"]["coeffs"], serde_json::json!(["3/1", "-3/1"]));
    assert_eq!(v.details["hyperplane"]["rhs"], "0/1");
}
