use std::process::Command;

use wkh::cli::{run, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_OK, EXIT_USAGE};

fn wkh(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_wkh")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn countermodel_is_reported() {
    let out = run(["entails", "--matrix", "PWK", "--lhs", "p, ~p", "--rhs", "q"]);
    assert_eq!(out.code, EXIT_FAIL);
    assert!(out.report.contains("countermodel: p=u, q=f"), "{}", out.report);
    let j = out.json.unwrap();
    assert_eq!(j["holds"], false);
    assert_eq!(j["countermodel"], "p=u, q=f");
}

#[test]
fn monadic_separators() {
    let out = run(["monadic", "--matrix", "PWK"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.report.contains("(u,t): ~x"), "{}", out.report);
}

#[test]
fn explosion_in_h_bk_is_one_step() {
    let out = run(["prove", "--system", "H_BK", "--lhs", "p, ~p", "--rhs", "q"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.report.contains("3. BK1* [1,2]"), "{}", out.report);
}

#[test]
fn excluded_middle_needs_pwk() {
    assert_eq!(run(["prove", "--system", "R_PWK", "--rhs", "p | ~p"]).code, EXIT_OK);
    assert_eq!(run(["prove", "--system", "R_BK", "--rhs", "p | ~p"]).code, EXIT_FAIL);
    assert_eq!(run(["prove", "--system", "R_PWK", "--rhs", "p | ~p", "--max-nodes", "1"]).code, EXIT_INCONCLUSIVE);
}

#[test]
fn usage_errors() {
    assert_eq!(run(["frobnicate"]).code, EXIT_USAGE);
    assert_eq!(run(["parse", "p &"]).code, EXIT_USAGE);
    assert_eq!(run(["entails", "--matrix", "nope", "--rhs", "p"]).code, EXIT_USAGE);
    assert_eq!(run(["transform", "lift", "--system", "H_BK", "--rule", "BK99"]).code, EXIT_USAGE);
}

#[test]
fn arrow_lifting() {
    let out = run(["transform", "lift", "--system", "H_BK", "--rule", "BK4", "--mode", "imp"]);
    assert_eq!(out.report.trim(), "rule BK4.imp : ~v0 | p, ~v0 | q |- ~v0 | p & q");
}

#[test]
fn json_proof_round_trips_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dm.drv");
    let p = path.to_str().unwrap();
    let (code, _) = wkh(&["prove", "--system", "SS-CL", "--lhs", "~(p & q)", "--rhs", "~p, ~q", "--out", p]);
    assert_eq!(code, EXIT_OK);
    let (code, json) = wkh(&["--json", "verify", p]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["accepted"], true);
    assert_eq!(v["system"], "SS-CL");
}

#[test]
fn exported_corpus_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let root = dir.path().to_str().unwrap();
    assert_eq!(wkh(&["corpus", "export", root]).0, EXIT_OK);
    let mut count = 0;
    for entry in std::fs::read_dir(dir.path().join("derivations")).unwrap() {
        let path = entry.unwrap().path();
        let (code, report) = wkh(&["verify", path.to_str().unwrap()]);
        assert_eq!(code, EXIT_OK, "{}: {report}", path.display());
        count += 1;
    }
    assert_eq!(count, 15);
    for sys in ["r-bk-star.sys", "h-bk.sys", "r-pwk.sys"] {
        let path = dir.path().join("systems").join(sys);
        assert_eq!(wkh(&["systems", "show", path.to_str().unwrap()]).0, EXIT_OK, "{sys}");
    }
}

#[test]
fn translation_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let tree = dir.path().join("t.drv");
    let lin = dir.path().join("l.drv");
    let (t, l) = (tree.to_str().unwrap(), lin.to_str().unwrap());
    assert_eq!(wkh(&["prove", "--system", "R_BK_star", "--lhs", "~(p | q)", "--rhs", "~q", "--out", t]).0, EXIT_OK);
    assert_eq!(wkh(&["translate-bk", t, "--out", l]).0, EXIT_OK);
    let (code, report) = wkh(&["verify", l]);
    assert_eq!(code, EXIT_OK, "{report}");
    assert!(report.contains("in H_BK"), "{report}");
}
