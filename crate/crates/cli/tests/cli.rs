use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn lieforge(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_lieforge"));
    cmd.args(args).env_remove("LIEFORGE_CAP");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn corpus_file(dir: &TempDir, name: &str) -> PathBuf {
    let out = lieforge(&["corpus", "show", name], &[]);
    assert!(out.status.success());
    write(dir, &format!("{name}.lie"), &String::from_utf8(out.stdout).unwrap())
}

fn json_report(args: &[&str], dir: &TempDir, env: &[(&str, &str)]) -> (i32, Value, Vec<u8>) {
    let path = dir.path().join("report.json");
    let mut full: Vec<&str> = args.to_vec();
    full.extend(["--json", s(&path), "--no-timing"]);
    let out = lieforge(&full, env);
    let bytes = std::fs::read(&path).unwrap_or_default();
    let value = serde_json::from_slice(&bytes).unwrap_or(Value::Null);
    (out.status.code().unwrap(), value, bytes)
}

#[test]
fn validate_accepts_h3() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "h3.lie", "algebra h3 over Q dim 3\n[1,2] = 3\n");
    let out = lieforge(&["validate", s(&f)], &[]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("h3: valid algebra over Q of dimension 3"));
}

#[test]
fn validate_rejects_malformed_input() {
    let dir = TempDir::new().unwrap();
    let cases = [
        ("syntax.lie", "algebra x over Q dim 2\n[1,2] = = 1\n", "line 2"),
        ("alt.lie", "algebra x over Q dim 2\n[1,1] = 2\n", "[e1,e1] is not zero"),
        ("conflict.lie", "algebra x over Q dim 3\n[1,2] = 3\n[2,1] = 3\n", "line 3"),
        ("jacobi.lie", "algebra x over Q dim 3\n[1,2] = 3\n[1,3] = 1\n[2,3] = 1\n", "Jacobi"),
        ("header.lie", "lie algebra\n", "line 1"),
    ];
    for (name, text, needle) in cases {
        let f = write(&dir, name, text);
        let out = lieforge(&["validate", s(&f)], &[]);
        assert_eq!(out.status.code(), Some(2), "{name}");
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(err.contains(needle), "{name}: {err}");
    }
    let out = lieforge(&["validate", "/nonexistent/file.lie"], &[]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(lieforge(&["check"], &[]).status.code(), Some(2));
    assert_eq!(lieforge(&["check", "--corpus", "--suite", "bogus"], &[]).status.code(), Some(2));
    assert_eq!(lieforge(&["frobnicate"], &[]).status.code(), Some(2));
    assert_eq!(lieforge(&["corpus", "show", "nope"], &[]).status.code(), Some(2));
}

#[test]
fn check_h3_all_suites_passes() {
    let dir = TempDir::new().unwrap();
    let f = corpus_file(&dir, "h3");
    let (code, v, _) = json_report(&["check", s(&f), "--suite", "all", "--seed", "42"], &dir, &[]);
    assert_eq!(code, 0);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["tool"], "lieforge");
    assert_eq!(v["seed"], 42);
    assert_eq!(v["passed"], true);
    assert!(v["input_digest"].as_str().unwrap().starts_with("sha256:"));
    assert!(v.get("timing").is_none());
    let names: Vec<&str> = v["results"][0]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    for expected in ["jacobi", "iterated-centralizer-of-ideal", "lemma-cent-it-1", "lemma-cent-it-2", "radicals", "exp", "semidirect"] {
        assert!(names.contains(&expected), "{expected} missing from {names:?}");
    }
    assert_eq!(v["results"][1]["name"], "semidirect-bound");
}

#[test]
fn analyze_sl2_radicals_reports_zero_fitting() {
    let dir = TempDir::new().unwrap();
    let f = corpus_file(&dir, "sl2");
    let (code, v, _) = json_report(&["analyze", s(&f), "--radicals"], &dir, &[]);
    assert_eq!(code, 0);
    let r = &v["result"];
    assert_eq!(r["radicals"]["fitting"]["dim"], 0);
    assert_eq!(r["radicals"]["engel"]["nilpotent"], false);
    assert!(r.get("series").is_none());
}

#[test]
fn analyze_reports_series_and_centers() {
    let dir = TempDir::new().unwrap();
    let f = corpus_file(&dir, "filiform-4");
    let (code, v, _) = json_report(&["analyze", s(&f)], &dir, &[]);
    assert_eq!(code, 0);
    let r = &v["result"];
    assert_eq!(r["series"]["nilpotency_class"], 3);
    assert_eq!(r["series"]["lower_central"]["dims"], serde_json::json!([4, 2, 1, 0]));
    assert_eq!(r["centralizers"]["center"]["dim"], 1);
    assert_eq!(r["radicals"]["fitting"]["dim"], 4);

    let ring = corpus_file(&dir, "z4z2");
    let (code, v, _) = json_report(&["analyze", s(&ring)], &dir, &[]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["order"], 8);
    assert_eq!(v["result"]["radicals"]["fitting"]["order"], 8);
    assert_eq!(v["result"]["series"]["nilpotency_class"], 2);
}

#[test]
fn reports_are_byte_deterministic() {
    let dir = TempDir::new().unwrap();
    let f = corpus_file(&dir, "aff1");
    let args = ["check", s(&f), "--seed", "7", "--samples", "20"];
    let (_, _, a) = json_report(&args, &dir, &[]);
    let (_, _, b) = json_report(&args, &dir, &[]);
    assert!(!a.is_empty());
    assert_eq!(a, b);
    let (_, _, c) = json_report(&["check", s(&f), "--seed", "8", "--samples", "20"], &dir, &[]);
    assert_ne!(a, c);

    let (code, _, a) = json_report(&["check", "--corpus", "--seed", "3", "--samples", "10"], &dir, &[]);
    assert_eq!(code, 0);
    let (_, _, b) = json_report(&["check", "--corpus", "--seed", "3", "--samples", "10"], &dir, &[]);
    assert_eq!(a, b);
}

#[test]
fn whole_corpus_passes_every_suite() {
    let dir = TempDir::new().unwrap();
    let (code, v, _) = json_report(&["check", "--corpus", "--suite", "all"], &dir, &[]);
    assert_eq!(code, 0);
    let results = v["results"].as_array().unwrap();
    // 15 corpus entries plus the generated semidirect batch
    assert_eq!(results.len(), 16);
    assert!(results.iter().all(|r| r["passed"] == true));
    assert_eq!(v["summary"]["violations"], 0);
    let ring = results.iter().find(|r| r["name"] == "heis-z2").unwrap();
    assert_eq!(ring["ring"]["centralizer_lattice_nodes"], 5);
}

#[test]
fn json_to_stdout_and_text_rendering_agree() {
    let dir = TempDir::new().unwrap();
    let f = corpus_file(&dir, "h3");
    let out = lieforge(&["analyze", s(&f), "--series", "--json", "-", "--no-timing"], &[]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["series"]["nilpotency_class"], 2);
    let text = lieforge(&["analyze", s(&f), "--series", "--no-timing"], &[]);
    let text = String::from_utf8(text.stdout).unwrap();
    assert!(text.contains("nilpotency_class: 2"));
    assert!(text.contains("dims: [3, 1, 0]"));
}

#[test]
fn timing_is_present_unless_disabled() {
    let dir = TempDir::new().unwrap();
    let f = corpus_file(&dir, "h3");
    let out = lieforge(&["check", s(&f), "--suite", "jacobi", "--json", "-"], &[]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["timing"]["elapsed_ms"].is_u64());
}

#[test]
fn cap_variable_is_honoured() {
    let dir = TempDir::new().unwrap();
    let ring = corpus_file(&dir, "heis-z3");
    let ok = lieforge(&["check", s(&ring), "--suite", "finring", "--no-timing"], &[]);
    assert_eq!(ok.status.code(), Some(0));
    let capped = lieforge(&["check", s(&ring), "--suite", "finring"], &[("LIEFORGE_CAP", "16")]);
    assert_eq!(capped.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&capped.stderr).contains("exceeds the enumeration cap 16"));
    let bad = lieforge(&["corpus", "list"], &[("LIEFORGE_CAP", "0")]);
    assert_eq!(bad.status.code(), Some(2));
    let (code, v, _) = json_report(&["check", s(&ring), "--suite", "jacobi"], &dir, &[("LIEFORGE_CAP", "100,500")]);
    assert_eq!(code, 0);
    assert_eq!(v["caps"]["order"], 100);
    assert_eq!(v["caps"]["subgroups"], 500);
}

#[test]
fn corpus_entries_round_trip_through_validate() {
    let dir = TempDir::new().unwrap();
    let list = lieforge(&["corpus", "list"], &[]);
    let list = String::from_utf8(list.stdout).unwrap();
    let names: Vec<&str> = list.lines().map(|l| l.split_whitespace().next().unwrap()).collect();
    assert_eq!(names.len(), 15);
    for name in names {
        let f = corpus_file(&dir, name);
        let out = lieforge(&["validate", s(&f)], &[]);
        assert_eq!(out.status.code(), Some(0), "{name}");
    }
}

#[test]
fn aborted_suite_is_a_failed_check() {
    let dir = TempDir::new().unwrap();
    let ring = corpus_file(&dir, "heis-z2");
    let (code, v, _) = json_report(&["check", s(&ring), "--suite", "finring"], &dir, &[("LIEFORGE_CAP", "4096,2")]);
    assert_eq!(code, 1);
    assert_eq!(v["passed"], false);
    let check = &v["results"][0]["checks"][0];
    assert_eq!(check["passed"], false);
    assert!(check["violations"][0]["detail"].as_str().unwrap().contains("subgroup count exceeds"));
}
