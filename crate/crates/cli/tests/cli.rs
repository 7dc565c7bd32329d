use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_geoentropy"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn file(dir: &TempDir, name: &str, contents: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, contents).unwrap();
    path
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn field(report: &str, key: &str) -> String {
    report
        .lines()
        .find_map(|l| l.strip_prefix(key).filter(|rest| rest.starts_with(' ')))
        .unwrap_or_else(|| panic!("no `{key}` in\n{report}"))
        .trim()
        .to_string()
}

#[test]
fn analyze_dyadic_report() {
    let dir = TempDir::new().unwrap();
    let dist = file(&dir, "shannon.dist", "# four outcomes\n1/2 1/4 1/8 1/8\n");
    let out = run(&["analyze", p(&dist)]);
    assert!(out.status.success(), "{}", stderr(&out));
    let report = stdout(&out);
    assert_eq!(field(&report, "D"), "8");
    assert_eq!(field(&report, "counts"), "4 2 1 1");
    assert_eq!(field(&report, "v_info"), "1024");
    assert_eq!(field(&report, "v_uinfo"), "16777216");
    let h: f64 = field(&report, "H_shannon").parse().unwrap();
    assert!((h - 1.75).abs() < 1e-12);
    let eff: f64 = field(&report, "eff_dim").parse().unwrap();
    assert!((eff - 2f64.powf(1.75)).abs() < 5e-4);
}

#[test]
fn analyze_json_has_exactly_documented_keys() {
    let dir = TempDir::new().unwrap();
    let dist = file(&dir, "coin.dist", "1/4 3/4\n");
    let out = run(&["analyze", p(&dist), "--json"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let mut keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    keys.sort_unstable();
    let mut expected = [
        "D",
        "counts",
        "v_info",
        "v_uinfo",
        "log2_ratio",
        "H_shannon",
        "H_shannon_via_ratio",
        "eff_dim",
        "H_renyi",
        "H_tsallis",
        "H_projection",
        "base",
    ];
    expected.sort_unstable();
    assert_eq!(keys, expected);
    assert!((v["eff_dim"].as_f64().unwrap() - 1.7548).abs() < 5e-4);
    assert_eq!(v["D"], 4);
    assert_eq!(v["counts"], serde_json::json!([1, 3]));
    // 4^4 / 3^3
    assert_eq!(v["v_uinfo"], "256");
    assert_eq!(v["v_info"], "27");
    assert!(v["H_renyi"].is_null());
}

#[test]
fn analyze_order_one_maps_to_shannon() {
    let dir = TempDir::new().unwrap();
    let dist = file(&dir, "coin.dist", "1/3 2/3");
    let out = run(&["--json", "analyze", p(&dist), "--renyi", "1", "--tsallis", "1"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let h = v["H_shannon"].as_f64().unwrap();
    assert_eq!(v["H_renyi"].as_f64().unwrap(), h);
    assert!((v["H_tsallis"].as_f64().unwrap() - h * std::f64::consts::LN_2).abs() < 1e-12);
}

#[test]
fn analyze_respects_base_and_exact_limit() {
    let dir = TempDir::new().unwrap();
    let dist = file(&dir, "u.dist", "1/3 1/3 1/3");
    let out = run(&["--json", "--base", "3", "--exact-limit", "2", "analyze", p(&dist)]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!((v["H_shannon"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert_eq!(v["base"], 3);
    assert!(v["v_info"].is_null() && v["v_uinfo"].is_null());
    // log2 of 3^3 / 1 even when the exact integers are skipped
    assert!((v["log2_ratio"].as_f64().unwrap() - 3.0 * 3f64.log2()).abs() < 1e-12);
}

#[test]
fn analyze_rejects_bad_sum_with_exact_value() {
    let dir = TempDir::new().unwrap();
    let dist = file(&dir, "bad.dist", "1/2 1/3\n");
    let out = run(&["analyze", p(&dist)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("5/6"), "{}", stderr(&out));
}

#[test]
fn analyze_names_offending_token() {
    let dir = TempDir::new().unwrap();
    let dist = file(&dir, "bad.dist", "1/2 0.5\n");
    let out = run(&["analyze", p(&dist)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("0.5"), "{}", stderr(&out));
}

#[test]
fn invalid_flags_are_input_errors() {
    assert_eq!(run(&["--base", "1", "table1"]).status.code(), Some(2));
    assert_eq!(run(&["--exact-limit", "0", "table1"]).status.code(), Some(2));
    let dir = TempDir::new().unwrap();
    let dist = file(&dir, "c.dist", "1/2 1/2");
    assert_eq!(run(&["analyze", p(&dist), "--renyi", "-1"]).status.code(), Some(2));
    let missing = dir.path().join("missing.dist");
    assert_eq!(run(&["analyze", p(&missing)]).status.code(), Some(2));
}

#[test]
fn code_build_exact_mode() {
    let dir = TempDir::new().unwrap();
    let dist = file(&dir, "shannon.dist", "1/2 1/4 1/8 1/8");
    let out = run(&["code", "build", p(&dist)]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(
        stdout(&out),
        "0\t0\n1\t10\n2\t110\n3\t111\navg = 7/4 (exact mode)\n"
    );
}

#[test]
fn code_build_fallback_mode() {
    let dir = TempDir::new().unwrap();
    let dist = file(&dir, "bent.dist", "2/3 1/3");
    let table = dir.path().join("bent.code");
    let out = run(&["code", "build", p(&dist), "-o", p(&table)]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(stdout(&out), "avg = 4/3 (fallback mode)\n");
    assert_eq!(fs::read_to_string(&table).unwrap(), "0\t0\n1\t10\n");
}

#[test]
fn code_round_trip() {
    let dir = TempDir::new().unwrap();
    let dist = file(&dir, "d.dist", "1/6 1/3 1/2");
    let table = dir.path().join("t.code");
    assert!(run(&["code", "build", p(&dist), "-o", p(&table)]).status.success());
    let symbols = "2 0 1 1 2 2 0\n1 2\n";
    let sym = file(&dir, "s.txt", symbols);
    let stream = dir.path().join("o.gsc");
    let out = run(&["code", "encode", p(&table), p(&sym), p(&stream)]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(&fs::read(&stream).unwrap()[..4], b"GSC1");

    let out = run(&["code", "decode", p(&table), p(&stream)]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(stdout(&out).trim(), "2 0 1 1 2 2 0 1 2");

    let decoded = dir.path().join("back.txt");
    let out = run(&["code", "decode", p(&table), p(&stream), "-o", p(&decoded)]);
    assert!(out.status.success());
    let back: Vec<String> = fs::read_to_string(&decoded)
        .unwrap()
        .split_whitespace()
        .map(String::from)
        .collect();
    let original: Vec<String> = symbols.split_whitespace().map(String::from).collect();
    assert_eq!(back, original);
}

#[test]
fn code_encode_rejects_out_of_range_symbol() {
    let dir = TempDir::new().unwrap();
    let table = file(&dir, "t.code", "0\t0\n1\t1\n");
    let sym = file(&dir, "s.txt", "0 1 2");
    let out = run(&["code", "encode", p(&table), p(&sym), p(&dir.path().join("o"))]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn code_table_must_be_prefix_free() {
    let dir = TempDir::new().unwrap();
    let table = file(&dir, "t.code", "0\t0\n1\t01\n");
    let sym = file(&dir, "s.txt", "0");
    let out = run(&["code", "encode", p(&table), p(&sym), p(&dir.path().join("o"))]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn code_decode_errors_are_codec_errors() {
    let dir = TempDir::new().unwrap();
    let table = file(&dir, "t.code", "0\t0\n1\t10\n2\t110\n3\t111\n");

    let truncated = dir.path().join("short.gsc");
    fs::write(&truncated, b"GSC1\x01").unwrap();
    assert_eq!(run(&["code", "decode", p(&table), p(&truncated)]).status.code(), Some(3));

    let bad_magic = dir.path().join("magic.gsc");
    fs::write(&bad_magic, b"XSC1\x01\0\0\0\0\0\0\0\x00").unwrap();
    assert_eq!(run(&["code", "decode", p(&table), p(&bad_magic)]).status.code(), Some(3));

    // two bits `11` end inside the codeword 111
    let dangling = dir.path().join("dangling.gsc");
    fs::write(&dangling, b"GSC1\x02\0\0\0\0\0\0\0\xc0").unwrap();
    assert_eq!(run(&["code", "decode", p(&table), p(&dangling)]).status.code(), Some(3));

    // an incomplete code: `1` matches nothing
    let partial = file(&dir, "p.code", "0\t0\n");
    let one = dir.path().join("one.gsc");
    fs::write(&one, b"GSC1\x01\0\0\0\0\0\0\0\x80").unwrap();
    assert_eq!(run(&["code", "decode", p(&partial), p(&one)]).status.code(), Some(3));
}

#[test]
fn table1_rows() {
    let out = run(&["table1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let rows: Vec<Vec<&str>> = text
        .lines()
        .skip(1)
        .map(|l| l.split_whitespace().collect())
        .collect();
    let expected = [
        ("1/2", "2", "2.0000"),
        ("1/4", "4", "1.7548"),
        ("1/16", "16", "1.2634"),
        ("1/256", "256", "1.0259"),
    ];
    assert_eq!(rows.len(), 4);
    for (row, (p, d, eff)) in rows.iter().zip(expected) {
        assert_eq!(row[0], p);
        assert_eq!(row[2], d);
        assert_eq!(row[3], eff);
    }
}

#[test]
fn table1_json() {
    let out = run(&["table1", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let dims: Vec<u64> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["D"].as_u64().unwrap())
        .collect();
    assert_eq!(dims, [2, 4, 16, 256]);
}

#[test]
fn check_diagonal_joint() {
    let dir = TempDir::new().unwrap();
    let joint = file(&dir, "diag.joint", "# perfectly correlated\n2 2\n1/2 0\n0 1/2\n");
    let out = run(&["--json", "check", p(&joint)]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["H_X_given_Y"].as_f64().unwrap(), 0.0);
    assert!((v["I_XY"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!(v["verdicts"]
        .as_object()
        .unwrap()
        .values()
        .all(|b| b.as_bool() == Some(true)));
}

#[test]
fn check_product_joint() {
    let dir = TempDir::new().unwrap();
    // (1/3, 2/3) x (1/4, 3/4)
    let joint = file(&dir, "prod.joint", "2 2\n1/12 1/4\n1/6 1/2\n");
    let out = run(&["check", p(&joint)]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let i: f64 = field(&text, "I(X;Y)").parse().unwrap();
    assert!(i.abs() <= 1e-12);
    assert_eq!(field(&text, "independent"), "true");
    assert_eq!(text.matches("PASS").count(), 4);
    assert!(!text.contains("FAIL"));
}

#[test]
fn check_rejects_malformed_joint() {
    let dir = TempDir::new().unwrap();
    let joint = file(&dir, "bad.joint", "2 2\n1/2 1/4\n1/4 1/4\n");
    let out = run(&["check", p(&joint)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("5/4"), "{}", stderr(&out));
    let ragged = file(&dir, "ragged.joint", "2 2\n1/2 1/4\n1/4\n");
    assert_eq!(run(&["check", p(&ragged)]).status.code(), Some(2));
}

#[test]
fn commands_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let dist = file(&dir, "d.dist", "1/7 2/7 4/7");
    let a = run(&["--json", "--seed", "7", "analyze", p(&dist), "--renyi", "2"]);
    let b = run(&["--json", "--seed", "7", "analyze", p(&dist), "--renyi", "2"]);
    assert_eq!(a.stdout, b.stdout);
}
