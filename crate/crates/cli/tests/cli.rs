use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn wtred(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wtred"))
        .args(args)
        .env_remove("WTRED_THREADS")
        .output()
        .expect("binary runs")
}

fn ok_json(args: &[&str]) -> Value {
    let out = wtred(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli").join(name);
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn build_hgp_fixture() {
    let r = ok_json(&["build", "--fixture", "code633"]);
    assert_eq!(r["tool"], "wtred");
    assert_eq!(r["command"], "build");
    assert_eq!(r["code"]["n"], 45);
    assert_eq!(r["code"]["k"], 9);
    assert_eq!(r["code"]["d"], "3");
    assert_eq!(r["config_hash"].as_str().unwrap().len(), 64);
}

#[test]
fn build_lp_fixture() {
    let r = ok_json(&["build", "--fixture", "qc1", "--no-distance"]);
    assert_eq!(r["code"]["n"], 260);
    assert_eq!(r["code"]["k"], 58);
    assert!(r["code"].get("d").is_none());
}

#[test]
fn build_writes_code_file_that_reads_back() {
    let dir = scratch("build");
    let r = ok_json(&["build", "--fixture", "hamming743", "--no-distance", "--out-dir", dir.to_str().unwrap()]);
    let css = dir.join("code.css");
    assert_eq!(r["files"][0], css.to_str().unwrap());
    let again = ok_json(&["params", "--css", css.to_str().unwrap()]);
    assert_eq!(again["code"]["n"], 58);
    assert_eq!(again["code"]["k"], 16);
}

#[test]
fn empty_matrix_is_rejected() {
    let dir = scratch("empty");
    let p = dir.join("empty.txt");
    fs::write(&p, "0 0\n").unwrap();
    let out = wtred(&["params", "--matrix", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("empty"), "{}", stderr(&out));
}

#[test]
fn parse_errors_name_line_and_column() {
    let dir = scratch("parse");
    let p = dir.join("bad.txt");
    fs::write(&p, "2 3\n1 0 1\n0 2 1\n").unwrap();
    let out = wtred(&["params", "--matrix", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let msg = stderr(&out);
    assert!(msg.contains("bad.txt:3:3:"), "{msg}");
}

#[test]
fn mismatched_construction_is_a_usage_error() {
    let out = wtred(&["build", "--fixture", "code633", "--construction", "lp"]);
    assert_eq!(out.status.code(), Some(1));
    let out = wtred(&["build", "--fixture", "code633", "--fixture", "qc1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn classical_reduce_of_633() {
    let r = ok_json(&["reduce", "--fixture", "code633", "--compressed"]);
    assert_eq!(r["mode"], "classical");
    assert_eq!(r["noop"], false);
    assert_eq!(r["k_preserved"], true);
    assert_eq!(r["before"]["product"]["n"], 45);
    assert_eq!(r["after"]["product"]["n"], 65);
    assert_eq!(r["after"]["product"]["k"], 9);
    assert_eq!(r["after"]["classical"]["max_row_weight"], 3);
    assert_eq!(r["after"]["classical"]["max_col_weight"], 3);
}

#[test]
fn reducing_a_reduced_matrix_is_a_noop() {
    let dir = scratch("noop");
    ok_json(&["reduce", "--fixture", "code734", "--no-distance", "--out-dir", dir.to_str().unwrap()]);
    let reduced = dir.join("reduced.txt");
    let r = ok_json(&["reduce", "--matrix", reduced.to_str().unwrap(), "--no-distance"]);
    assert_eq!(r["noop"], true);
}

#[test]
fn quantum_reduce_of_qrm() {
    let r = ok_json(&[
        "reduce",
        "--fixture",
        "qrm4",
        "--mode",
        "quantum",
        "--copy",
        "original",
        "--ell",
        "3",
        "--heights",
        "2,1,2,1,2,3,1,3,3,1",
        "--no-distance",
    ]);
    let ns: Vec<u64> = r["stages"].as_array().unwrap().iter().map(|s| s["n"].as_u64().unwrap()).collect();
    assert_eq!(ns, [15, 60, 80, 378, 378, 724]);
    assert_eq!(r["after"]["n"], 724);
    assert_eq!(r["after"]["k"], 1);
    assert_eq!(r["k_preserved"], true);
}

#[test]
fn same_config_and_seed_give_identical_bytes() {
    let dir = scratch("config");
    let cfg = dir.join("run.toml");
    fs::write(
        &cfg,
        "seed = 7\n[input]\nfixture = \"hamming743\"\n[reduce]\npermutations = 20\n[distance]\ntrials = 200\n",
    )
    .unwrap();
    let args = ["reduce", "--config", cfg.to_str().unwrap()];
    let a = wtred(&args);
    let b = wtred(&args);
    assert!(a.status.success(), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let r: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(r["seed"], 7);
    assert_eq!(r["permutations"]["trials"], 20);

    let other = ok_json(&["reduce", "--config", cfg.to_str().unwrap(), "--seed", "8"]);
    assert_ne!(other["config_hash"], r["config_hash"]);
}

#[test]
fn output_paths_do_not_change_the_hash() {
    let dir = scratch("hash");
    let a = ok_json(&["params", "--fixture", "code633"]);
    let b = ok_json(&["params", "--fixture", "code633", "--out-dir", dir.to_str().unwrap()]);
    assert_eq!(a["config_hash"], b["config_hash"]);
}

#[test]
fn unknown_config_keys_are_rejected() {
    let dir = scratch("badcfg");
    let cfg = dir.join("run.json");
    fs::write(&cfg, r#"{"input": {"fixture": "code633"}, "sed": 3}"#).unwrap();
    let out = wtred(&["params", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn report_goes_to_file() {
    let dir = scratch("report");
    let p = dir.join("r.json");
    let out = wtred(&["params", "--fixture", "qc3", "--report", p.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap();
    assert_eq!(r["code"]["n"], 175);
    assert_eq!(r["code"]["k"], 19);
}

#[test]
fn cycle_census_and_dot() {
    let r = ok_json(&["cycles", "--fixture", "hamming743", "--construction", "none"]);
    assert_eq!(r["girth"], 4);
    let out = wtred(&["export-dot", "--fixture", "hamming743", "--construction", "none"]);
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("graph"), "{dot}");
}

#[test]
fn table_one_desk() {
    let out = wtred(&["tables", "t1"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let csv = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[0].starts_with("code,hgp,rate"));
    assert!(lines[1].starts_with(r#""[6,3,3]","[[45,9,3]]",0.200,"[[117,9,"#), "{}", lines[1]);
    assert!(lines[1].contains(r#""[[65,9,"#), "{}", lines[1]);
    assert!(lines[2].starts_with(r#""[7,3,4]","[[65,9,4]]""#), "{}", lines[2]);
    assert!(lines[3].starts_with(r#""[7,4,3]","[[58,16,3]]""#), "{}", lines[3]);
    assert!(lines[1].ends_with(",0,100"));
}

#[test]
fn table_four_desk() {
    let out = wtred(&["tables", "t4"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let csv = String::from_utf8(out.stdout).unwrap();
    assert!(csv.contains("LP(A1)"));
    assert!(csv.contains("[[260,58,<=6]]"), "{csv}");
    assert!(csv.contains("[[175,19,"), "{csv}");
}

#[test]
fn unavailable_tables_are_rejected() {
    for t in ["t7", "t2", "t9"] {
        let out = wtred(&["tables", t]);
        assert_eq!(out.status.code(), Some(1), "{t}");
    }
    assert!(stderr(&wtred(&["tables", "t7"])).contains("out of scope"));
}

#[test]
fn help_and_version_exit_zero() {
    assert!(wtred(&["--help"]).status.success());
    assert!(wtred(&["--version"]).status.success());
    assert_eq!(wtred(&["frobnicate"]).status.code(), Some(1));
}
