//! Black-box CLI tests: report shapes, file handling, and exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hypergroups"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn tmp_dir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hypergroups-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn validate_reports_the_group_order() {
    let dir = tmp_dir();
    let path = dir.join("z4-validate.txt");
    std::fs::write(&path, "group 4\n0 1 2 3\n1 2 3 0\n2 3 0 1\n3 0 1 2\n").unwrap();
    let out = run(&["validate", "--group", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "group of order 4\n");
}

#[test]
fn construct_then_validate_then_product_roundtrip() {
    let dir = tmp_dir();
    let gpath = dir.join("z4-pipe.txt");
    std::fs::write(&gpath, "group 4\n0 1 2 3\n1 2 3 0\n2 3 0 1\n3 0 1 2\n").unwrap();
    let out = run(&[
        "construct",
        "--group",
        gpath.to_str().unwrap(),
        "--subgroup",
        "0,2",
        "--transversal",
        "0,1",
    ]);
    assert!(out.status.success());
    let hpath = dir.join("z4-pipe-h.txt");
    std::fs::write(&hpath, stdout(&out)).unwrap();
    let out = run(&["validate", "--hypergroup", hpath.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "hypergroup |H|=2 |M|=2 axioms pass\n");
    let out = run(&["product", "--hypergroup", hpath.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("group 4\n"));
    assert!(text.contains("f0: 0 2"));
    assert!(text.contains("f1: 0 1"));
    let out = run(&["roundtrip", "--hypergroup", hpath.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("roundtrip ok\n"));
}

#[test]
fn construct_output_bytes_are_pinned() {
    let dir = tmp_dir();
    let gpath = dir.join("z4-golden.txt");
    std::fs::write(&gpath, "group 4\n0 1 2 3\n1 2 3 0\n2 3 0 1\n3 0 1 2\n").unwrap();
    let out = run(&[
        "construct",
        "--group",
        gpath.to_str().unwrap(),
        "--subgroup",
        "0,2",
        "--transversal",
        "0,1",
    ]);
    assert!(out.status.success());
    let expected = "hypergroup |H|=2 |M|=2\n\
                    0 1\n1 0\n\
                    0 0\n1 1\n\
                    0 1\n0 1\n\
                    0 1\n1 0\n\
                    0 0\n0 1\n";
    assert_eq!(stdout(&out), expected);
}

#[test]
fn enumerate_accepts_named_groups() {
    let out = run(&["enumerate", "--h", "v4", "--m", "2", "--emit", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["h_order"], 4);
    assert!(v["count"].as_u64().unwrap() > 0);
}

#[test]
fn classify_json_reports_two_classes() {
    let out = run(&["classify", "--h", "z2", "--m", "2", "--emit", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["classes"], 2);
    assert_eq!(v["command"], "classify");
    let ambients: Vec<&str> = v["class_list"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["ambient"].as_str().unwrap())
        .collect();
    assert!(ambients.contains(&"z4"));
    assert!(ambients.contains(&"v4"));
}

#[test]
fn h2_report_matches_the_expected_counts() {
    let out = run(&["h2", "--q", "z2", "--h", "z2", "--psi", "trivial"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("|Z2|=4 |B2|=2 |H2|=2"));
    let out = run(&["h2", "--q", "z2", "--h", "z3", "--psi", "inv"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("|H2|=1"));
}

#[test]
fn ext_reports_route_disagreement_without_failing() {
    let out = run(&["ext", "--h", "z2", "--q", "v4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("routes: r1=4 r2=4 r3=8 r3-stabilized=4"));
    assert!(text.contains("agree: false"));
}

#[test]
fn schreier_reports_iso_classes() {
    let out = run(&["schreier", "--q", "v4", "--h", "z2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("classes: 8"));
    assert!(text.contains("iso-classes: 4"));
}

#[test]
fn psi_file_is_accepted() {
    let dir = tmp_dir();
    let path = dir.join("psi-inv.txt");
    // Q = z2 acting on H = z3: identity row then inversion row
    std::fs::write(&path, "0 1 2\n0 2 1\n").unwrap();
    let out = run(&["h2", "--q", "z2", "--h", "z3", "--psi", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("|H2|=1"));
}

#[test]
fn exit_codes_separate_domain_and_usage_errors() {
    // domain: unreadable file
    let out = run(&["validate", "--group", "/nonexistent/file.txt"]);
    assert_eq!(out.status.code(), Some(1));
    // domain: invalid table
    let dir = tmp_dir();
    let path = dir.join("bad-table.txt");
    std::fs::write(&path, "group 2\n0 1\n1 1\n").unwrap();
    let out = run(&["validate", "--group", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("NotLatinSquare"));
    // domain: unknown built-in name
    let out = run(&["classify", "--h", "z9", "--m", "2"]);
    assert_eq!(out.status.code(), Some(1));
    // usage: unknown subcommand and missing required arguments
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["enumerate", "--m", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["validate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn truncated_files_give_parse_errors() {
    let dir = tmp_dir();
    let path = dir.join("truncated.txt");
    std::fs::write(&path, "group 3\n0 1 2\n1 2 0\n").unwrap();
    let out = run(&["validate", "--group", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("ParseError"), "stderr: {err}");
}

#[test]
fn seed_flag_is_accepted_and_does_not_change_reports() {
    let base = run(&["classify", "--h", "z2", "--m", "2"]);
    let seeded = run(&["classify", "--h", "z2", "--m", "2", "--seed", "12345"]);
    assert!(base.status.success());
    assert!(seeded.status.success());
    assert_eq!(stdout(&base), stdout(&seeded));
}

#[test]
fn oracle_counts_match_for_small_orders() {
    let out = run(&["oracle", "--n", "6", "--emit", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["count"], 2);
    let names: Vec<&str> = v["groups"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| g["name"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"z6"));
    assert!(names.contains(&"s3"));
}
