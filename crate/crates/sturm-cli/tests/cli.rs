//! End-to-end command tests: output contracts, file round trips, exit codes.

use std::process::{Command, Output};

fn sturm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sturm"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn check_reports_and_exit_codes() {
    let ok = sturm(&["check", "1", "8", "3", "4", "7", "6", "5", "2", "9"]);
    assert!(ok.status.success());
    assert!(stdout(&ok).contains("3-meander template: true"));

    let not_sturm = sturm(&["check", "1", "3", "2"]);
    assert_eq!(not_sturm.status.code(), Some(1));

    let malformed = sturm(&["check", "1", "2", "2"]);
    assert_eq!(malformed.status.code(), Some(2));

    let usage = sturm(&["frobnicate"]);
    assert_eq!(usage.status.code(), Some(2));
}

#[test]
fn machine_format_is_line_oriented() {
    let out = sturm(&[
        "check", "1", "6", "3", "4", "5", "2", "7", "--format", "machine",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("sturm=true"));
    assert!(text.contains("counts=2,2,2,1"));
}

#[test]
fn enumerate_streams_and_counts() {
    let out = sturm(&["enumerate", "--n", "5"]);
    let lines: Vec<String> = stdout(&out).lines().map(str::to_string).collect();
    assert_eq!(lines.len(), 2);
    assert!(lines.contains(&"1 4 3 2 5".to_string()));

    let stats = sturm(&[
        "enumerate", "--n", "13", "--stats", "--format", "machine", "--jobs", "4",
    ]);
    assert!(stdout(&stats).contains("sturm_classes=383"));
    assert!(stdout(&stats).contains("ball3_classes=21"));
}

#[test]
fn complex_files_round_trip_through_construct_and_dualize() {
    let dir = std::env::temp_dir().join("sturm-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("suspension.json");

    let gen = sturm(&[
        "generate",
        "--family",
        "suspension",
        "--m",
        "2",
        "--n",
        "1",
        "--emit-complex",
    ]);
    assert!(gen.status.success());
    let text = stdout(&gen);
    let (sigma, json) = text.split_once('\n').unwrap();
    assert_eq!(sigma, "1 8 3 4 7 6 5 2 9");
    std::fs::write(&path, json).unwrap();

    let built = sturm(&["construct", "--complex", path.to_str().unwrap()]);
    assert!(built.status.success());
    assert!(stdout(&built).contains("sigma: 1 8 3 4 7 6 5 2 9"));

    let dual = sturm(&["dualize", "--complex", path.to_str().unwrap()]);
    assert!(dual.status.success());
    assert!(stdout(&dual).contains("\"kind\": \"sphere\""));
    let diag = String::from_utf8_lossy(&dual.stderr).into_owned();
    assert!(diag.contains("pass iv.bridges"));
}

#[test]
fn render_writes_svg() {
    let dir = std::env::temp_dir().join("sturm-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("meander.svg");
    let out = sturm(&[
        "render",
        "--perm",
        "1 6 3 4 5 2 7",
        "--svg",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("<path").count(), 6);
}

#[test]
fn generators_match_published_values() {
    let out = sturm(&["generate", "--family", "hypercube", "--m", "2"]);
    assert_eq!(stdout(&out).trim(), "1 6 7 8 5 2 3 4 9");
    let out = sturm(&["generate", "--family", "ci", "--m", "4"]);
    assert_eq!(stdout(&out).trim(), "1 8 3 6 5 4 7 2 9");
}
