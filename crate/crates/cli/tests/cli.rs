use std::fs;
use std::path::PathBuf;
use std::process::Command;

use clap::Parser;
use proptest::prelude::*;
use serde_json::Value;
use subdiv_cli::document::MaskDocument;
use subdiv_cli::{run, Cli};
use subdiv_core::{rat, Mask};

fn masks_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../masks")
}

fn mask_path(name: &str) -> String {
    masks_dir()
        .join(format!("{name}.mask"))
        .to_string_lossy()
        .into_owned()
}

fn subdiv(args: &[&str]) -> (String, String, i32) {
    let output = Command::new(env!("CARGO_BIN_EXE_subdiv"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8(output.stdout).unwrap(),
        String::from_utf8(output.stderr).unwrap(),
        output.status.code().unwrap(),
    )
}

fn invoke(args: &[&str]) -> (String, u8) {
    let cli = Cli::try_parse_from(std::iter::once("subdiv").chain(args.iter().copied())).unwrap();
    let outcome = run(cli).unwrap();
    (outcome.stdout, outcome.status)
}

fn assert_no_floats(value: &Value) {
    match value {
        Value::Number(n) => assert!(!n.is_f64(), "float in report: {n}"),
        Value::Array(items) => items.iter().for_each(assert_no_floats),
        Value::Object(map) => map.values().for_each(assert_no_floats),
        _ => {}
    }
}

fn mask_strategy() -> impl Strategy<Value = Mask> {
    (
        -6i64..=6,
        prop::collection::vec((-50i64..=50, 1i64..=64), 1..10),
    )
        .prop_filter_map("all-zero mask", |(offset, terms)| {
            Mask::new(offset, terms.into_iter().map(|(n, d)| rat(n, d)).collect()).ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn mask_documents_round_trip(mask in mask_strategy()) {
        let text = MaskDocument::from_mask(&mask, Some("m".into())).to_json();
        let parsed = MaskDocument::parse(&text).unwrap().to_mask().unwrap();
        prop_assert_eq!(parsed, mask);
    }
}

#[test]
fn exit_statuses_partition_verdicts() {
    for (name, expected) in [
        ("cubic-spline", 0),
        ("quintic-spline", 0),
        ("linear-spline", 0),
        ("four-point", 0),
        ("diverge", 2),
        ("lazy", 3),
    ] {
        let (_, _, code) = subdiv(&["analyze", &mask_path(name)]);
        assert_eq!(code, expected, "{name}");
    }
}

#[test]
fn malformed_input_exits_with_one() {
    let (stdout, stderr, code) = subdiv(&["analyze", "--mask", "1/2,x,1/2"]);
    assert_eq!(code, 1);
    assert!(stdout.is_empty());
    assert!(stderr.contains("invalid rational literal `x`"), "{stderr}");

    let (_, _, code) = subdiv(&["analyze", "--mask", "1,1/0"]);
    assert_eq!(code, 1);
    let (_, _, code) = subdiv(&["analyze", "/nonexistent/path.mask"]);
    assert_eq!(code, 1);
}

#[test]
fn reports_hold_no_floats() {
    for name in ["cubic-spline", "four-point", "diverge", "lazy"] {
        let (stdout, _) = invoke(&["analyze", "--audit", &mask_path(name)]);
        assert_no_floats(&serde_json::from_str(&stdout).unwrap());
        let (stdout, _) = invoke(&["smoothness", &mask_path(name)]);
        assert_no_floats(&serde_json::from_str(&stdout).unwrap());
    }
}

#[test]
fn four_point_report_fields() {
    let (stdout, status) = invoke(&["analyze", &mask_path("four-point")]);
    assert_eq!(status, 0);
    let report: Value = serde_json::from_str(&stdout).unwrap();
    let verdict = &report["analysis"]["verdict"];
    assert_eq!(verdict["kind"], "convergent");
    assert_eq!(verdict["mu"], "5/8");
    assert_eq!(verdict["contractivity_number"], 1);
    assert_eq!(report["analysis"]["loop_iterations"], 1);
}

#[test]
fn inline_mask_matches_file() {
    let (from_file, _) = invoke(&["analyze", "--name", "four-point", &mask_path("four-point")]);
    let (inline, _) = invoke(&[
        "analyze",
        "--name",
        "four-point",
        "--mask",
        "-1/16,0,9/16,1,9/16,0,-1/16",
        "--offset",
        "-3",
    ]);
    assert_eq!(from_file, inline);
}

#[test]
fn baseline_only_reports_the_loop() {
    let (stdout, status) = invoke(&["analyze", "--baseline-only", &mask_path("diverge")]);
    assert_eq!(status, 3);
    let report: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(report["analysis"]["algorithm"], "baseline");
    assert_eq!(report["analysis"]["loop_iterations"], 8);
}

#[test]
fn smoothness_orders() {
    for (name, order) in [
        ("linear-spline", 0),
        ("cubic-spline", 2),
        ("quintic-spline", 4),
    ] {
        let (stdout, status) = invoke(&["smoothness", &mask_path(name)]);
        assert_eq!(status, 0);
        let report: Value = serde_json::from_str(&stdout).unwrap();
        assert_eq!(report["smoothness"]["certified_order"], order, "{name}");
    }
    let (_, status) = invoke(&["smoothness", &mask_path("diverge")]);
    assert_eq!(status, 2);
}

#[test]
fn batch_mode_writes_one_report_per_mask() {
    let input = tempfile::tempdir().unwrap();
    let output = tempfile::tempdir().unwrap();
    let names = [
        "cubic-spline",
        "four-point",
        "diverge",
        "lazy",
        "linear-spline",
    ];
    for name in names {
        fs::copy(mask_path(name), input.path().join(format!("{name}.mask"))).unwrap();
    }
    let (_, status) = invoke(&[
        "analyze",
        "--dir",
        input.path().to_str().unwrap(),
        "--out-dir",
        output.path().to_str().unwrap(),
        "--jobs",
        "3",
    ]);
    assert_eq!(status, 0);
    for name in names {
        let written =
            fs::read_to_string(output.path().join(format!("{name}.report.json"))).unwrap();
        let (single, _) = invoke(&["analyze", &mask_path(name)]);
        assert_eq!(written, single, "{name}");
    }

    fs::write(input.path().join("broken.mask"), "{not json").unwrap();
    let (stdout, status) = invoke(&["analyze", "--dir", input.path().to_str().unwrap()]);
    assert_eq!(status, 1);
    assert!(stdout.contains("broken.mask: error"), "{stdout}");
}

#[test]
fn refine_writes_exact_csv() {
    let (stdout, status) = invoke(&[
        "refine",
        &mask_path("four-point"),
        "--data",
        "1",
        "--levels",
        "1",
    ]);
    assert_eq!(status, 0);
    let mut lines = stdout.lines();
    assert_eq!(lines.next(), Some("t,value"));
    let rows: Vec<&str> = lines.collect();
    assert!(rows.contains(&"0,1"));
    assert!(rows.contains(&"1/2,9/16"));
    assert!(rows.contains(&"-3/2,-1/16"));

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("hat.csv");
    let (stdout, status) = invoke(&[
        "refine",
        &mask_path("linear-spline"),
        "--data",
        "1",
        "--levels",
        "3",
        "--decimal",
        "--trace",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(status, 0);
    let csv = fs::read_to_string(&out).unwrap();
    assert!(csv.starts_with("t,value,value_decimal\n"));
    assert!(csv.contains("1/8,7/8,0.875"));
    let report: Value = serde_json::from_str(&stdout).unwrap();
    assert_no_floats(&report);
    for row in report["trace"]["levels"].as_array().unwrap().iter().skip(1) {
        assert_eq!(row["ratio"], "1/2");
    }
    assert_eq!(report["trace"]["bound_check"]["passed"], true);
}

#[test]
fn audit_command_passes() {
    let (stdout, status) = invoke(&["audit", "--count", "50", "--seed", "7", "--levels", "3"]);
    assert_eq!(status, 0);
    let report: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(report["passed"], true);
}
