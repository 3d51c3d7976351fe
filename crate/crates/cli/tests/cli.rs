//! End-to-end tests of the `wkf` binary: exit codes, report content,
//! diagnostics, and byte-stable machine output.

use std::io::Write;
use std::path::Path;
use std::process::{Command, Output};

use wkf_cli::{emit_problem, parse_problem, Scalar};

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn wkf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wkf")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

#[test]
fn bounds_of_an_orthonormal_basis_pass() {
    let out = wkf(&["bounds", &fixture("onb_bounds.json")]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("verdict: pass"), "{text}");
    assert!(text.contains("lower: 1.00000000000e0"), "{text}");
    assert!(text.contains("upper: 1.00000000000e0"), "{text}");
    assert!(text.contains("elapsed:"), "{text}");
}

#[test]
fn woven_refutation_reports_the_worst_partition_and_exits_one() {
    let out = wkf(&["woven", &fixture("swapped_woven.json"), "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["verdict"], serde_json::json!(false));
    assert_eq!(report["lower"], serde_json::json!(0.0));
    assert_eq!(report["worst_partition"], serde_json::json!("10"));
    assert_eq!(report["partitions_checked"], serde_json::json!(4));
    assert_eq!(report["exhaustive"], serde_json::json!(true));
}

#[test]
fn erasure_certificate_fixture_passes() {
    let out = wkf(&["cert", &fixture("doubled_c29.json"), "--json"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["result_id"], serde_json::json!("C2.9"));
    assert_eq!(report["verdict"], serde_json::json!(true));
    assert_eq!(report["claimed_lower"], serde_json::json!(1.0));
    assert_eq!(report["achieved_lower"], serde_json::json!(1.0));
}

#[test]
fn pair_scalars_parse_and_kbounds_is_tight() {
    let out = wkf(&["kbounds", &fixture("projection_kbounds.json"), "--json"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["lower"], serde_json::json!(1.0));
    assert_eq!(report["upper"], serde_json::json!(1.0));
    assert_eq!(report["is_tight"], serde_json::json!(true));
    assert_eq!(report["tight_constant"], serde_json::json!(1.0));
}

#[test]
fn dangling_frame_reference_names_the_culprit() {
    let out = wkf(&["woven", &fixture("dangling.json")]);
    assert_eq!(out.status.code(), Some(2));
    let text = stderr(&out);
    assert!(text.contains("validation error"), "{text}");
    assert!(text.contains("\"H\""), "{text}");
}

#[test]
fn malformed_syntax_is_a_parse_error() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(file, "{{ \"dim\": 2, ").unwrap();
    let out = wkf(&["bounds", file.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("parse error"), "{}", stderr(&out));
}

#[test]
fn missing_file_is_an_error() {
    let out = wkf(&["bounds", "/nonexistent/problem.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("cannot read"), "{}", stderr(&out));
}

#[test]
fn command_line_task_must_match_the_file() {
    let out = wkf(&["kwoven", &fixture("onb_bounds.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("task mismatch"), "{}", stderr(&out));
}

#[test]
fn machine_reports_are_byte_identical_for_identical_input_and_seed() {
    let args = ["kwoven", &fixture("sampled_kwoven.json"), "--seed", "3", "--json"];
    let first = wkf(&args);
    let second = wkf(&args);
    assert_eq!(first.status.code(), second.status.code());
    assert_eq!(first.stdout, second.stdout);
    // The sweep is sampled, so it must refuse to certify.
    let report: serde_json::Value = serde_json::from_str(&stdout(&first)).unwrap();
    assert_eq!(report["exhaustive"], serde_json::json!(false));
    assert_eq!(report["verdict"], serde_json::json!(false));
    assert_eq!(report["partitions_checked"], serde_json::json!(102));
}

#[test]
fn budget_override_downgrades_an_exhaustive_sweep() {
    // Identical families weave to the same frame either way; the full sweep
    // certifies, a one-sample budget must not.
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(
        file,
        r#"{{
            "dim": 2,
            "frames": {{ "F": [[1, 0], [0, 1]], "G": [[1, 0], [0, 1]] }},
            "task": {{ "op": "woven", "frames": ["F", "G"] }}
        }}"#
    )
    .unwrap();
    let path = file.path().to_str().unwrap().to_owned();
    let full = wkf(&["woven", &path]);
    assert_eq!(full.status.code(), Some(0), "stderr: {}", stderr(&full));
    let sampled = wkf(&["woven", &path, "--budget", "1", "--json"]);
    assert_eq!(sampled.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_str(&stdout(&sampled)).unwrap();
    assert_eq!(report["partitions_checked"], serde_json::json!(3));
    assert_eq!(report["exhaustive"], serde_json::json!(false));
}

#[test]
fn tol_override_tightens_the_verdict() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(
        file,
        r#"{{
            "dim": 2,
            "frames": {{ "F": [[1, 0], [0, 0.0001]] }},
            "task": {{ "op": "bounds", "frames": ["F"] }}
        }}"#
    )
    .unwrap();
    let path = file.path().to_str().unwrap().to_owned();
    let default = wkf(&["bounds", &path]);
    assert_eq!(default.status.code(), Some(0));
    let strict = wkf(&["bounds", &path, "--tol", "1e-6"]);
    assert_eq!(strict.status.code(), Some(1));
}

#[test]
fn quiet_mode_prints_nothing() {
    let pass = wkf(&["bounds", &fixture("onb_bounds.json"), "--quiet"]);
    assert_eq!(pass.status.code(), Some(0));
    assert!(pass.stdout.is_empty());
    assert!(pass.stderr.is_empty());
    let err = wkf(&["woven", &fixture("dangling.json"), "--quiet"]);
    assert_eq!(err.status.code(), Some(2));
    assert!(err.stderr.is_empty());
}

#[test]
fn parsed_problems_round_trip_through_emission() {
    for name in [
        "onb_bounds.json",
        "swapped_woven.json",
        "doubled_c29.json",
        "projection_kbounds.json",
        "sampled_kwoven.json",
    ] {
        let text = std::fs::read_to_string(fixture(name)).unwrap();
        let parsed = parse_problem(&text).unwrap();
        let emitted = emit_problem(&parsed);
        let reparsed = parse_problem(&emitted).unwrap();
        assert_eq!(parsed, reparsed, "round trip failed for {name}");
        // A second emission is byte-stable.
        assert_eq!(emitted, emit_problem(&reparsed), "emission unstable for {name}");
    }
}

#[test]
fn scalar_forms_survive_round_trips() {
    let text = r#"{
        "dim": 2,
        "frames": { "F": [[1, [0, 1]], [[0.5, 0], 1]] },
        "task": { "op": "bounds", "frames": ["F"] }
    }"#;
    let parsed = parse_problem(text).unwrap();
    // Bare reals stay bare; pairs stay pairs.
    let vectors = &parsed.frames["F"];
    assert!(matches!(vectors[0][0], Scalar::Real(_)));
    assert!(matches!(vectors[0][1], Scalar::Pair(_)));
    assert!(matches!(vectors[1][0], Scalar::Pair(_)));
    let reparsed = parse_problem(&emit_problem(&parsed)).unwrap();
    assert_eq!(parsed, reparsed);
    assert!(matches!(reparsed.frames["F"][0][1], Scalar::Pair(_)));
}
