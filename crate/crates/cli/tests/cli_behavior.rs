//! End-to-end behavior of the `qcd` binary: exit codes, output formats,
//! run-to-run determinism, and the worked-example verdicts.

use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn qcd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcd"))
        .args(args)
        .output()
        .expect("binary must spawn")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("process was killed by a signal")
}

fn stderr_text(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout must be valid JSON")
}

#[test]
fn suite_passes_and_is_deterministic_modulo_timing() {
    let first = qcd(&["suite"]);
    let second = qcd(&["suite"]);
    assert_eq!(code(&first), 0, "stderr: {}", stderr_text(&first));
    assert_eq!(code(&second), 0);

    // One verdict line per criterion on stderr, all passing, ids in order.
    let lines: Vec<_> = stderr_text(&first)
        .lines()
        .filter(|l| l.starts_with("PASS") || l.starts_with("FAIL"))
        .map(str::to_owned)
        .collect();
    assert_eq!(lines.len(), 12);
    for (i, line) in lines.iter().enumerate() {
        assert!(line.starts_with("PASS"), "criterion line failed: {line}");
        assert!(
            line.contains(&format!("C{:02}", i + 1)),
            "criterion ids out of order: {line}"
        );
    }

    // The JSON payload is identical across runs once wall-clock fields
    // (per-criterion millis, total, and the total's detail line) are masked.
    let mask = |out: &Output| -> Value {
        let mut v = stdout_json(out);
        v["total_millis"] = Value::Null;
        let outcomes = v["outcomes"].as_array_mut().expect("outcomes array");
        assert_eq!(outcomes.len(), 12);
        for o in outcomes.iter_mut() {
            o["millis"] = Value::Null;
            if o["id"] == "C12" {
                o["detail"] = Value::Null;
            }
        }
        v
    };
    assert_eq!(mask(&first), mask(&second));
}

#[test]
fn payload_json_is_byte_identical_across_runs() {
    for args in [
        &["rigidity", "--n", "32", "--k", "4"][..],
        &["example", "cndu", "--n", "32", "--k", "4"][..],
    ] {
        let first = qcd(args);
        let second = qcd(args);
        assert_eq!(code(&first), 0, "stderr: {}", stderr_text(&first));
        assert_eq!(
            first.stdout, second.stdout,
            "{args:?} must produce byte-identical JSON"
        );
    }
}

#[test]
fn out_flag_writes_exactly_the_stdout_bytes() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("canonical.json");
    let piped = qcd(&["canonical", "--n", "32", "--k", "4"]);
    let filed = qcd(&[
        "canonical",
        "--n",
        "32",
        "--k",
        "4",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&piped), 0);
    assert_eq!(code(&filed), 0);
    assert!(filed.stdout.is_empty());
    let written = std::fs::read(&path).expect("output file");
    assert_eq!(written, piped.stdout);
}

#[test]
fn config_guard_and_parse_failures_exit_2() {
    let guard = qcd(&["suite", "--n", "4"]);
    assert_eq!(code(&guard), 2);
    assert!(
        stderr_text(&guard).contains("below the guard"),
        "stderr: {}",
        stderr_text(&guard)
    );

    let mut bad = tempfile::NamedTempFile::new().expect("tempfile");
    bad.write_all(br#"{"schema":1,"weights":[[1,0,0"#).unwrap();
    let weights = format!("custom:{}", bad.path().display());
    let corrupted = qcd(&["spectrum", "--weights", &weights, "--point", "0,1"]);
    assert_eq!(code(&corrupted), 2);
    assert!(
        stderr_text(&corrupted).contains("cannot parse"),
        "stderr: {}",
        stderr_text(&corrupted)
    );

    let usage = qcd(&["frame", "--n", "notanumber"]);
    assert_eq!(code(&usage), 2);
}

#[test]
fn numerical_breakdown_exits_3() {
    // A base point far outside the translated disk has no eigenvector at
    // any truncation; the kernel search must report that as numerical
    // breakdown, not as a usage error.
    let out = qcd(&["frame", "--base", "0,3", "--n", "32"]);
    assert_eq!(code(&out), 3, "stderr: {}", stderr_text(&out));
    assert!(
        stderr_text(&out).contains("empty kernel"),
        "stderr: {}",
        stderr_text(&out)
    );
}

#[test]
fn cndu_example_reaches_the_worked_verdict() {
    let out = qcd(&["example", "cndu", "--n", "64", "--k", "8"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr_text(&out));
    let v = stdout_json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(
        v["verdict"],
        "same curvature: true; quaternion unitarily equivalent: false"
    );
    assert_eq!(v["ad_theta"]["equivalent"], false);
    assert_eq!(v["operator_equivalence"]["equivalent"], false);
    assert_eq!(v["complex_rep"]["equivalent"], false);
    let max_diff = v["curvature"]["max_difference"].as_f64().unwrap();
    assert!(max_diff < 1e-8, "curvatures differ by {max_diff}");
}

#[test]
fn cndu_csv_header_is_frozen() {
    let out = qcd(&[
        "example", "cndu", "--n", "32", "--k", "4", "--format", "csv",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr_text(&out));
    let text = String::from_utf8(out.stdout).expect("CSV must be UTF-8");
    assert!(!text.contains('\r'), "CSV must use LF line endings");
    assert!(text.ends_with('\n'));
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("re_omega,im_omega,k_first,k_second,abs_difference")
    );
    for line in lines {
        let fields: Vec<_> = line.split(',').collect();
        assert_eq!(fields.len(), 5, "row has wrong arity: {line}");
        for field in fields {
            let value: f64 = field.parse().expect("fields are plain '.'-decimal numbers");
            assert!(value.is_finite());
        }
    }
}

#[test]
fn tci_example_reports_the_expected_dimensions() {
    let out = qcd(&["example", "tci", "--n", "64"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr_text(&out));
    let v = stdout_json(&out);
    assert_eq!(v["all_match"], true);
    let rows = v["rows"].as_array().expect("rows array");
    assert!(!rows.is_empty());
    let mut seen = [false, false];
    for row in rows {
        let region = row["region"].as_u64().unwrap();
        assert_eq!(
            row["kernel_dim"], row["expected_dim"],
            "dimension mismatch in region {region}"
        );
        assert_eq!(row["kernel_dim"], Value::from(region), "region {region}");
        assert_eq!(row["stable"], true);
        seen[(region - 1) as usize] = true;
    }
    assert_eq!(seen, [true, true], "both regions must be sampled");
}
