//! End-to-end smoke tests for the binary: exit-code contract, report shapes,
//! file input/output, and environment handling. Heavier counting behavior is
//! covered by the acceptance suite; these tests pin the user-facing surface.

mod common;

use std::fs;

use serde_json::Value;

use common::{run, run_with_env, stderr_str, stdout_str, strip_timestamp};

fn parse_stdout(out: &std::process::Output) -> Value {
    serde_json::from_str(&stdout_str(out)).expect("stdout should be a JSON report")
}

fn code(out: &std::process::Output) -> i32 {
    out.status.code().expect("process should exit normally")
}

#[test]
fn version_and_help_exit_zero() {
    let v = run(&["--version"]);
    assert_eq!(code(&v), 0);
    assert!(stdout_str(&v).contains("distdist"));
    let h = run(&["--help"]);
    assert_eq!(code(&h), 0);
    let text = stdout_str(&h);
    for sub in ["analyze", "line", "circle", "sweep", "check"] {
        assert!(text.contains(sub), "help should list `{sub}`");
    }
}

#[test]
fn bad_invocations_exit_one() {
    // Unknown subcommand and malformed flags are input errors.
    assert_eq!(code(&run(&["frobnicate"])), 1);
    assert_eq!(code(&run(&["line", "--lattice", "5"])), 1);
    // Conflicting or incomplete source selection.
    assert_eq!(code(&run(&["line", "--lattice", "4x4", "--n", "32", "--alpha", "0.5"])), 1);
    assert_eq!(code(&run(&["line", "--n", "32"])), 1); // --n requires --alpha
    assert_eq!(code(&run(&["line"])), 1); // no source at all
    assert_eq!(code(&run(&["analyze"])), 1);
    // Domain validation.
    assert_eq!(code(&run(&["line", "--lattice", "8x4", "--row", "9"])), 1);
    assert_eq!(code(&run(&["line", "--n", "3", "--alpha", "0.5"])), 1);
    // Missing file.
    assert_eq!(code(&run(&["analyze", "--input", "/nonexistent/pts.json"])), 1);
}

#[test]
fn malformed_json_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(&path, r#"{"label": "x", "points": [{"x": 1}]}"#).unwrap();
    let out = run(&["analyze", "--input", path.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stderr_str(&out).contains("parse error"));
}

#[test]
fn size_guards_refuse_without_force() {
    // The analysis guard caps the cubic concyclicity scan.
    let out = run(&["analyze", "--lattice", "30x30"]);
    assert_eq!(code(&out), 3);
    assert!(stderr_str(&out).contains("size guard"));

    // The enumeration oracle refuses oversized pair counts up front.
    let out = run(&["line", "--lattice", "320x2", "--oracle"]);
    assert_eq!(code(&out), 3);
    assert!(stderr_str(&out).contains("size guard"));
}

#[test]
fn curve_dump_guard_refuses_then_force_proceeds_with_warning() {
    // 238 ambient points give a curve family past the dump cap.
    let args = ["line", "--n", "240", "--alpha", "0.1", "--seed", "6", "--dump-curves"];
    let refused = run(&args);
    assert_eq!(code(&refused), 3);
    assert!(stderr_str(&refused).contains("size guard"));

    let mut forced: Vec<&str> = args.to_vec();
    forced.push("--force");
    let out = run(&forced);
    assert_eq!(code(&out), 0);
    assert!(stderr_str(&out).contains("warning"));
    let report = parse_stdout(&out);
    let curves = report["curves"].as_array().expect("forced dump should include curves");
    // The guard watches the ordered-pair curve count; the dump itself holds
    // one row per distinct class.
    assert_eq!(curves.len() as u64, report["class_count"].as_u64().unwrap());
    assert!(report["gamma_size"].as_u64().unwrap() > 50_000);
}

#[test]
fn line_lattice_report_matches_frozen_values() {
    let out = run(&["line", "--lattice", "8x4", "--row", "0"]);
    assert_eq!(code(&out), 0);
    let report = parse_stdout(&out);
    assert_eq!(report["command"], "line");
    assert_eq!(report["source"], "lattice:8x4:row0");
    assert_eq!(report["n"], 32);
    assert_eq!(report["D"], 24);
    assert_eq!(report["q_total"], 2536);
    assert_eq!(report["q1"], 1680);
    assert_eq!(report["q2"], 856);
    assert_eq!(report["incidences"], 856);
    assert_eq!(report["t"], 1);
    assert_eq!(report["v_max"], 3);
    assert_eq!(report["gamma_size"], 384);
    assert_eq!(report["skipped_aligned"], 168);
    // Deterministic sources carry no seed field; every report is stamped.
    assert!(report.get("seed").is_none());
    assert!(report.get("generated_unix").is_some());
}

#[test]
fn analyze_lattice_3x3_matches_frozen_values() {
    let out = run(&["analyze", "--lattice", "3x3"]);
    assert_eq!(code(&out), 0);
    let report = parse_stdout(&out);
    assert_eq!(report["n"], 9);
    assert_eq!(report["D"], 5);
    assert_eq!(report["heavy_line"]["count"], 3);
    assert_eq!(report["heavy_circle"]["count"], 4);
}

#[test]
fn file_inputs_accept_json_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let json_path = dir.path().join("pts.json");
    fs::write(
        &json_path,
        r#"{"label":"demo","points":[["0","0"],["6","0"],["14","0"],["3","4"],["10","3"]]}"#,
    )
    .unwrap();
    let csv_path = dir.path().join("pts.csv");
    fs::write(&csv_path, "0,0\n6,0\n14,0\n3,4\n10,3\n").unwrap();

    let from_json = run(&["line", "--input", json_path.to_str().unwrap(), "--oracle"]);
    assert_eq!(code(&from_json), 0);
    let report = parse_stdout(&from_json);
    assert_eq!(report["q_total"], 12);
    assert_eq!(report["q1"], 4);
    assert_eq!(report["q2"], 8);
    assert_eq!(report["incidences"], 8);
    assert_eq!(report["oracle"]["q_total"], 12);

    let from_csv = run(&["line", "--input", csv_path.to_str().unwrap()]);
    assert_eq!(code(&from_csv), 0);
    let report_csv = parse_stdout(&from_csv);
    for field in ["q_total", "q1", "q2", "incidences", "D"] {
        assert_eq!(report_csv[field], report[field], "JSON/CSV mismatch on {field}");
    }

    let analyzed = run(&["analyze", "--input", json_path.to_str().unwrap()]);
    assert_eq!(code(&analyzed), 0);
    assert_eq!(parse_stdout(&analyzed)["n"], 5);
}

#[test]
fn out_flag_mirrors_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&["line", "--lattice", "6x3", "--row", "0", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let file = fs::read_to_string(&path).unwrap();
    assert_eq!(file, stdout_str(&out));
}

#[test]
fn check_small_battery_passes_all_suites() {
    let out = run(&[
        "check", "--configs", "2", "--n", "24", "--pairs", "100", "--tuples", "100",
        "--singular", "10", "--seed", "3",
    ]);
    assert_eq!(code(&out), 0);
    let report = parse_stdout(&out);
    assert_eq!(report["all_pass"], true);
    let suites = report["suites"].as_array().unwrap();
    assert_eq!(suites.len(), 10, "both modes contribute five suites each");
    assert!(suites.iter().all(|s| s["pass"] == true));
}

#[test]
fn sweep_writes_structured_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let out = run(&[
        "sweep", "--mode", "circle", "--alpha", "0.5:0.75:0.25", "--n", "16:32", "--seed", "4",
        "--csv", path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout_str(&out).is_empty(), "rows go to the file, not stdout");
    let text = fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "mode,n,alpha,n1,n2,seed,D,q_total,q1,q2,incidences,verified,gamma,distance_classes,cs_lower,t,v_max"
    );
    assert_eq!(lines.len(), 1 + 4, "two n values times two alphas");
    for row in &lines[1..] {
        assert!(row.starts_with("circle,"));
        assert_eq!(row.split(',').count(), 17);
    }
}

#[test]
fn thread_env_is_tolerated_and_does_not_change_output() {
    let args = ["line", "--n", "40", "--alpha", "0.6", "--seed", "8"];
    let base = strip_timestamp(&stdout_str(&run(&args)));

    let junk = run_with_env(&args, "DISTDIST_THREADS", "not-a-number");
    assert_eq!(code(&junk), 0);
    assert!(stderr_str(&junk).contains("DISTDIST_THREADS"));
    assert_eq!(strip_timestamp(&stdout_str(&junk)), base);

    let capped = run_with_env(&args, "DISTDIST_THREADS", "1");
    assert_eq!(code(&capped), 0);
    assert_eq!(strip_timestamp(&stdout_str(&capped)), base);
}
