//! Binary-level contract tests: exit codes, schema validity of every JSON
//! document the tool prints, CSV headers, config layering, and fault
//! injection through the real executable.

use galdens::report::{schema_text, validate_schema};
use std::process::{Command, Output};

fn galdens(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_galdens"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout_of(args: &[&str]) -> String {
    let out = galdens(args);
    assert!(
        out.status.success(),
        "{args:?} exited {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn assert_valid(kind: &str, rendered: &str) {
    let doc: serde_json::Value = serde_json::from_str(rendered)
        .unwrap_or_else(|e| panic!("{kind} output is not JSON: {e}"));
    assert_eq!(doc["kind"], serde_json::json!(kind));
    let schema: serde_json::Value = serde_json::from_str(schema_text(kind).unwrap()).unwrap();
    validate_schema(&doc, &schema).unwrap_or_else(|e| panic!("{kind} schema: {e}"));
}

#[test]
fn every_json_document_validates_against_its_schema() {
    assert_valid("catalog", &stdout_of(&["catalog", "list"]));
    assert_valid("group-table", &stdout_of(&["group", "table", "extraspecial(3,1)"]));
    assert_valid("moments", &stdout_of(&["moments", "G72", "pi", "pi-dual"]));
    assert_valid("bound", &stdout_of(&["bound", "--scenario", "gl3b-mixed"]));
    assert_valid("bound", &stdout_of(&["bound", "--scenario", "ramakrishnan(3)"]));
    assert_valid(
        "density",
        &stdout_of(&["density", "dihedral-16", "pi", "pi-twist", "--count", "4000"]),
    );
    assert_valid("stream", &stdout_of(&["stream", "Q8", "pi", "--count", "300"]));
    assert_valid("verify", &stdout_of(&["verify", "--format", "json"]));
}

#[test]
fn scenario_values_match_on_the_wire() {
    let text = stdout_of(&["bound", "--scenario", "thm2"]);
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["closed_form"], serde_json::json!("2/5"));
    assert_eq!(doc["value"]["num"], serde_json::json!(2));
    assert_eq!(doc["value"]["den"], serde_json::json!(5));
    assert_eq!(doc["value_real"], serde_json::json!(4.0e-1));

    let text = stdout_of(&["bound", "--scenario", "ramakrishnan(3)"]);
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["method"], serde_json::json!("reference"));
    assert_eq!(doc["closed_form"], serde_json::json!("1/18"));
}

#[test]
fn custom_table_bound_and_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("custom.json");
    std::fs::write(&table, r#"{"A": 1, "B": 1, "C": 1, "D": 2}"#).unwrap();
    let out_path = dir.path().join("bound.json");

    let out = galdens(&[
        "bound",
        "--table",
        table.to_str().unwrap(),
        "--output",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty(), "output went to the file, not stdout");

    let text = std::fs::read_to_string(&out_path).unwrap();
    assert_valid("bound", &text);
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["closed_form"], serde_json::json!("1/4"));
    assert_eq!(doc["method"], serde_json::json!("best"));
    assert_eq!(doc["picked"], serde_json::json!("cauchy_schwarz_eq4"));
}

#[test]
fn verify_text_report_and_fault_injection() {
    let out = galdens(&["verify"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("Ad irreducible: G216 pass"));
    assert!(text.contains("bound soundness sweep pass"));
    assert!(text.contains("verify: ok"));
    assert!(!text.contains(" fail\n") && !text.contains(" fail ("));

    let out = galdens(&["verify", "--inject-fault", "mislabel-a6"]);
    assert_eq!(out.status.code(), Some(1), "fault injection must fail the run");
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("Ad irreducible: A6-3dim fail"));
    assert!(text.contains("verify: FAIL"));
}

#[test]
fn usage_errors_exit_2() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["group", "table", "no-such-entry"],
        vec!["moments", "S3", "trivial", "no-such-role"],
        vec!["bound", "--scenario", "no-such-scenario"],
        vec!["bound"],
        vec!["bound", "--scenario", "thm2", "--table", "x.json"],
        vec!["bound", "--scenario", "ramakrishnan(0)"],
        vec!["moments", "S3", "pi", "pi"],
        vec!["density", "S3", "trivial", "pi", "--s-grid", "0.5,1.2"],
        vec!["moments", "S3", "trivial", "pi", "--format", "csv"],
        vec!["verify", "--inject-fault", "no-such-fault"],
        vec!["stream", "S3", "pi", "--count", "200000000"],
        vec!["no-such-command"],
        vec![],
    ];
    for args in &cases {
        let out = galdens(args);
        assert_eq!(
            out.status.code(),
            Some(2),
            "{args:?} should be a usage error, stderr: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
}

#[test]
fn csv_grid_outputs() {
    let text = stdout_of(&[
        "density", "G216", "pi", "pi-dual", "--count", "3000", "--format", "csv",
    ]);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("s,ratio,partial_sum,count"));
    assert_eq!(text.lines().count(), 7, "header plus six default grid points");

    let text = stdout_of(&["stream", "C2", "pi", "--count", "10", "--format", "csv"]);
    assert_eq!(text.lines().next(), Some("place,norm,class,a_re,a_im"));
    assert_eq!(text.lines().count(), 11);
}

#[test]
fn config_file_supplies_defaults_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"seed": 5, "count": 40, "format": "csv"}"#).unwrap();
    let cfg = cfg.to_str().unwrap();

    let text = stdout_of(&["stream", "S3", "pi", "--config", cfg]);
    assert_eq!(text.lines().count(), 41, "config count and csv format apply");

    let text = stdout_of(&["stream", "S3", "pi", "--config", cfg, "--count", "8"]);
    assert_eq!(text.lines().count(), 9, "count flag beats the config file");

    let json = stdout_of(&[
        "stream", "S3", "pi", "--config", cfg, "--count", "8", "--format", "json",
    ]);
    let doc: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(doc["seed"], serde_json::json!(5), "config seed still applies");
    assert_eq!(doc["count"], serde_json::json!(8));
}

#[test]
fn density_json_carries_exact_density_and_model_bound() {
    let text = stdout_of(&["density", "C2", "trivial", "sign", "--count", "2000"]);
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["exact_density"]["num"], serde_json::json!(1));
    assert_eq!(doc["exact_density"]["den"], serde_json::json!(2));
    assert_eq!(doc["seed"], serde_json::json!(42), "default seed");
    assert_eq!(
        doc["model_bound"]["closed_form"],
        serde_json::json!("1/2"),
        "the C2 pair bound is tight"
    );
}
