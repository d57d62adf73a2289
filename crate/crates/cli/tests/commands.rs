use std::path::Path;
use std::process::{Command, Output};

fn kempe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kempe"))
        .args(args)
        .env_remove("KEMPE_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = kempe(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn first_field(s: &str) -> &str {
    s.split_whitespace().next().unwrap_or("")
}

#[test]
fn dims_examples() {
    assert_eq!(first_field(&stdout(&["dims", "--n", "8", "--valence", "1"])), "14");
    assert_eq!(first_field(&stdout(&["dims", "--n", "5", "--valence", "1"])), "0");
    assert_eq!(first_field(&stdout(&["dims", "--n", "2", "--valence", "1"])), "1");
    assert_eq!(first_field(&stdout(&["dims", "--n", "5", "--valence", "1", "--degree", "2"])), "6");
    assert_eq!(first_field(&stdout(&["dims", "--n", "5", "--weights", "2,2,2,2,2"])), "6");
    let json: serde_json::Value = serde_json::from_str(&stdout(&["dims", "--n", "6", "--format", "json"])).unwrap();
    assert_eq!(json["dimension"], 5);
    assert_eq!(json["noncrossing"], 5);
}

#[test]
fn dims_over_small_prime() {
    assert_eq!(first_field(&stdout(&["dims", "--n", "8", "--field", "fp:3"])), "14");
}

#[test]
fn straighten_examples() {
    assert_eq!(stdout(&["straighten", "n=4; 1-3 2-4"]).trim(), "+1·[1-2 3-4] +1·[1-4 2-3]");
    assert_eq!(stdout(&["straighten", "n=6; 1-2 3-6 4-5"]).trim(), "+1·[1-2 3-6 4-5]");
    assert_eq!(stdout(&["straighten", "n=2; 1-2 2-1"]).trim(), "−1·[1-2 1-2]");
    let checked = stdout(&["straighten", "--oracle", "n=8; 1-5 2-6 3-7 4-8"]);
    assert!(checked.ends_with("oracle: agree\n"), "{checked}");
}

#[test]
fn straighten_reports_parse_position() {
    let out = kempe(&["straighten", "n=4; 1-3 2-x"]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("parse error at byte"), "{err}");
}

#[test]
fn straighten_file_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("input.txt");
    std::fs::write(&path, "# two inputs\nn=4; 1-3 2-4\n\nn=4; [1-2 3-4] - [1-3 2-4] + [1-4 2-3]\n").unwrap();
    let out = stdout(&["straighten", "--oracle", "--file", path.to_str().unwrap()]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines, ["+1·[1-2 3-4] +1·[1-4 2-3]", "oracle: agree", "0", "oracle: agree"]);
}

#[test]
fn kernel_examples() {
    assert_eq!(stdout(&["kernel", "--n", "8", "--degree", "2"]).trim(), "14");
    assert_eq!(stdout(&["kernel", "--n", "6", "--degree", "2"]).trim(), "0");
    assert_eq!(stdout(&["kernel", "--n", "6", "--degree", "3"]).trim(), "1");
}

#[test]
fn kernel_dump_and_cap() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k.txt");
    stdout(&["kernel", "--n", "8", "--degree", "2", "--out", path.to_str().unwrap()]);
    let dump = std::fs::read_to_string(&path).unwrap();
    assert_eq!(dump.lines().count(), 14);
    assert!(dump.lines().all(|l| l.starts_with('+') || l.starts_with('−')));

    let out = kempe(&["kernel", "--n", "8", "--degree", "3", "--cell-cap", "1000"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap exceeded"));
}

#[test]
fn decompose_tables() {
    let out = stdout(&["decompose", "--n", "8", "--space", "quadrics"]);
    assert!(out.contains("(2,2,2,2)"));
    assert!(out.contains("independent dimension 14: consistent"));
    let out = stdout(&["decompose", "--n", "10", "--space", "sym2", "--format", "json"]);
    let json: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(json["consistent"], true);
    assert_eq!(json["summands"].as_array().unwrap().len(), 6);
}

#[test]
fn catalog_dump() {
    let out = stdout(&["catalog"]);
    assert!(out.lines().all(|l| l.split(" | ").count() == 4));
    assert!(out.lines().any(|l| l.starts_with("simple-quadric | 8 | 2 | ")));
    assert_eq!(out.lines().filter(|l| l.starts_with("del-pezzo-quadric")).count(), 5);
}

#[test]
fn char3_generation_claim() {
    let out = kempe(&["verify", "--field", "fp:3", "--claim", "char3-generation", "--format", "json"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let check = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["claim_id"] == "char3-generation")
        .unwrap();
    assert_eq!(check["verdict"]["status"], "pass");
    assert_eq!(check["computed"]["strict"], true);
}

#[test]
fn unknown_claim_is_an_error() {
    let out = kempe(&["verify", "--claim", "no.such.claim"]);
    assert_eq!(out.status.code(), Some(2));
}

fn validate(report: &serde_json::Value) {
    let schema_path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/report.schema.json");
    let schema: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(schema_path).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = validator.iter_errors(report).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}");
}

#[test]
fn report_matches_schema_and_writes_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = kempe(&[
        "verify", "--claim", "n8.dim1", "--claim", "n6.kernel3.dim", "--format", "json", "--out", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    validate(&report);
    let ids: Vec<&str> = report["checks"].as_array().unwrap().iter().map(|c| c["claim_id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
}
