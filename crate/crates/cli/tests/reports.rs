use std::fs;

use kempe_cli::cache::Cache;
use kempe_cli::{run_verification, RunConfig, Suite, Verdict};

fn config(claims: &[&str]) -> RunConfig {
    RunConfig {
        command: "verify".into(),
        claims: claims.iter().map(|s| s.to_string()).collect(),
        ..RunConfig::default()
    }
}

#[test]
fn reports_are_reproducible() {
    let cfg = config(&["props.straighten_oracle", "n6.kernel3.dim", "n8.orbit.span"]);
    let a = run_verification(&cfg).unwrap().canonical();
    let b = run_verification(&cfg).unwrap().canonical();
    assert_eq!(a.to_json(), b.to_json());
}

#[test]
fn every_claim_appears_once() {
    let cfg = RunConfig {
        suite: Suite::Quick,
        claims: vec!["n4.dim1".into()],
        ..RunConfig::default()
    };
    let report = run_verification(&cfg).unwrap();
    let registry = kempe_cli::checks::registry();
    assert_eq!(report.checks.len(), registry.len());
    for c in &registry {
        assert_eq!(report.checks.iter().filter(|r| r.claim_id == c.id).count(), 1);
    }
    assert_eq!(report.check("n4.dim1").unwrap().verdict, Verdict::Pass);
    assert!(matches!(report.check("n10.kernel2.dim").unwrap().verdict, Verdict::Skipped(_)));
}

#[test]
fn stretch_check_is_skipped_by_default() {
    let report = run_verification(&RunConfig {
        suite: Suite::Full,
        claims: vec!["n12.kernel2.dim".into()],
        ..RunConfig::default()
    })
    .unwrap();
    assert!(matches!(report.check("n12.kernel2.dim").unwrap().verdict, Verdict::Skipped(_)));
}

#[test]
fn cache_hits_match_cold_runs_and_corruption_is_ignored() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = config(&["n8.kernel2.dim", "n6.segre.spans"]);
    cfg.cache_dir = Some(dir.path().to_path_buf());
    let cold = run_verification(&cfg).unwrap().canonical();
    let files: Vec<_> = fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(files.len(), 2);
    let warm = run_verification(&cfg).unwrap().canonical();
    assert_eq!(cold, warm);

    for f in &files {
        fs::write(f, "{\"key\": \"garbage\"").unwrap();
    }
    let recomputed = run_verification(&cfg).unwrap().canonical();
    assert_eq!(cold, recomputed);
    for f in &files {
        assert!(fs::read_to_string(f).unwrap().contains("\"digest\""));
    }
}

#[test]
fn tampered_payload_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(Some(dir.path().to_path_buf()));
    cache.put("answer", &42u32);
    assert_eq!(cache.get::<u32>("answer"), Some(42));
    let file = fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
    let text = fs::read_to_string(&file).unwrap().replace("42", "43");
    fs::write(&file, text).unwrap();
    assert_eq!(cache.get::<u32>("answer"), None);
}

#[test]
fn field_override_skips_claims_stated_elsewhere() {
    let report = run_verification(&RunConfig {
        field: "fp:3".parse().unwrap(),
        field_override: true,
        claims: vec!["n8.dim1".into(), "n8.orbit.span".into()],
        ..RunConfig::default()
    })
    .unwrap();
    let dim = report.check("n8.dim1").unwrap();
    assert_eq!((dim.verdict.clone(), dim.field.as_str()), (Verdict::Pass, "fp:3"));
    assert!(matches!(report.check("n8.orbit.span").unwrap().verdict, Verdict::Skipped(_)));
}

#[test]
fn environment_sets_cache_dir() {
    let dir = tempfile::tempdir().unwrap();
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_kempe"))
        .args(["verify", "--claim", "n6.dim1"])
        .env("KEMPE_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
}
