use std::process::Command;

use majorant::proof::{BudgetOverride, ProofConfig};
use majorant::report::{from_json, to_json, to_markdown};
use majorant::{prove, Verdict};

#[test]
fn both_cases_verify() {
    for k in [3, 4] {
        let report = prove(&ProofConfig::default_for(k).unwrap()).unwrap();
        assert_eq!(report.verdict, Verdict::Verified, "k = {k}");
        assert!(report.steps.iter().all(|s| s.passed));
        assert_eq!(report.steps.last().unwrap().name, "conclusion");
        for s in &report.spot_checks {
            assert!(s.value > 0.0, "d({}) = {}", s.t, s.value);
        }
    }
}

#[test]
fn reports_are_deterministic() {
    let config = ProofConfig::default_for(3).unwrap();
    let a = prove(&config).unwrap().without_timing();
    let b = prove(&config).unwrap().without_timing();
    assert_eq!(a, b);
    assert_eq!(to_json(&a), to_json(&b));
}

#[test]
fn json_round_trip() {
    let report = prove(&ProofConfig::default_for(4).unwrap()).unwrap();
    let back = from_json(&to_json(&report)).unwrap();
    assert_eq!(back, report);
    assert!(to_json(&report).contains("\"verdict\": \"VERIFIED\""));
}

#[test]
fn markdown_lists_the_table() {
    let md = to_markdown(&prove(&ProofConfig::default_for(3).unwrap()).unwrap());
    assert!(md.contains("VERIFIED"));
    assert!(md.contains("Table 1"));
    assert!(md.contains("positivity d'(3)"));
}

#[test]
fn oversized_budget_fails_at_the_first_positivity_step() {
    let o: BudgetOverride = serde_json::from_str(r#"{"positivity": [0.008, 0.04]}"#).unwrap();
    let config = ProofConfig::default_for(3).unwrap().apply_overrides(&o).unwrap();
    let report = prove(&config).unwrap();
    assert_eq!(report.verdict, Verdict::Failed);
    let failed: Vec<_> = report.steps.iter().filter(|s| !s.passed).map(|s| s.name.as_str()).collect();
    assert_eq!(failed, ["positivity d'(3)", "conclusion"]);
}

#[test]
fn override_shape_is_checked() {
    let o: BudgetOverride = serde_json::from_str(r#"{"positivity": [0.008]}"#).unwrap();
    assert!(ProofConfig::default_for(3).unwrap().apply_overrides(&o).is_err());
    assert!(serde_json::from_str::<BudgetOverride>(r#"{"deltas": [1]}"#).is_err());
}

fn cli(args: &[&str]) -> (Option<i32>, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_majorant")).args(args).output().unwrap();
    (out.status.code(), String::from_utf8_lossy(&out.stdout).into_owned())
}

#[test]
fn cli_exit_codes() {
    let (code, out) = cli(&["prove", "--k", "4", "--format", "json"]);
    assert_eq!(code, Some(0));
    assert_eq!(from_json(&out).unwrap().verdict, Verdict::Verified);

    let dir = std::env::temp_dir().join(format!("majorant-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let budget = dir.join("budget.json");
    std::fs::write(&budget, r#"{"positivity": [0.008, 0.04]}"#).unwrap();
    let (code, out) = cli(&["prove", "--k", "3", "--budget-file", budget.to_str().unwrap()]);
    assert_eq!(code, Some(1));
    assert!(out.contains("FAILED"));

    std::fs::write(&budget, "{ not json").unwrap();
    let (code, _) = cli(&["prove", "--k", "3", "--budget-file", budget.to_str().unwrap()]);
    assert_eq!(code, Some(2));
    std::fs::remove_dir_all(&dir).unwrap();

    let (code, out) = cli(&["tables", "--which", "1"]);
    assert_eq!(code, Some(0));
    assert!(out.contains("Table 1"));
}
