//! Report contract: determinism for a fixed seed, schema shape, and the
//! offenders CSV.

use punct_metrics::{run_suite, SuiteKind};

#[test]
fn same_seed_gives_identical_numeric_fields() {
    let a = run_suite(SuiteKind::Disk, 7, Some(500)).unwrap();
    let b = run_suite(SuiteKind::Disk, 7, Some(500)).unwrap();
    assert_eq!(a.report.checks.len(), b.report.checks.len());
    for (ca, cb) in a.report.checks.iter().zip(b.report.checks.iter()) {
        assert_eq!(ca.id, cb.id);
        assert_eq!(ca.samples, cb.samples);
        // byte-identical numeric fields
        assert_eq!(ca.worst_slack.to_bits(), cb.worst_slack.to_bits());
        assert_eq!(ca.tolerance.to_bits(), cb.tolerance.to_bits());
        assert_eq!(ca.pass, cb.pass);
    }
    assert_eq!(a.offenders_csv, b.offenders_csv);
}

#[test]
fn different_seed_changes_samples() {
    // worst slacks may collide on ulp-quantised values, but the sampled
    // offenders certainly differ
    let a = run_suite(SuiteKind::Disk, 1, Some(400)).unwrap();
    let b = run_suite(SuiteKind::Disk, 2, Some(400)).unwrap();
    assert_ne!(a.offenders_csv, b.offenders_csv);
}

#[test]
fn report_schema_and_csv_shape() {
    let out = run_suite(SuiteKind::Cover, 3, Some(200)).unwrap();
    assert!(out.report.passed);
    assert_eq!(out.report.schema, 1);
    assert_eq!(out.report.suite, "cover");
    let json: serde_json::Value = serde_json::from_str(&out.report.to_json()).unwrap();
    assert_eq!(json["schema"], 1);
    assert_eq!(json["seed"], 3);
    assert!(json["checks"].as_array().unwrap().len() >= 8);
    for c in json["checks"].as_array().unwrap() {
        assert!(c["id"].is_string());
        assert!(c["anchor"].is_string());
        assert!(c["worst_slack"].is_number());
        assert!(c["pass"].is_boolean());
    }
    // csv has a header and at least one offender row
    let mut lines = out.offenders_csv.lines();
    assert_eq!(lines.next().unwrap(), "check_id,rank,slack,detail");
    assert!(lines.next().is_some());
}

#[test]
fn thread_cap_env_is_honoured() {
    // capping to a single worker must not change the numbers
    let baseline = run_suite(SuiteKind::Disk, 11, Some(300)).unwrap();
    std::env::set_var(punct_metrics::verify::THREADS_ENV, "1");
    let capped = run_suite(SuiteKind::Disk, 11, Some(300)).unwrap();
    std::env::remove_var(punct_metrics::verify::THREADS_ENV);
    for (ca, cb) in baseline.report.checks.iter().zip(capped.report.checks.iter()) {
        assert_eq!(ca.worst_slack.to_bits(), cb.worst_slack.to_bits());
    }
}
