//! End-to-end tests of the command-line interface: output format, exit
//! codes, and the report files.

use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_punct-metrics"))
}

fn temp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("punct-metrics-test-{}-{name}", std::process::id()));
    p
}

fn write_standard_config(tag: &str) -> PathBuf {
    let path = temp_path(&format!("{tag}-config.json"));
    std::fs::write(&path, r#"{"punctures": [[0.0, 0.0], [1.0, 0.0], "inf"]}"#).unwrap();
    path
}

#[test]
fn dist_d_prints_12_significant_digits() {
    let e1 = format!("{}", (-1.0f64).exp());
    let out = bin()
        .args(["dist", "D", &e1, &format!("-{e1}")])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "2.00000000000");
}

#[test]
fn dist_hdstar_half_log_two() {
    let e1 = format!("{}", (-1.0f64).exp());
    let e2 = format!("{}", (-2.0f64).exp());
    let out = bin().args(["dist", "hDstar", &e1, &e2]).output().unwrap();
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8_lossy(&out.stdout).trim(),
        "0.346573590280"
    );
}

#[test]
fn dist_dx_needs_config() {
    let out = bin().args(["dist", "dX", "0.1", "0.2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn dist_dx_with_config() {
    let cfg = write_standard_config("dx");
    let out = bin()
        .args(["dist", "dX", "0.1", "0.2", "--config"])
        .arg(&cfg)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: f64 = String::from_utf8_lossy(&out.stdout).trim().parse().unwrap();
    assert!(v > 0.0 && v < 1.0);
    std::fs::remove_file(cfg).ok();
}

#[test]
fn exit_codes_follow_error_kinds() {
    // parse failure: 2
    let out = bin().args(["dist", "D", "zzz", "0.1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    // unknown kind rejected by the parser: 2
    let out = bin().args(["dist", "nope", "0.1", "0.2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    // domain error (outside E*): 3
    let out = bin().args(["dist", "D", "0.9", "0.1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    // domain error (puncture): 3
    let out = bin().args(["dist", "hC01", "0", "0.5"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    // constants with rho out of range: 3
    let out = bin().args(["constants", "--rho", "5.0"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn constants_table_contains_expected_values() {
    let out = bin().args(["constants"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout).to_string();
    assert!(text.contains("K      = 0.846666"), "{text}");
    assert!(text.contains("exp(K) = 2.33185"), "{text}");
    assert!(text.contains("C0     = 4.37687"), "{text}");
    assert!(text.contains("M0     = 23.2008"), "{text}");
    let cfg = write_standard_config("constants");
    let out = bin().args(["constants", "--config"]).arg(&cfg).output().unwrap();
    let text = String::from_utf8_lossy(&out.stdout).to_string();
    assert!(text.contains("N1     = 0.234199"), "{text}");
    assert!(text.contains("N2"), "{text}");
    std::fs::remove_file(cfg).ok();
}

#[test]
fn verify_writes_report_and_csv() {
    let report_path = temp_path("report.json");
    let out = bin()
        .args(["verify", "--suite", "disk", "--seed", "9", "--samples", "300", "--out"])
        .arg(&report_path)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&report_path).unwrap();
    let json: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(json["schema"], 1);
    assert_eq!(json["suite"], "disk");
    assert_eq!(json["seed"], 9);
    let csv_path = report_path.with_extension("offenders.csv");
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    assert!(csv.starts_with("check_id,rank,slack,detail"));
    std::fs::remove_file(report_path).ok();
    std::fs::remove_file(csv_path).ok();
}

#[test]
fn verify_is_deterministic_across_runs() {
    let run = |path: &PathBuf| {
        let out = bin()
            .args(["verify", "--suite", "disk", "--seed", "4", "--samples", "200", "--out"])
            .arg(path)
            .output()
            .unwrap();
        assert!(out.status.success());
        let mut json: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
        // wall time is the one legitimately varying field
        json.as_object_mut().unwrap().remove("wall_time_ms");
        std::fs::remove_file(path).ok();
        std::fs::remove_file(path.with_extension("offenders.csv")).ok();
        json
    };
    let p1 = temp_path("det1.json");
    let p2 = temp_path("det2.json");
    assert_eq!(run(&p1), run(&p2));
}

#[test]
fn verify_rejects_unknown_suite() {
    let out = bin().args(["verify", "--suite", "bogus"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
