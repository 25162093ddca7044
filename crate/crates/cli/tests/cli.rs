use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(name)
}

fn flowsort(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flowsort"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn path(name: &str) -> String {
    fixture(name).display().to_string()
}

#[test]
fn sort_prints_table_with_three_rules() {
    let out = flowsort(&["sort", &path("car_example.toml")]);
    assert!(out.status.success());
    let text = stdout(&out);
    let a6 = text.lines().find(|l| l.starts_with("a6 ")).unwrap();
    assert!(a6.trim_end().ends_with("K_2      K_1      K_2"), "{a6}");
}

#[test]
fn sort_writes_csv_for_one_rule_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("out.csv");
    let out = flowsort(&[
        "sort",
        &path("car_example.toml"),
        "--rule",
        "net",
        "--form",
        "lattice",
        "--format",
        "csv",
        "--output",
        target.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let csv = std::fs::read_to_string(target).unwrap();
    assert!(csv.starts_with("alternative,net,"));
    assert!(csv.lines().any(|l| l.starts_with("a10,K_3,")));
}

#[test]
fn json_output_is_stable() {
    let args = ["sort", &path("car_example.toml"), "--format", "json"];
    let a = flowsort(&args);
    let b = flowsort(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn scenarios_mark_changes() {
    let out = flowsort(&["scenarios", &path("car_scenarios.toml")]);
    assert!(out.status.success());
    let text = stdout(&out);
    let a6 = text.lines().find(|l| l.starts_with("a6 ")).unwrap();
    assert!(a6.trim_end().ends_with("*K_1  *K_1"), "{a6}");
}

#[test]
fn baseline_prints_both_scores() {
    let out = flowsort(&[
        "baseline",
        &path("commensurability.toml"),
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(
        text.lines().any(|l| l.starts_with("a2,0.2,1,0.52,2.4")),
        "{text}"
    );
}

#[test]
fn invalid_input_exits_with_validation_code() {
    let out = flowsort(&["sort", &path("invalid/price_below_best_profile.toml")]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("alternatives.a1.price"), "{err}");
}

#[test]
fn malformed_input_exits_with_parse_code() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "schema = [").unwrap();
    let out = flowsort(&["sort", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_rule_exits_with_validation_code() {
    let out = flowsort(&["sort", &path("car_example.toml"), "--rule", "median"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_on_random_problems_is_seeded() {
    let args = [
        "verify",
        "--instances",
        "30",
        "--seed",
        "2",
        "--interaction-signs",
        "non_negative",
        "--format",
        "json",
    ];
    let a = flowsort(&args);
    assert!(a.status.success(), "{}", stdout(&a));
    assert_eq!(a.stdout, flowsort(&args).stdout);
    let report: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(report["seeds"].as_array().unwrap().len(), 30);
}

#[test]
fn verify_exits_with_one_on_a_failing_property() {
    let out = flowsort(&[
        "verify",
        &path("car_example.toml"),
        "--properties",
        "degree_asymmetry",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("degree_asymmetry"));
    let out = flowsort(&[
        "verify",
        &path("car_example.toml"),
        "--properties",
        "uniqueness,category_conformity,net_between",
    ]);
    assert!(out.status.success(), "{}", stdout(&out));
}
