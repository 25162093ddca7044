use std::path::{Path, PathBuf};

use flowsort_choquet::engine::sort_all;
use flowsort_choquet::fixtures::{
    car_example, car_example_file, car_scenarios, commensurability_file,
};
use flowsort_choquet::io::{
    emit_baseline, emit_report, emit_scenarios, load_parsed, load_problem, run_baseline,
    run_scenarios, OptionsSpec, ProblemFile, ReportFormat, Scenario, ScenarioSet, SortReport,
};
use flowsort_choquet::{Category, Constraint, Error, Registry, ValidationMode};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn invalid_report(name: &str) -> flowsort_choquet::ValidationReport {
    match load_problem(
        &fixture(name),
        &Registry::default(),
        &OptionsSpec::default(),
    ) {
        Err(Error::Invalid(report)) => report,
        other => panic!("expected a validation error, got {other:?}"),
    }
}

#[test]
fn alternative_outside_profile_band_is_located() {
    let report = invalid_report("invalid/price_below_best_profile.toml");
    let v = report
        .violations
        .iter()
        .find(|v| v.constraint == Constraint::EvaluationBounds)
        .unwrap();
    let location = v.location.as_deref().unwrap();
    assert!(location.ends_with("alternatives.a1.price"), "{location}");
    assert!(location.contains("price_below_best_profile.toml"));
    assert!(v.message.contains("r_1"), "{}", v.message);
}

#[test]
fn shapley_values_must_sum_to_one() {
    let report = invalid_report("invalid/shapley_sum_below_one.toml");
    let v = &report.violations[0];
    assert_eq!(v.constraint, Constraint::ShapleyNormalization);
    assert!(v.location.as_deref().unwrap().contains("capacity"));
    assert!(v.message.contains("0.9"));
    assert_eq!(Error::Invalid(report).exit_code(), 3);
}

#[test]
fn exit_codes_separate_failure_kinds() {
    let parse = ProblemFile::parse("schema = 3", "bad.toml").unwrap_err();
    assert!(matches!(parse, Error::Parse { .. }));
    assert_eq!(parse.exit_code(), 2);
    assert_eq!(Error::Inconsistency("x".into()).exit_code(), 4);
    assert_eq!(Error::Structural("x".into()).exit_code(), 3);
    let unknown = Registry::default().assignment_rule("median").unwrap_err();
    assert_eq!(unknown.exit_code(), 3);
    assert!(unknown.to_string().contains("positive"));
}

#[test]
fn unknown_fields_are_rejected() {
    let text = car_example_file();
    let mut toml_text = toml::to_string(&text).unwrap();
    toml_text.push_str("\n[extra]\nx = 1\n");
    assert!(matches!(
        ProblemFile::parse(&toml_text, "extra.toml"),
        Err(Error::Parse { .. })
    ));
}

#[test]
fn toml_round_trip_preserves_the_problem() {
    let file = car_example_file();
    let text = toml::to_string(&file).unwrap();
    assert_eq!(ProblemFile::parse(&text, "again.toml").unwrap(), file);
}

#[test]
fn json_report_reloads_to_identical_assignments() {
    let loaded = car_example(&OptionsSpec::default()).unwrap();
    let result = sort_all(&loaded.problem, &loaded.options).unwrap();
    let report = SortReport::new(&loaded.file, &loaded.settings, result.clone());
    let json = emit_report(&report, ReportFormat::Json).unwrap();

    let value: serde_json::Value = serde_json::from_str(&json).unwrap();
    let file: ProblemFile = serde_json::from_value(value["problem"].clone()).unwrap();
    let again = load_parsed(
        file,
        "report.json",
        &Registry::default(),
        &OptionsSpec::default(),
    )
    .unwrap();
    assert_eq!(again.settings, loaded.settings);
    let rerun = sort_all(&again.problem, &again.options).unwrap();
    assert_eq!(rerun, result);
    assert_eq!(serde_json::to_value(&rerun).unwrap(), value["results"]);
}

#[test]
fn overrides_take_precedence_over_file_options() {
    let loaded = car_example(&OptionsSpec {
        mode: Some(ValidationMode::Weak),
        rules: Some(vec!["net".into()]),
        form: Some("lattice".into()),
        tie_tolerance: Some(0.0),
    })
    .unwrap();
    assert_eq!(loaded.settings.mode, ValidationMode::Weak);
    assert_eq!(loaded.settings.form, "lattice");
    assert_eq!(loaded.options.rules.len(), 1);
    assert_eq!(loaded.options.tie_tolerance, 0.0);
}

#[test]
fn plain_table_rounds_to_three_decimals() {
    let loaded = car_example(&OptionsSpec::default()).unwrap();
    let result = sort_all(&loaded.problem, &loaded.options).unwrap();
    let report = SortReport::new(&loaded.file, &loaded.settings, result);
    let table = emit_report(&report, ReportFormat::PlainTable).unwrap();
    let a1 = table.lines().find(|l| l.starts_with("a1 ")).unwrap();
    assert!(a1.contains("0.645"), "{a1}");
    assert!(a1.contains("-1.000"));
    let csv = emit_report(&report, ReportFormat::Csv).unwrap();
    assert_eq!(csv.lines().count(), 11);
    assert!(csv.starts_with("alternative,positive,negative,net,positive_a,"));
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let render = || {
        let loaded = car_example(&OptionsSpec::default()).unwrap();
        let result = sort_all(&loaded.problem, &loaded.options).unwrap();
        let report = SortReport::new(&loaded.file, &loaded.settings, result);
        [
            ReportFormat::Json,
            ReportFormat::Csv,
            ReportFormat::PlainTable,
        ]
        .map(|f| emit_report(&report, f).unwrap())
    };
    assert_eq!(render(), render());
}

#[test]
fn scenario_file_resolves_base_relative_to_its_directory() {
    let set = ScenarioSet::read(&fixture("car_scenarios.toml")).unwrap();
    let cmp = run_scenarios(
        &set,
        &fixture(""),
        &Registry::default(),
        &OptionsSpec::default(),
    )
    .unwrap();
    let inline = run_scenarios(
        &car_scenarios(),
        Path::new("."),
        &Registry::default(),
        &OptionsSpec::default(),
    )
    .unwrap();
    assert_eq!(cmp.categories, inline.categories);
    let table = emit_scenarios(&cmp, ReportFormat::PlainTable).unwrap();
    assert!(table.contains("*K_2"), "{table}");
}

#[test]
fn duplicate_scenario_names_are_structural_errors() {
    let mut set = car_scenarios();
    let first: Scenario = set.scenarios[0].clone();
    set.scenarios.push(first);
    let err = run_scenarios(
        &set,
        Path::new("."),
        &Registry::default(),
        &OptionsSpec::default(),
    )
    .unwrap_err();
    assert!(matches!(err, Error::Structural(_)), "{err}");
    assert_eq!(err.exit_code(), 3);
}

#[test]
fn invalid_scenario_capacity_names_the_scenario() {
    let mut set = car_scenarios();
    set.scenarios[1].shapley.insert("price".into(), 0.5);
    match run_scenarios(
        &set,
        Path::new("."),
        &Registry::default(),
        &OptionsSpec::default(),
    ) {
        Err(Error::Invalid(report)) => {
            let loc = report.violations[0].location.clone().unwrap();
            assert!(loc.contains("scenarios.Scen1"), "{loc}");
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn baseline_report_renders_both_scales() {
    let report = run_baseline(&commensurability_file(), &Registry::default()).unwrap();
    let table = emit_baseline(&report, ReportFormat::PlainTable).unwrap();
    assert!(
        table.contains("2.400") && table.contains("0.520"),
        "{table}"
    );
    let csv = emit_baseline(&report, ReportFormat::Csv).unwrap();
    assert!(csv.lines().next().unwrap().ends_with("qualitative_score"));
}

#[test]
fn categories_serialize_as_indices() {
    assert_eq!(serde_json::to_string(&Category::new(2)).unwrap(), "2");
}
