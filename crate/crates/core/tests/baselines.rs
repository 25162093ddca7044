use flowsort_choquet::baselines::{direct_choquet_scores, min_max_normalize};
use flowsort_choquet::capacity::ShapleyInteractionModel;
use flowsort_choquet::engine::sort_all;
use flowsort_choquet::fixtures::{car_example, commensurability_file};
use flowsort_choquet::io::{run_baseline, OptionsSpec};
use flowsort_choquet::{CapacityModel, DecisionMatrix, Registry};

fn two_criteria_capacity() -> CapacityModel {
    CapacityModel::from_shapley_interaction(
        ShapleyInteractionModel::new(vec![0.5, 0.5], [((0, 1), 0.2)]).unwrap(),
    )
}

fn assert_close(got: &[f64], want: &[f64]) {
    assert_eq!(got.len(), want.len());
    for (g, w) in got.iter().zip(want) {
        assert!((g - w).abs() <= 1e-12, "{got:?} vs {want:?}");
    }
}

#[test]
fn qualitative_scores() {
    let report = run_baseline(&commensurability_file(), &Registry::default()).unwrap();
    assert_close(
        report.qualitative_scores.as_deref().unwrap(),
        &[2.4, 2.4, 1.8],
    );
}

#[test]
fn min_max_scores() {
    let report = run_baseline(&commensurability_file(), &Registry::default()).unwrap();
    assert_close(&report.normalized[0], &[1.0, 0.0]);
    assert_close(&report.normalized[1], &[0.2, 1.0]);
    assert_close(&report.normalized[2], &[0.0, 1.0]);
    assert_close(&report.normalized_scores, &[0.4, 0.52, 0.4]);
}

#[test]
fn scores_by_hand() {
    let m = DecisionMatrix::new(
        vec!["x".into(), "y".into()],
        vec![vec![3.0, 2.0], vec![0.2, 1.0]],
        2,
    )
    .unwrap();
    // 2 + (3 − 2)·μ({1}) with μ({1}) = 0.5 − 0.1
    let s = direct_choquet_scores(&m, &two_criteria_capacity()).unwrap();
    assert_close(&s, &[2.4, 0.2 + 0.8 * 0.4]);
}

#[test]
fn normalization_rejects_constant_columns() {
    let file = commensurability_file();
    let m = DecisionMatrix::new(
        vec!["a".into(), "b".into()],
        vec![vec![1.0, 2.0], vec![1.0, 3.0]],
        2,
    )
    .unwrap();
    assert!(min_max_normalize(&m, &file.criteria).is_err());
}

#[test]
fn alternative_on_a_profile_is_assigned_by_each_rule() {
    // A copy of r_2 ties with it under every flow. The positive and net rules
    // put ties in the category r_2 bounds from above, the negative rule in
    // the one it bounds from below.
    let loaded = car_example(&OptionsSpec::default()).unwrap();
    let r2 = loaded.problem.profiles().profiles()[1].clone();
    let m = DecisionMatrix::new(vec!["at_r2".into()], vec![r2], 4).unwrap();
    let problem = loaded.problem.with_alternatives(m).unwrap();
    let result = sort_all(&problem, &loaded.options).unwrap();
    let cats: Vec<usize> = result.alternatives[0]
        .categories
        .iter()
        .map(|c| c.index())
        .collect();
    assert_eq!(cats, vec![2, 1, 2]);
}
