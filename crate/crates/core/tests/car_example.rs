use flowsort_choquet::engine::{sort_all, FlowKind};
use flowsort_choquet::fixtures::{car_example, car_scenarios};
use flowsort_choquet::io::{run_scenarios, OptionsSpec};
use flowsort_choquet::preference::pairwise_degrees;
use flowsort_choquet::{Category, Registry};

mod common;
use common::{A1_DEGREES, ASSIGNMENTS, FLOWS, PUBLISHED_ROUNDING, SCENARIO_NET};

fn with_form(form: &str) -> OptionsSpec {
    OptionsSpec {
        form: Some(form.to_string()),
        ..OptionsSpec::default()
    }
}

fn ordered(values: &[f64]) -> Vec<f64> {
    let a = values.len() - 1;
    std::iter::once(values[a])
        .chain(values[..a].iter().copied())
        .collect()
}

#[test]
fn flows_match_published_table() {
    let loaded = car_example(&OptionsSpec::default()).unwrap();
    let result = sort_all(&loaded.problem, &loaded.options).unwrap();
    let mut worst = 0.0f64;
    for (i, alt) in result.alternatives.iter().enumerate() {
        for (k, kind) in [FlowKind::Positive, FlowKind::Negative, FlowKind::Net]
            .into_iter()
            .enumerate()
        {
            let got = ordered(alt.flows.flows(kind));
            for (e, (g, want)) in got.iter().zip(FLOWS[i][k]).enumerate() {
                let gap = (g - want).abs();
                worst = worst.max(gap);
                assert!(
                    gap <= PUBLISHED_ROUNDING,
                    "{} {kind:?} element {e}: computed {g}, published {want}",
                    alt.name
                );
            }
        }
    }
    assert!(worst <= PUBLISHED_ROUNDING);
}

#[test]
fn assignments_match_under_every_form() {
    for form in ["shapley", "two_additive", "mobius", "lattice"] {
        let loaded = car_example(&with_form(form)).unwrap();
        let result = sort_all(&loaded.problem, &loaded.options).unwrap();
        for (i, expected) in ASSIGNMENTS.iter().enumerate() {
            for (rule, want) in ["positive", "negative", "net"].iter().zip(expected) {
                assert_eq!(
                    result.category(i, rule),
                    Some(Category::new(*want)),
                    "form {form}, a{} under {rule}",
                    i + 1
                );
            }
        }
    }
}

#[test]
fn labels_follow_categories() {
    let loaded = car_example(&OptionsSpec::default()).unwrap();
    let result = sort_all(&loaded.problem, &loaded.options).unwrap();
    assert_eq!(
        result.label(result.category(0, "net").unwrap()),
        "very feasible"
    );
    assert_eq!(
        result.label(result.category(9, "net").unwrap()),
        "not feasible"
    );
}

#[test]
fn scenarios_match_published_table() {
    for form in ["shapley", "mobius"] {
        let cmp = run_scenarios(
            &car_scenarios(),
            std::path::Path::new("."),
            &Registry::default(),
            &with_form(form),
        )
        .unwrap();
        assert_eq!(cmp.rule, "net");
        for (name, expected) in SCENARIO_NET {
            let got: Vec<usize> = cmp
                .column(name)
                .unwrap()
                .iter()
                .map(|c| c.index())
                .collect();
            assert_eq!(got, expected, "{name} with form {form}");
        }
    }
}

#[test]
fn tiny_interaction_changes_nothing_beyond_noise() {
    // 1e-15 on one interaction moves a2's net flow by less than the tie tolerance.
    let cmp = run_scenarios(
        &car_scenarios(),
        std::path::Path::new("."),
        &Registry::default(),
        &OptionsSpec::default(),
    )
    .unwrap();
    assert_eq!(cmp.column("Scen0"), cmp.column("Scen3"));
    assert!(!cmp.changed.iter().any(|row| row[3]));
}

#[test]
fn a1_degrees_against_profiles() {
    let loaded = car_example(&OptionsSpec::default()).unwrap();
    let p = &loaded.problem;
    let tensor = pairwise_degrees(p.alternatives().row(0), p.profiles(), p.criteria()).unwrap();
    let a = tensor.size() - 1;
    for h in 0..4 {
        for (j, want) in A1_DEGREES.iter().enumerate() {
            assert_eq!(tensor.get(a, h)[j], want[h], "criterion {j}, r_{}", h + 1);
        }
    }
    // the one degree worked out by hand: CI(a1, r_2)
    assert!((p.model().degree(tensor.get(a, 1)).unwrap() - 0.58).abs() < 1e-12);
}
