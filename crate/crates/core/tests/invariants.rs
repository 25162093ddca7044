use flowsort_choquet::capacity::{
    choquet_lattice, choquet_mobius, choquet_shapley_form, choquet_two_additive, lattice_to_mobius,
    mobius_to_lattice, mobius_to_shapley_interaction, validate_lattice, Subset,
};
use flowsort_choquet::engine::{flows_unchecked, sort_all, FlowKind};
use flowsort_choquet::verification::{
    gen_problem, gen_two_additive, oracle_choquet, oracle_lattice, InstanceGenConfig,
};
use flowsort_choquet::{
    SortOptions, ValidationMode, CROSS_FORM_TOLERANCE, REPRESENTATION_TOLERANCE,
};
use proptest::prelude::*;

fn model_inputs() -> impl Strategy<Value = (usize, u64, f64, f64)> {
    (2usize..=6, any::<u64>(), 0.0..=1.0f64, 0.0..=1.0f64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn four_forms_agree_with_level_set_oracle(
        (n, seed, density, magnitude) in model_inputs(),
        raw in prop::collection::vec(0.0..=1.0f64, 6),
    ) {
        let model = gen_two_additive(n, seed, density, magnitude).unwrap();
        let x = &raw[..n];
        let mobius = model.to_mobius();
        let lattice = mobius_to_lattice(&mobius).unwrap();
        let reference = oracle_choquet(x, &oracle_lattice(&model).unwrap());
        for v in [
            choquet_lattice(x, &lattice).unwrap(),
            choquet_mobius(x, &mobius).unwrap(),
            choquet_two_additive(x, &mobius).unwrap(),
            choquet_shapley_form(x, &model).unwrap(),
        ] {
            prop_assert!((v - reference).abs() < CROSS_FORM_TOLERANCE, "{v} vs {reference}");
        }
    }

    #[test]
    fn representations_round_trip((n, seed, density, magnitude) in model_inputs()) {
        let model = gen_two_additive(n, seed, density, magnitude).unwrap();
        let mobius = model.to_mobius();
        let lattice = mobius_to_lattice(&mobius).unwrap();
        prop_assert!(validate_lattice(&lattice).is_valid());
        let back = lattice_to_mobius(&lattice);
        for set in Subset::full(n).subsets() {
            prop_assert!((back.mass(set) - mobius.mass(set)).abs() < REPRESENTATION_TOLERANCE);
        }
        let again =
            mobius_to_shapley_interaction(&back.truncated(2, REPRESENTATION_TOLERANCE).unwrap()).unwrap();
        for j in 0..n {
            prop_assert!((again.shapley()[j] - model.shapley()[j]).abs() < REPRESENTATION_TOLERANCE);
            for s in j + 1..n {
                prop_assert!(
                    (again.interaction(j, s) - model.interaction(j, s)).abs() < REPRESENTATION_TOLERANCE
                );
            }
        }
    }

    #[test]
    fn constant_vectors_are_fixed_points(
        (n, seed, density, magnitude) in model_inputs(),
        c in 0.0..=1.0f64,
    ) {
        let model = gen_two_additive(n, seed, density, magnitude).unwrap();
        let v = choquet_shapley_form(&vec![c; n], &model).unwrap();
        prop_assert!((v - c).abs() < REPRESENTATION_TOLERANCE);
    }

    #[test]
    fn integral_is_monotone_and_bounded(
        (n, seed, density, magnitude) in model_inputs(),
        raw in prop::collection::vec(0.0..=1.0f64, 6),
        bump in prop::collection::vec(0.0..=1.0f64, 6),
    ) {
        let model = gen_two_additive(n, seed, density, magnitude).unwrap();
        let x = &raw[..n];
        let y: Vec<f64> = x.iter().zip(&bump).map(|(a, b)| (a + b).min(1.0)).collect();
        let cx = choquet_shapley_form(x, &model).unwrap();
        let cy = choquet_shapley_form(&y, &model).unwrap();
        prop_assert!(cy >= cx - REPRESENTATION_TOLERANCE);
        let lo = x.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = x.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        prop_assert!(cx >= lo - REPRESENTATION_TOLERANCE && cx <= hi + REPRESENTATION_TOLERANCE);
    }

    #[test]
    fn local_flows_are_balanced(seed in any::<u64>(), n in 1usize..=5, k in 1usize..=4) {
        let cfg = InstanceGenConfig {
            n_criteria: n,
            n_categories: k,
            n_alternatives: 4,
            seed,
            mode: ValidationMode::Strict,
            ..InstanceGenConfig::default()
        };
        let problem = gen_problem(&cfg).unwrap();
        for row in problem.alternatives().rows() {
            let flows = flows_unchecked(&problem.outranking_matrix(row).unwrap());
            let net: f64 = flows.flows(FlowKind::Net).iter().sum();
            prop_assert!(net.abs() < 1e-12);
            let pos: f64 = flows.flows(FlowKind::Positive).iter().sum();
            let neg: f64 = flows.flows(FlowKind::Negative).iter().sum();
            prop_assert!((pos - neg).abs() < 1e-12);
            for v in flows.flows(FlowKind::Positive).iter().chain(flows.flows(FlowKind::Negative)) {
                prop_assert!((-1e-12..=1.0 + 1e-12).contains(v));
            }
        }
    }

    #[test]
    fn sorting_is_deterministic(seed in any::<u64>()) {
        let cfg = InstanceGenConfig { seed, ..InstanceGenConfig::default() };
        let problem = gen_problem(&cfg).unwrap();
        let a = sort_all(&problem, &SortOptions::default()).unwrap();
        let b = sort_all(&gen_problem(&cfg).unwrap(), &SortOptions::default()).unwrap();
        prop_assert_eq!(a, b);
    }
}
