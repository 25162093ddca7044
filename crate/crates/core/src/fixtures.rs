//! Bundled example problems.
//!
//! The car example has ten cars, four criteria on unrelated scales, four
//! limiting profiles and three categories. The commensurability example holds
//! three cars rated on two criteria, with qualitative and raw evaluations.

use crate::error::Result;
use crate::io::{load_parsed, LoadedProblem, OptionsSpec, ProblemFile, ScenarioSet};
use crate::registry::Registry;

pub const CAR_EXAMPLE: &str = include_str!("../fixtures/car_example.toml");
pub const CAR_SCENARIOS: &str = include_str!("../fixtures/car_scenarios.toml");
pub const COMMENSURABILITY: &str = include_str!("../fixtures/commensurability.toml");

/// Category labels of the car example, best first.
pub const CAR_CATEGORIES: [&str; 3] = ["very feasible", "feasible", "not feasible"];

pub fn car_example_file() -> ProblemFile {
    ProblemFile::parse(CAR_EXAMPLE, "car_example.toml").expect("bundled car example parses")
}

/// The car example with the default registry and options overridden by
/// `overrides`.
pub fn car_example(overrides: &OptionsSpec) -> Result<LoadedProblem> {
    load_parsed(
        car_example_file(),
        "car_example.toml",
        &Registry::default(),
        overrides,
    )
}

/// The scenario set with its base problem inlined, so it runs without the
/// fixture directory.
pub fn car_scenarios() -> ScenarioSet {
    let mut set = ScenarioSet::parse(CAR_SCENARIOS, "car_scenarios.toml")
        .expect("bundled scenario set parses");
    set.base = crate::io::BaseProblem::Inline(Box::new(car_example_file()));
    set
}

pub fn commensurability_file() -> ProblemFile {
    ProblemFile::parse(COMMENSURABILITY, "commensurability.toml")
        .expect("bundled commensurability example parses")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::sort_all;

    #[test]
    fn bundled_examples_load() {
        let loaded = car_example(&OptionsSpec::default()).unwrap();
        assert_eq!(loaded.problem.alternatives().len(), 10);
        assert_eq!(
            loaded.problem.profiles().labels(),
            &CAR_CATEGORIES.map(String::from)
        );
        let result = sort_all(&loaded.problem, &loaded.options).unwrap();
        assert_eq!(result.alternatives.len(), 10);
        commensurability_file();
        car_scenarios();
    }
}
