use std::collections::{BTreeMap, HashSet};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::capacity::{validate_two_additive, CapacityModel, ShapleyInteractionModel};
use crate::engine::{sort_all, Category};
use crate::error::{Error, Result};
use crate::io::problem::{load_parsed, LoadedProblem, OptionsSpec, PairValue, ProblemFile};
use crate::outranking::{ChoquetOutranking, OutrankingModel};
use crate::registry::Registry;
use crate::validation::{Constraint, ValidationReport, Violation};

pub const SCENARIO_SCHEMA: &str = "flowsort-choquet-scenarios/1";

/// The problem the scenarios modify: a path relative to the scenario file, or
/// the problem itself.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BaseProblem {
    Path(String),
    Inline(Box<ProblemFile>),
}

/// A capacity override: Shapley importances and pairwise interactions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    pub shapley: BTreeMap<String, f64>,
    #[serde(default)]
    pub interactions: Vec<PairValue>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioSet {
    pub schema: String,
    pub base: BaseProblem,
    /// Rule whose categories are compared; defaults to `net`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rule: Option<String>,
    pub scenarios: Vec<Scenario>,
}

/// One category column per scenario, with markers where a scenario differs
/// from the first one.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioComparison {
    pub rule: String,
    pub scenarios: Vec<String>,
    pub alternatives: Vec<String>,
    /// `categories[i][s]`: alternative `i` under scenario `s`.
    pub categories: Vec<Vec<Category>>,
    pub changed: Vec<Vec<bool>>,
}

impl ScenarioComparison {
    pub fn column(&self, scenario: &str) -> Option<Vec<Category>> {
        let s = self.scenarios.iter().position(|n| n == scenario)?;
        Some(self.categories.iter().map(|row| row[s]).collect())
    }
}

impl ScenarioSet {
    pub fn parse(text: &str, source_name: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse {
            source_name: source_name.to_string(),
            message: e.to_string(),
        })
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?, &path.display().to_string())
    }

    /// The base problem file; relative paths resolve against `dir`.
    pub fn base_file(&self, dir: &Path) -> Result<(ProblemFile, String)> {
        match &self.base {
            BaseProblem::Inline(file) => Ok(((**file).clone(), "base".to_string())),
            BaseProblem::Path(p) => {
                let path: PathBuf = dir.join(p);
                Ok((ProblemFile::read(&path)?, path.display().to_string()))
            }
        }
    }
}

fn scenario_model(scenario: &Scenario, base: &LoadedProblem) -> Result<ShapleyInteractionModel> {
    let names: Vec<&str> = base.problem.criteria().iter().map(|c| c.name()).collect();
    let index = |name: &str, what: &str| {
        names.iter().position(|n| *n == name).ok_or_else(|| {
            Error::structural(format!(
                "scenario {}: unknown criterion {name} in {what}",
                scenario.name
            ))
        })
    };
    let mut shapley = vec![0.0; names.len()];
    for (name, v) in &scenario.shapley {
        shapley[index(name, "shapley")?] = *v;
    }
    if let Some(missing) = names.iter().find(|n| !scenario.shapley.contains_key(**n)) {
        return Err(Error::structural(format!(
            "scenario {}: missing Shapley value for {missing}",
            scenario.name
        )));
    }
    let pairs = scenario
        .interactions
        .iter()
        .map(|p| {
            Ok((
                (
                    index(&p.pair[0], "interactions")?,
                    index(&p.pair[1], "interactions")?,
                ),
                p.value,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let model = ShapleyInteractionModel::new(shapley, pairs)?;
    let report = validate_two_additive(&model);
    if !report.is_valid() {
        return Err(Error::Invalid(
            report.located(&format!("scenarios.{}", scenario.name)),
        ));
    }
    Ok(model)
}

/// Sorts the base problem once per scenario capacity and compares the
/// categories under the set's rule (net flow by default).
pub fn run_scenarios(
    set: &ScenarioSet,
    dir: &Path,
    registry: &Registry,
    overrides: &OptionsSpec,
) -> Result<ScenarioComparison> {
    if set.schema != SCENARIO_SCHEMA {
        return Err(Error::Invalid(ValidationReport {
            violations: vec![Violation::new(
                Constraint::Schema,
                format!("expected schema {SCENARIO_SCHEMA}, found {}", set.schema),
            )
            .at("schema")],
        }));
    }
    let mut seen = HashSet::new();
    if let Some(dup) = set.scenarios.iter().find(|s| !seen.insert(s.name.as_str())) {
        return Err(Error::structural(format!(
            "scenario {} is defined twice",
            dup.name
        )));
    }
    if set.scenarios.is_empty() {
        return Err(Error::structural("no scenarios given"));
    }
    let (file, source) = set.base_file(dir)?;
    let base = load_parsed(file, &source, registry, overrides)?;
    let rule_name = set.rule.clone().unwrap_or_else(|| "net".to_string());
    let rule = registry.assignment_rule(&rule_name)?;
    let mut options = base.options.clone();
    options.rules = vec![rule];
    let form = registry.choquet_form(&base.settings.form)?;

    let columns = set
        .scenarios
        .par_iter()
        .map(|scenario| {
            let model = scenario_model(scenario, &base)?;
            let outranking: Arc<dyn OutrankingModel> = Arc::new(ChoquetOutranking::new(
                Arc::new(CapacityModel::from_shapley_interaction(model)),
                form.clone(),
            ));
            let problem = base.problem.with_model(outranking)?;
            let result = sort_all(&problem, &options)?;
            Ok(result.column(&rule_name).expect("single rule"))
        })
        .collect::<Result<Vec<_>>>()?;

    let alternatives = base.problem.alternatives().names().to_vec();
    let categories: Vec<Vec<Category>> = (0..alternatives.len())
        .map(|i| columns.iter().map(|col| col[i]).collect())
        .collect();
    let changed = categories
        .iter()
        .map(|row| row.iter().map(|c| *c != row[0]).collect())
        .collect();
    Ok(ScenarioComparison {
        rule: rule_name,
        scenarios: set.scenarios.iter().map(|s| s.name.clone()).collect(),
        alternatives,
        categories,
        changed,
    })
}
