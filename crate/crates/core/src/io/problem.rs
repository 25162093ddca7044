use std::collections::{BTreeMap, HashMap, HashSet};
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::capacity::{
    CapacityLattice, CapacityModel, MobiusRepresentation, ShapleyInteractionModel, Subset,
};
use crate::engine::{SortOptions, SortingProblem};
use crate::error::{Error, Result};
use crate::outranking::{ChoquetOutranking, OutrankingModel};
use crate::preference::{Criterion, CriterionSpec, DecisionMatrix, ReferenceProfileSet};
use crate::registry::Registry;
use crate::validation::{Constraint, ValidationMode, ValidationReport, Violation};
use crate::DEFAULT_TIE_TOLERANCE;

/// Schema tag every problem file must carry.
pub const PROBLEM_SCHEMA: &str = "flowsort-choquet/1";

/// A named evaluation vector keyed by criterion name.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedValues {
    pub name: String,
    pub values: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairValue {
    pub pair: [String; 2],
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetValue {
    pub set: Vec<String>,
    pub value: f64,
}

/// A capacity in one of its three representations, selected by `format`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "format", rename_all = "snake_case")]
pub enum CapacitySpec {
    ShapleyInteraction {
        shapley: BTreeMap<String, f64>,
        #[serde(default)]
        interactions: Vec<PairValue>,
    },
    Mobius {
        masses: Vec<SetValue>,
    },
    Lattice {
        values: Vec<SetValue>,
    },
}

/// Run settings stored in a problem file; all optional.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptionsSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<ValidationMode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rules: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tie_tolerance: Option<f64>,
}

/// The on-disk description of a sorting problem.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub schema: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub criteria: Vec<CriterionSpec>,
    /// Limiting profiles from best to worst.
    #[serde(default)]
    pub profiles: Vec<NamedValues>,
    /// Category labels, best first; defaults to `K_1 … K_k`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub categories: Option<Vec<String>>,
    #[serde(default)]
    pub alternatives: Vec<NamedValues>,
    pub capacity: CapacitySpec,
    #[serde(default)]
    pub options: OptionsSpec,
    /// Evaluations of the alternatives on a common qualitative scale, used by
    /// the baseline comparison.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub qualitative: Option<Vec<NamedValues>>,
}

/// Fully resolved run settings.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSettings {
    pub mode: ValidationMode,
    pub form: String,
    pub rules: Vec<String>,
    pub tie_tolerance: f64,
}

impl Default for RunSettings {
    fn default() -> Self {
        Self {
            mode: ValidationMode::Strict,
            form: "shapley".to_string(),
            rules: vec!["positive".into(), "negative".into(), "net".into()],
            tie_tolerance: DEFAULT_TIE_TOLERANCE,
        }
    }
}

impl RunSettings {
    /// Defaults overridden by the file's options, then by `overrides`.
    pub fn resolve(file: &OptionsSpec, overrides: &OptionsSpec) -> Self {
        let d = Self::default();
        Self {
            mode: overrides.mode.or(file.mode).unwrap_or(d.mode),
            form: overrides
                .form
                .clone()
                .or_else(|| file.form.clone())
                .unwrap_or(d.form),
            rules: overrides
                .rules
                .clone()
                .or_else(|| file.rules.clone())
                .unwrap_or(d.rules),
            tie_tolerance: overrides
                .tie_tolerance
                .or(file.tie_tolerance)
                .unwrap_or(d.tie_tolerance),
        }
    }

    pub fn sort_options(&self, registry: &Registry) -> Result<SortOptions> {
        if !(self.tie_tolerance.is_finite() && self.tie_tolerance >= 0.0) {
            return Err(Error::structural(format!(
                "tie tolerance must be a nonnegative number, got {}",
                self.tie_tolerance
            )));
        }
        if self.rules.is_empty() {
            return Err(Error::structural("no assignment rule selected"));
        }
        let rules = self
            .rules
            .iter()
            .map(|r| registry.assignment_rule(r))
            .collect::<Result<Vec<_>>>()?;
        Ok(SortOptions {
            tie_tolerance: self.tie_tolerance,
            rules,
        })
    }
}

/// A problem file together with the problem and settings it resolves to.
#[derive(Debug, Clone)]
pub struct LoadedProblem {
    pub file: ProblemFile,
    pub problem: SortingProblem,
    pub settings: RunSettings,
    pub options: SortOptions,
}

fn schema_violation(location: impl Into<String>, message: impl Into<String>) -> Violation {
    Violation::new(Constraint::Schema, message).at(location)
}

/// Maps criterion names to indices and collects schema problems.
struct Resolver<'a> {
    index: HashMap<&'a str, usize>,
    names: Vec<&'a str>,
    report: ValidationReport,
}

impl<'a> Resolver<'a> {
    fn new(criteria: &'a [CriterionSpec]) -> Self {
        let mut report = ValidationReport::new();
        let mut index = HashMap::new();
        for (j, c) in criteria.iter().enumerate() {
            if index.insert(c.name.as_str(), j).is_some() {
                report.push(schema_violation(
                    format!("criteria[{j}].name"),
                    format!("criterion {} is defined twice", c.name),
                ));
            }
        }
        Self {
            index,
            names: criteria.iter().map(|c| c.name.as_str()).collect(),
            report,
        }
    }

    fn criterion(&mut self, name: &str, location: &str) -> Option<usize> {
        let found = self.index.get(name).copied();
        if found.is_none() {
            self.report.push(schema_violation(
                location,
                format!("unknown criterion {name}"),
            ));
        }
        found
    }

    /// A complete evaluation vector in criterion order.
    fn vector(&mut self, values: &BTreeMap<String, f64>, location: &str) -> Vec<f64> {
        let mut out = vec![f64::NAN; self.names.len()];
        for (name, v) in values {
            if let Some(j) = self.criterion(name, &format!("{location}.{name}")) {
                if !v.is_finite() {
                    self.report.push(schema_violation(
                        format!("{location}.{name}"),
                        format!("value {v} is not finite"),
                    ));
                }
                out[j] = *v;
            }
        }
        for (j, name) in self.names.clone().into_iter().enumerate() {
            if !values.contains_key(name) {
                self.report.push(schema_violation(
                    location,
                    format!("missing a value for criterion {name}"),
                ));
                out[j] = 0.0;
            }
        }
        out
    }

    fn subset(&mut self, names: &[String], location: &str) -> Option<Subset> {
        let mut set = Subset::EMPTY;
        for name in names {
            let j = self.criterion(name, location)?;
            if set.contains(j) {
                self.report.push(schema_violation(
                    location,
                    format!("criterion {name} listed twice"),
                ));
            }
            set = set.with(j);
        }
        Some(set)
    }

    fn named_rows(&mut self, rows: &[NamedValues], section: &str) -> (Vec<String>, Vec<Vec<f64>>) {
        let mut seen = HashSet::new();
        let mut names = Vec::new();
        let mut vectors = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            if !seen.insert(row.name.clone()) {
                self.report.push(schema_violation(
                    format!("{section}[{i}].name"),
                    format!("{} is defined twice", row.name),
                ));
            }
            names.push(row.name.clone());
            vectors.push(self.vector(&row.values, &format!("{section}.{}", row.name)));
        }
        (names, vectors)
    }
}

impl CapacitySpec {
    fn resolve(&self, r: &mut Resolver) -> Option<CapacityModel> {
        let n = r.names.len();
        match self {
            CapacitySpec::ShapleyInteraction {
                shapley,
                interactions,
            } => {
                let shapley = r.vector(shapley, "capacity.shapley");
                let mut pairs = Vec::new();
                for (i, p) in interactions.iter().enumerate() {
                    let loc = format!("capacity.interactions[{i}]");
                    let a = r.criterion(&p.pair[0], &loc)?;
                    let b = r.criterion(&p.pair[1], &loc)?;
                    pairs.push(((a, b), p.value));
                }
                match ShapleyInteractionModel::new(shapley, pairs) {
                    Ok(m) => Some(CapacityModel::from_shapley_interaction(m)),
                    Err(e) => {
                        r.report.push(schema_violation("capacity", e.to_string()));
                        None
                    }
                }
            }
            CapacitySpec::Mobius { masses } => {
                let mut entries = Vec::new();
                for (i, m) in masses.iter().enumerate() {
                    let set = r.subset(&m.set, &format!("capacity.masses[{i}]"))?;
                    entries.push((set, m.value));
                }
                match MobiusRepresentation::new(n, entries) {
                    Ok(m) => Some(CapacityModel::from_mobius(m)),
                    Err(e) => {
                        r.report
                            .push(schema_violation("capacity.masses", e.to_string()));
                        None
                    }
                }
            }
            CapacitySpec::Lattice { values } => {
                let mut entries = Vec::new();
                for (i, v) in values.iter().enumerate() {
                    let set = r.subset(&v.set, &format!("capacity.values[{i}]"))?;
                    entries.push((set, v.value));
                }
                match CapacityLattice::from_entries(n, entries) {
                    Ok(l) => Some(CapacityModel::from_lattice(l)),
                    Err(e) => {
                        r.report
                            .push(schema_violation("capacity.values", e.to_string()));
                        None
                    }
                }
            }
        }
    }

    /// A Shapley/interaction capacity spec from a model over `criteria`.
    pub fn from_shapley(model: &ShapleyInteractionModel, criteria: &[CriterionSpec]) -> Self {
        CapacitySpec::ShapleyInteraction {
            shapley: criteria
                .iter()
                .zip(model.shapley())
                .map(|(c, v)| (c.name.clone(), *v))
                .collect(),
            interactions: model
                .interactions()
                .map(|((a, b), value)| PairValue {
                    pair: [criteria[a].name.clone(), criteria[b].name.clone()],
                    value,
                })
                .collect(),
        }
    }
}

/// Parts of a problem file resolved against its criteria list.
pub struct ResolvedParts {
    pub criteria: Vec<Criterion>,
    pub capacity: CapacityModel,
    pub alternatives: DecisionMatrix,
    pub profiles: Vec<Vec<f64>>,
    pub qualitative: Option<DecisionMatrix>,
}

impl ProblemFile {
    /// Resolves names and builds the model parts, reporting every schema
    /// problem at once.
    pub fn resolve(&self, registry: &Registry) -> Result<ResolvedParts> {
        let mut r = Resolver::new(&self.criteria);
        if self.schema != PROBLEM_SCHEMA {
            r.report.push(schema_violation(
                "schema",
                format!("expected schema {PROBLEM_SCHEMA}, found {}", self.schema),
            ));
        }
        if self.criteria.is_empty() {
            r.report.push(schema_violation(
                "criteria",
                "at least one criterion is required",
            ));
        }
        let mut criteria = Vec::new();
        for (j, spec) in self.criteria.iter().enumerate() {
            match Criterion::new(spec.clone(), registry) {
                Ok(c) => criteria.push(c),
                Err(e) => r
                    .report
                    .push(schema_violation(format!("criteria[{j}]"), e.to_string())),
            }
        }
        let (names, rows) = r.named_rows(&self.alternatives, "alternatives");
        let (_, profiles) = r.named_rows(&self.profiles, "profiles");
        let qualitative = self
            .qualitative
            .as_ref()
            .map(|q| r.named_rows(q, "qualitative"));
        let capacity = self.capacity.resolve(&mut r);
        if !r.report.is_valid() {
            return Err(Error::Invalid(r.report));
        }
        let n = criteria.len();
        let capacity = capacity.expect("no schema violations");
        if capacity.n() != n {
            return Err(Error::structural(format!(
                "capacity covers {} criteria, expected {n}",
                capacity.n()
            )));
        }
        Ok(ResolvedParts {
            criteria,
            capacity,
            alternatives: DecisionMatrix::new(names, rows, n)?,
            profiles,
            qualitative: qualitative
                .map(|(names, rows)| DecisionMatrix::new(names, rows, n))
                .transpose()?,
        })
    }

    /// Builds the validated sorting problem.
    pub fn build(&self, registry: &Registry, settings: &RunSettings) -> Result<SortingProblem> {
        let parts = self.resolve(registry)?;
        let profiles = match &self.categories {
            Some(labels) => ReferenceProfileSet::with_labels(parts.profiles, labels.clone())?,
            None => ReferenceProfileSet::new(parts.profiles)?,
        };
        let form = registry.choquet_form(&settings.form)?;
        let model: Arc<dyn OutrankingModel> =
            Arc::new(ChoquetOutranking::new(Arc::new(parts.capacity), form));
        SortingProblem::new(
            parts.criteria,
            parts.alternatives,
            profiles,
            model,
            settings.mode,
        )
    }

    /// Parses TOML, or JSON when the text is a JSON object. A JSON report that
    /// embeds its problem under `problem` is accepted too.
    pub fn parse(text: &str, source_name: &str) -> Result<Self> {
        let parse_error = |message: String| Error::Parse {
            source_name: source_name.to_string(),
            message,
        };
        if text.trim_start().starts_with('{') {
            let mut value: serde_json::Value =
                serde_json::from_str(text).map_err(|e| parse_error(e.to_string()))?;
            if let Some(problem) = value.get_mut("problem") {
                value = problem.take();
            }
            serde_json::from_value(value).map_err(|e| parse_error(e.to_string()))
        } else {
            toml::from_str(text).map_err(|e| parse_error(e.to_string()))
        }
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text, &path.display().to_string())
    }
}

/// Reads, resolves and validates a problem file. `overrides` take precedence
/// over the file's own options. Every diagnostic carries the file name.
pub fn load_problem(
    path: &Path,
    registry: &Registry,
    overrides: &OptionsSpec,
) -> Result<LoadedProblem> {
    let file = ProblemFile::read(path)?;
    load_parsed(file, &path.display().to_string(), registry, overrides)
}

/// As [`load_problem`] for an already parsed file.
pub fn load_parsed(
    file: ProblemFile,
    source_name: &str,
    registry: &Registry,
    overrides: &OptionsSpec,
) -> Result<LoadedProblem> {
    let settings = RunSettings::resolve(&file.options, overrides);
    let options = settings.sort_options(registry)?;
    let problem = file.build(registry, &settings).map_err(|e| match e {
        Error::Invalid(report) => Error::Invalid(report.in_source(source_name)),
        Error::Structural(m) => Error::Structural(format!("{source_name}: {m}")),
        other => other,
    })?;
    Ok(LoadedProblem {
        file,
        problem,
        settings,
        options,
    })
}
