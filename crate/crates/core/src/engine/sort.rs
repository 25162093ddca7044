use std::collections::HashSet;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::engine::assign::{
    AssignmentRule, Category, NegativeFlowRule, NetFlowRule, PositiveFlowRule,
};
use crate::engine::flows::{compute_flows, FlowTable, OutrankingMatrix};
use crate::error::{Error, Result};
use crate::outranking::{validate_profiles, OutrankingModel};
use crate::preference::{
    degree_vector, validate_bounds, validate_profile_order, Criterion, DecisionMatrix,
    ReferenceProfileSet,
};
use crate::validation::{ValidationMode, ValidationReport};
use crate::DEFAULT_TIE_TOLERANCE;

/// A validated sorting problem: criteria, alternatives, limiting profiles and
/// the outranking model aggregating preference degrees.
#[derive(Debug, Clone)]
pub struct SortingProblem {
    criteria: Vec<Criterion>,
    alternatives: DecisionMatrix,
    profiles: ReferenceProfileSet,
    model: Arc<dyn OutrankingModel>,
    mode: ValidationMode,
    /// Outranking degrees between profiles, shared by every local set.
    profile_degrees: Vec<f64>,
}

impl SortingProblem {
    /// Validates everything and reports all violations at once.
    pub fn new(
        criteria: Vec<Criterion>,
        alternatives: DecisionMatrix,
        profiles: ReferenceProfileSet,
        model: Arc<dyn OutrankingModel>,
        mode: ValidationMode,
    ) -> Result<Self> {
        let n = criteria.len();
        if n == 0 {
            return Err(Error::structural("a problem needs at least one criterion"));
        }
        let mut seen = HashSet::new();
        if let Some(dup) = criteria.iter().find(|c| !seen.insert(c.name())) {
            return Err(Error::structural(format!(
                "criterion {} is defined twice",
                dup.name()
            )));
        }
        if profiles.n() != n || model.n() != n {
            return Err(Error::structural(format!(
                "{n} criteria, but profiles have {} evaluations and the capacity covers {} criteria",
                profiles.n(),
                model.n()
            )));
        }
        if !alternatives.is_empty() && alternatives.row(0).len() != n {
            return Err(Error::structural(format!(
                "{n} criteria, but alternatives have {} evaluations",
                alternatives.row(0).len()
            )));
        }

        validate_problem(&criteria, &alternatives, &profiles, model.as_ref(), mode)?
            .into_result()?;

        let size = profiles.profiles().len();
        let ps = profiles.profiles();
        let cache = OutrankingMatrix::from_fn(size, |x, y| {
            model.degree(&degree_vector(&criteria, &ps[x], &ps[y]))
        })?;
        let profile_degrees = (0..size)
            .flat_map(|x| (0..size).map(move |y| (x, y)))
            .map(|(x, y)| cache.get(x, y))
            .collect();
        Ok(Self {
            criteria,
            alternatives,
            profiles,
            model,
            mode,
            profile_degrees,
        })
    }

    pub fn criteria(&self) -> &[Criterion] {
        &self.criteria
    }

    pub fn alternatives(&self) -> &DecisionMatrix {
        &self.alternatives
    }

    pub fn profiles(&self) -> &ReferenceProfileSet {
        &self.profiles
    }

    pub fn model(&self) -> &Arc<dyn OutrankingModel> {
        &self.model
    }

    pub fn mode(&self) -> ValidationMode {
        self.mode
    }

    /// Number of categories `k`.
    pub fn categories(&self) -> usize {
        self.profiles.categories()
    }

    /// The same problem with other alternatives, revalidated.
    pub fn with_alternatives(&self, alternatives: DecisionMatrix) -> Result<Self> {
        Self::new(
            self.criteria.clone(),
            alternatives,
            self.profiles.clone(),
            self.model.clone(),
            self.mode,
        )
    }

    /// The same problem with other profiles, revalidated.
    pub fn with_profiles(&self, profiles: ReferenceProfileSet) -> Result<Self> {
        Self::new(
            self.criteria.clone(),
            self.alternatives.clone(),
            profiles,
            self.model.clone(),
            self.mode,
        )
    }

    /// The same problem with another outranking model, revalidated.
    pub fn with_model(&self, model: Arc<dyn OutrankingModel>) -> Result<Self> {
        Self::new(
            self.criteria.clone(),
            self.alternatives.clone(),
            self.profiles.clone(),
            model,
            self.mode,
        )
    }

    /// Outranking degrees within the local set of `alternative`, which is not
    /// checked against the profile band.
    pub fn outranking_matrix(&self, alternative: &[f64]) -> Result<OutrankingMatrix> {
        if alternative.len() != self.criteria.len() {
            return Err(Error::structural(format!(
                "expected {} evaluations, got {}",
                self.criteria.len(),
                alternative.len()
            )));
        }
        let ps = self.profiles.profiles();
        let a = ps.len();
        OutrankingMatrix::from_fn(a + 1, |x, y| {
            if x < a && y < a {
                Ok(self.profile_degrees[x * a + y])
            } else if x == a {
                self.model
                    .degree(&degree_vector(&self.criteria, alternative, &ps[y]))
            } else {
                self.model
                    .degree(&degree_vector(&self.criteria, &ps[x], alternative))
            }
        })
    }

    /// Flows within the local set of `alternative`.
    pub fn flows(&self, alternative: &[f64]) -> Result<FlowTable> {
        compute_flows(&self.outranking_matrix(alternative)?)
    }

    /// Categories of an arbitrary evaluation vector under each rule.
    pub fn classify(&self, alternative: &[f64], options: &SortOptions) -> Result<Vec<Category>> {
        let flows = self.flows(alternative)?;
        options
            .rules
            .iter()
            .map(|r| r.assign(&flows, options.tie_tolerance))
            .collect()
    }
}

/// Settings for [`sort_all`].
#[derive(Debug, Clone)]
pub struct SortOptions {
    /// Absolute distance under which an alternative's flow counts as equal to
    /// a profile flow. Zero compares exactly.
    pub tie_tolerance: f64,
    pub rules: Vec<Arc<dyn AssignmentRule>>,
}

impl Default for SortOptions {
    fn default() -> Self {
        Self {
            tie_tolerance: DEFAULT_TIE_TOLERANCE,
            rules: vec![
                Arc::new(PositiveFlowRule),
                Arc::new(NegativeFlowRule),
                Arc::new(NetFlowRule),
            ],
        }
    }
}

impl SortOptions {
    pub fn with_rules(rules: Vec<Arc<dyn AssignmentRule>>) -> Self {
        Self {
            rules,
            ..Self::default()
        }
    }

    pub fn rule_index(&self, name: &str) -> Option<usize> {
        self.rules.iter().position(|r| r.name() == name)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlternativeResult {
    pub name: String,
    /// One category per rule, in the order of [`AssignmentResult::rules`].
    pub categories: Vec<Category>,
    pub flows: FlowTable,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AssignmentResult {
    pub rules: Vec<String>,
    pub labels: Vec<String>,
    pub alternatives: Vec<AlternativeResult>,
}

impl AssignmentResult {
    pub fn category(&self, alternative: usize, rule: &str) -> Option<Category> {
        let r = self.rules.iter().position(|n| n == rule)?;
        self.alternatives.get(alternative).map(|a| a.categories[r])
    }

    /// Categories of every alternative under `rule`.
    pub fn column(&self, rule: &str) -> Option<Vec<Category>> {
        let r = self.rules.iter().position(|n| n == rule)?;
        Some(self.alternatives.iter().map(|a| a.categories[r]).collect())
    }

    pub fn label(&self, category: Category) -> &str {
        &self.labels[category.index() - 1]
    }
}

/// Flows and categories for every alternative. Alternatives are independent
/// and evaluated in parallel; the output order matches the input.
pub fn sort_all(problem: &SortingProblem, options: &SortOptions) -> Result<AssignmentResult> {
    let matrix = problem.alternatives();
    let alternatives = (0..matrix.len())
        .into_par_iter()
        .map(|i| {
            let flows = problem.flows(matrix.row(i)).map_err(|e| match e {
                Error::Inconsistency(m) => {
                    Error::Inconsistency(format!("{}: {m}", matrix.names()[i]))
                }
                other => other,
            })?;
            let categories = options
                .rules
                .iter()
                .map(|r| r.assign(&flows, options.tie_tolerance))
                .collect::<Result<Vec<_>>>()
                .map_err(|e| match e {
                    Error::Inconsistency(m) => {
                        Error::Inconsistency(format!("{}: {m}", matrix.names()[i]))
                    }
                    other => other,
                })?;
            Ok(AlternativeResult {
                name: matrix.names()[i].clone(),
                categories,
                flows,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AssignmentResult {
        rules: options.rules.iter().map(|r| r.name().to_string()).collect(),
        labels: problem.profiles().labels().to_vec(),
        alternatives,
    })
}

/// Validation report of the problem's parts without building it.
pub fn validate_problem(
    criteria: &[Criterion],
    alternatives: &DecisionMatrix,
    profiles: &ReferenceProfileSet,
    model: &dyn OutrankingModel,
    mode: ValidationMode,
) -> Result<ValidationReport> {
    let mut report = model.validate()?.located("capacity");
    if report.is_valid() {
        report.extend(validate_profiles(profiles, criteria, model, mode)?);
    } else {
        report.extend(validate_profile_order(profiles, criteria));
    }
    report.extend(validate_bounds(alternatives, profiles, criteria));
    Ok(report)
}
