//! Executable checks of the outranking conditions and of the sorting
//! properties (uniqueness, stability, homogeneity, monotonicity, conformity,
//! rule coherence) on concrete problems and on seeded random batches.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::capacity::CapacityModel;
use crate::engine::{
    flows_unchecked, sort_all, AssignmentResult, AssignmentRule, Category, FlowKind, FlowTable,
    OutrankingMatrix, SortOptions, SortingProblem,
};
use crate::error::{Error, Result};
use crate::io::ProblemFile;
use crate::outranking::{ChoquetOutranking, OutrankingModel};
use crate::preference::{
    degree_vector, signed_difference, Criterion, DecisionMatrix, Direction, ReferenceProfileSet,
};
use crate::validation::ValidationMode;
use crate::verification::generate::{generate_instance, InstanceGenConfig, InteractionSigns};
use crate::verification::oracle::classic_flowsort;

/// Slack allowed on the outranking-degree conditions.
pub const CONDITION_TOLERANCE: f64 = 1e-12;

/// A conditional property is only enforced when its side condition holds by
/// at least this much; otherwise the case is skipped.
pub const SIDE_CONDITION_MARGIN: f64 = 1e-9;

/// Counterexamples kept per property; the tallies count all of them.
pub const MAX_COUNTEREXAMPLES: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    /// `0 ≤ CI(x, y) ≤ 1`.
    DegreeRange,
    /// `CI(x, y) + CI(y, x) ≤ 1`.
    DegreeAsymmetry,
    /// `CI(x, x) = 0`.
    ZeroSelfDegree,
    /// Larger differences on every criterion never lower the degree.
    DegreeMonotonicity,
    /// `CI(r_h, r_l) > 0` and `CI(r_l, r_h) = 0` for `h < l`.
    ProfileDominance,
    /// `CI(r_h, r_l) = 1` for `h < l`.
    StrongProfileDominance,
    /// Profile flows keep the category order in every local set.
    ProfileFlowOrder,
    /// Exactly one category interval contains the alternative's flow.
    Uniqueness,
    /// Sorting a batch gives each alternative the category it gets alone.
    Independence,
    /// Renaming, reordering or duplicating alternatives changes nothing.
    Neutrality,
    /// Removing an inner profile moves the positive-flow category from `h`
    /// to `h − 1` or `h` (after renumbering).
    RemovalStability,
    /// Inserting a profile moves the positive-flow category from `h` to `h`
    /// or `h + 1` (after renumbering).
    InsertionStability,
    /// Alternatives with identical degrees against every profile share
    /// categories.
    WeakHomogeneity,
    /// Inserting a profile outside the alternative's category keeps it between
    /// the same two profiles when the flow-gap side conditions hold.
    GuardedInsertionStability,
    /// Removing a profile other than the alternative's bounds keeps it between
    /// the same two profiles when the flow-gap side conditions hold.
    GuardedRemovalStability,
    /// A dominating alternative is never assigned to a worse category.
    Monotonicity,
    /// An alternative strictly between `r_{h+1}` and `r_h` is assigned `K_h`.
    CategoryConformity,
    /// The negative-flow category is at least as good as the positive-flow one.
    NegativeAtLeastPositive,
    /// The net-flow category lies between the negative- and positive-flow
    /// categories.
    NetBetween,
}

impl Property {
    pub const CONDITIONS: [Property; 6] = [
        Property::DegreeRange,
        Property::DegreeAsymmetry,
        Property::ZeroSelfDegree,
        Property::DegreeMonotonicity,
        Property::ProfileDominance,
        Property::StrongProfileDominance,
    ];

    pub const PROPOSITIONS: [Property; 13] = [
        Property::ProfileFlowOrder,
        Property::Uniqueness,
        Property::Independence,
        Property::Neutrality,
        Property::RemovalStability,
        Property::InsertionStability,
        Property::WeakHomogeneity,
        Property::GuardedInsertionStability,
        Property::GuardedRemovalStability,
        Property::Monotonicity,
        Property::CategoryConformity,
        Property::NegativeAtLeastPositive,
        Property::NetBetween,
    ];

    pub fn all() -> Vec<Property> {
        Self::CONDITIONS
            .into_iter()
            .chain(Self::PROPOSITIONS)
            .collect()
    }

    pub fn name(self) -> &'static str {
        match self {
            Property::DegreeRange => "degree_range",
            Property::DegreeAsymmetry => "degree_asymmetry",
            Property::ZeroSelfDegree => "zero_self_degree",
            Property::DegreeMonotonicity => "degree_monotonicity",
            Property::ProfileDominance => "profile_dominance",
            Property::StrongProfileDominance => "strong_profile_dominance",
            Property::ProfileFlowOrder => "profile_flow_order",
            Property::Uniqueness => "uniqueness",
            Property::Independence => "independence",
            Property::Neutrality => "neutrality",
            Property::RemovalStability => "removal_stability",
            Property::InsertionStability => "insertion_stability",
            Property::WeakHomogeneity => "weak_homogeneity",
            Property::GuardedInsertionStability => "guarded_insertion_stability",
            Property::GuardedRemovalStability => "guarded_removal_stability",
            Property::Monotonicity => "monotonicity",
            Property::CategoryConformity => "category_conformity",
            Property::NegativeAtLeastPositive => "negative_at_least_positive",
            Property::NetBetween => "net_between",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        Self::all()
            .into_iter()
            .find(|p| p.name() == name)
            .ok_or_else(|| Error::UnknownStrategy {
                kind: "property",
                name: name.to_string(),
                available: Self::all()
                    .iter()
                    .map(|p| p.name())
                    .collect::<Vec<_>>()
                    .join(", "),
            })
    }

    /// Whether the property only holds for strongly separated profiles.
    pub fn requires_strong(self) -> bool {
        matches!(
            self,
            Property::StrongProfileDominance
                | Property::RemovalStability
                | Property::InsertionStability
                | Property::GuardedInsertionStability
                | Property::GuardedRemovalStability
                | Property::NegativeAtLeastPositive
        )
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub passed: u64,
    pub failed: u64,
    pub skipped: u64,
}

/// A failed check with what is needed to inspect and replay it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub property: Property,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alternative: Option<Vec<f64>>,
    /// Outranking degrees of the local set `r_1, …, r_{k+1}, a`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degrees: Option<Vec<Vec<f64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flows: Option<FlowTable>,
    /// Generator settings; regenerating from them reproduces the instance.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub config: Option<InstanceGenConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub problem: Option<ProblemFile>,
}

impl Counterexample {
    fn new(property: Property, message: impl Into<String>) -> Self {
        Self {
            property,
            message: message.into(),
            alternative: None,
            degrees: None,
            flows: None,
            config: None,
            problem: None,
        }
    }

    fn with_local(mut self, local: &Local) -> Self {
        self.alternative = Some(local.values.clone());
        self.degrees = Some(
            (0..local.matrix.size())
                .map(|x| local.matrix.row(x).to_vec())
                .collect(),
        );
        self.flows = Some(local.flows.clone());
        self
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct PropertyReport {
    pub tallies: BTreeMap<Property, Tally>,
    pub counterexamples: Vec<Counterexample>,
    /// Seeds of the instances checked.
    pub seeds: Vec<u64>,
}

impl PropertyReport {
    pub fn pass(&mut self, property: Property) {
        self.tallies.entry(property).or_default().passed += 1;
    }

    pub fn skip(&mut self, property: Property) {
        self.tallies.entry(property).or_default().skipped += 1;
    }

    pub fn fail(&mut self, cx: Counterexample) {
        self.tallies.entry(cx.property).or_default().failed += 1;
        self.keep(cx);
    }

    fn keep(&mut self, cx: Counterexample) {
        let same = |c: &&Counterexample| c.property == cx.property;
        let seed = |c: &Counterexample| c.config.as_ref().map(|g| g.seed);
        if self
            .counterexamples
            .iter()
            .filter(same)
            .any(|c| c.message == cx.message && seed(c) == seed(&cx))
        {
            return;
        }
        let kept = self.counterexamples.iter().filter(same).count();
        if kept < MAX_COUNTEREXAMPLES {
            self.counterexamples.push(cx);
        }
    }

    fn check(&mut self, property: Property, ok: bool, cx: impl FnOnce() -> Counterexample) {
        if ok {
            self.pass(property);
        } else {
            self.fail(cx());
        }
    }

    pub fn tally(&self, property: Property) -> Tally {
        self.tallies.get(&property).copied().unwrap_or_default()
    }

    pub fn failures(&self) -> u64 {
        self.tallies.values().map(|t| t.failed).sum()
    }

    pub fn is_clean(&self) -> bool {
        self.failures() == 0
    }

    pub fn merge(&mut self, other: PropertyReport) {
        for (p, t) in other.tallies {
            let mine = self.tallies.entry(p).or_default();
            mine.passed += t.passed;
            mine.failed += t.failed;
            mine.skipped += t.skipped;
        }
        for cx in other.counterexamples {
            self.keep(cx);
        }
        self.seeds.extend(other.seeds);
    }

    /// Keeps only the given properties.
    pub fn retain(&mut self, properties: &BTreeSet<Property>) {
        self.tallies.retain(|p, _| properties.contains(p));
        self.counterexamples
            .retain(|c| properties.contains(&c.property));
    }

    fn attach(&mut self, config: &InstanceGenConfig, problem: &ProblemFile) {
        for cx in &mut self.counterexamples {
            cx.config.get_or_insert_with(|| config.clone());
            cx.problem.get_or_insert_with(|| problem.clone());
        }
    }
}

impl fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:<30} {:>9} {:>7} {:>8}",
            "property", "passed", "failed", "skipped"
        )?;
        for (p, t) in &self.tallies {
            writeln!(
                f,
                "{:<30} {:>9} {:>7} {:>8}",
                p.name(),
                t.passed,
                t.failed,
                t.skipped
            )?;
        }
        for cx in &self.counterexamples {
            write!(f, "counterexample [{}]: {}", cx.property, cx.message)?;
            if let Some(cfg) = &cx.config {
                write!(f, " (instance seed {})", cfg.seed)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Degrees, flows and categories of one alternative's local set.
struct Local {
    values: Vec<f64>,
    matrix: OutrankingMatrix,
    flows: FlowTable,
    /// Positive, negative and net categories; `None` when the profile flows
    /// are not ordered.
    categories: Option<[Category; 3]>,
}

fn standard_rules() -> [Arc<dyn AssignmentRule>; 3] {
    let options = SortOptions::default();
    [
        options.rules[0].clone(),
        options.rules[1].clone(),
        options.rules[2].clone(),
    ]
}

fn local(problem: &SortingProblem, values: &[f64], tolerance: f64) -> Result<Local> {
    let matrix = problem.outranking_matrix(values)?;
    let flows = flows_unchecked(&matrix);
    let categories = if flows.check_profile_order().is_ok() {
        let rules = standard_rules();
        Some([
            rules[0].assign(&flows, tolerance)?,
            rules[1].assign(&flows, tolerance)?,
            rules[2].assign(&flows, tolerance)?,
        ])
    } else {
        None
    };
    Ok(Local {
        values: values.to_vec(),
        matrix,
        flows,
        categories,
    })
}

fn degrees_only(problem: &SortingProblem, values: &[f64]) -> Result<Local> {
    let matrix = problem.outranking_matrix(values)?;
    Ok(Local {
        values: values.to_vec(),
        flows: flows_unchecked(&matrix),
        matrix,
        categories: None,
    })
}

fn degree(problem: &SortingProblem, x: &[f64], y: &[f64]) -> Result<f64> {
    problem
        .model()
        .degree(&degree_vector(problem.criteria(), x, y))
}

fn differences(criteria: &[Criterion], x: &[f64], y: &[f64]) -> Result<Vec<f64>> {
    criteria
        .iter()
        .enumerate()
        .map(|(j, c)| signed_difference(c.direction(), x[j], y[j]))
        .collect()
}

/// Evaluates the outranking-degree conditions on every local set of the
/// problem. Strong profile dominance is only checked for problems validated
/// in strong mode.
pub fn check_conditions(problem: &SortingProblem) -> Result<PropertyReport> {
    let mut report = PropertyReport::default();
    let ps = problem.profiles().profiles();
    let strong = problem.mode() == ValidationMode::Strong;
    for h in 0..ps.len() {
        for l in h + 1..ps.len() {
            let forward = degree(problem, &ps[h], &ps[l])?;
            let backward = degree(problem, &ps[l], &ps[h])?;
            report.check(
                Property::ProfileDominance,
                forward > 0.0 && backward.abs() <= CONDITION_TOLERANCE,
                || {
                    Counterexample::new(
                        Property::ProfileDominance,
                        format!(
                            "CI(r_{}, r_{}) = {forward}, CI(r_{}, r_{}) = {backward}",
                            h + 1,
                            l + 1,
                            l + 1,
                            h + 1
                        ),
                    )
                },
            );
            if strong {
                report.check(
                    Property::StrongProfileDominance,
                    (forward - 1.0).abs() <= CONDITION_TOLERANCE,
                    || {
                        Counterexample::new(
                            Property::StrongProfileDominance,
                            format!("CI(r_{}, r_{}) = {forward}", h + 1, l + 1),
                        )
                    },
                );
            }
        }
    }

    for values in problem.alternatives().rows() {
        let loc = degrees_only(problem, values)?;
        let elements: Vec<&[f64]> = ps
            .iter()
            .map(Vec::as_slice)
            .chain(std::iter::once(values.as_slice()))
            .collect();
        let size = elements.len();
        let m = &loc.matrix;

        let mut range_bad = None;
        let mut asym_bad = None;
        for x in 0..size {
            for y in 0..size {
                let v = m.get(x, y);
                if range_bad.is_none()
                    && !(-CONDITION_TOLERANCE..=1.0 + CONDITION_TOLERANCE).contains(&v)
                {
                    range_bad = Some(format!("CI({x}, {y}) = {v}"));
                }
                if asym_bad.is_none() && x < y && v + m.get(y, x) > 1.0 + CONDITION_TOLERANCE {
                    asym_bad = Some(format!("CI({x}, {y}) + CI({y}, {x}) = {}", v + m.get(y, x)));
                }
            }
        }
        report.check(Property::DegreeRange, range_bad.is_none(), || {
            Counterexample::new(Property::DegreeRange, range_bad.clone().unwrap_or_default())
                .with_local(&loc)
        });
        report.check(Property::DegreeAsymmetry, asym_bad.is_none(), || {
            Counterexample::new(
                Property::DegreeAsymmetry,
                asym_bad.clone().unwrap_or_default(),
            )
            .with_local(&loc)
        });

        let mut self_bad = None;
        for (x, e) in elements.iter().enumerate() {
            let v = degree(problem, e, e)?;
            if v != 0.0 && self_bad.is_none() {
                self_bad = Some(format!("CI(x, x) = {v} for local element {x}"));
            }
        }
        report.check(Property::ZeroSelfDegree, self_bad.is_none(), || {
            Counterexample::new(
                Property::ZeroSelfDegree,
                self_bad.clone().unwrap_or_default(),
            )
            .with_local(&loc)
        });

        let mut diffs = Vec::with_capacity(size * size);
        for x in &elements {
            for y in &elements {
                diffs.push(differences(problem.criteria(), x, y)?);
            }
        }
        let mut mono_bad = None;
        'outer: for a in 0..size * size {
            for b in 0..size * size {
                let dominated = diffs[a].iter().zip(&diffs[b]).all(|(u, v)| u <= v);
                let (ci_a, ci_b) = (m.get(a / size, a % size), m.get(b / size, b % size));
                if dominated && ci_a > ci_b + CONDITION_TOLERANCE {
                    mono_bad = Some(format!(
                        "pair ({}, {}) has smaller differences than ({}, {}) but CI {ci_a} > {ci_b}",
                        a / size,
                        a % size,
                        b / size,
                        b % size
                    ));
                    break 'outer;
                }
            }
        }
        report.check(Property::DegreeMonotonicity, mono_bad.is_none(), || {
            Counterexample::new(
                Property::DegreeMonotonicity,
                mono_bad.clone().unwrap_or_default(),
            )
            .with_local(&loc)
        });
    }
    Ok(report)
}

/// Category intervals containing `v`, with ties within `tol` treated as
/// equality and the end interval closed.
fn interval_hits(f: &[f64], v: f64, higher_is_better: bool, tol: f64) -> Vec<usize> {
    let k = f.len() - 1;
    (1..=k)
        .filter(|&h| {
            if higher_is_better {
                f[h - 1] >= v - tol && (f[h] < v - tol || (h == k && (v - f[k]).abs() <= tol))
            } else {
                (f[h - 1] < v - tol || (h == 1 && (v - f[0]).abs() <= tol)) && f[h] >= v - tol
            }
        })
        .collect()
}

fn positive_only(tolerance: f64) -> SortOptions {
    SortOptions {
        tie_tolerance: tolerance,
        rules: vec![standard_rules()[0].clone()],
    }
}

fn midpoint(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| 0.5 * (x + y)).collect()
}

/// Exercises the selected sorting properties on the problem's alternatives,
/// plus injected dominance pairs, degree-identical clones and in-band probes
/// drawn from `seed`.
///
/// Stability properties mutate the profile set and renumber the categories.
/// Properties that need strongly separated profiles are refused with a
/// precondition error on problems validated in another mode.
pub fn check_propositions(
    problem: &SortingProblem,
    which: &[Property],
    seed: u64,
) -> Result<PropertyReport> {
    let which: BTreeSet<Property> = which.iter().copied().collect();
    if problem.mode() != ValidationMode::Strong {
        if let Some(p) = which.iter().find(|p| p.requires_strong()) {
            return Err(Error::precondition(format!(
                "{p} needs strongly separated profiles, but the problem was validated in {} mode",
                problem.mode().as_str()
            )));
        }
    }
    let wants = |p: Property| which.contains(&p);
    let options = SortOptions::default();
    let tol = options.tie_tolerance;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = PropertyReport::default();
    let ps = problem.profiles().profiles();
    let k = problem.categories();
    let spread = (k + 1) as f64;

    let locals = problem
        .alternatives()
        .rows()
        .iter()
        .map(|row| local(problem, row, tol))
        .collect::<Result<Vec<_>>>()?;

    if wants(Property::ProfileFlowOrder) {
        for loc in &locals {
            report.check(Property::ProfileFlowOrder, loc.categories.is_some(), || {
                Counterexample::new(
                    Property::ProfileFlowOrder,
                    loc.flows
                        .check_profile_order()
                        .err()
                        .map(|e| e.to_string())
                        .unwrap_or_default(),
                )
                .with_local(loc)
            });
        }
    }
    let ordered: Vec<(&Local, [Category; 3])> = locals
        .iter()
        .filter_map(|l| l.categories.map(|c| (l, c)))
        .collect();

    if wants(Property::Uniqueness) {
        for (loc, cats) in &ordered {
            let kinds = [
                (FlowKind::Positive, true),
                (FlowKind::Negative, false),
                (FlowKind::Net, true),
            ];
            for ((kind, higher), cat) in kinds.into_iter().zip(cats) {
                let hits = interval_hits(
                    loc.flows.profiles(kind),
                    loc.flows.alternative(kind),
                    higher,
                    tol,
                );
                report.check(Property::Uniqueness, hits == [cat.index()], || {
                    Counterexample::new(
                        Property::Uniqueness,
                        format!("{kind:?} flow lies in categories {hits:?}, assigned {cat}"),
                    )
                    .with_local(loc)
                });
            }
        }
    }

    let all_ordered = ordered.len() == locals.len();
    if wants(Property::Independence) {
        if all_ordered {
            let batch = sort_all(problem, &options)?;
            for (alt, (loc, cats)) in batch.alternatives.iter().zip(&ordered) {
                report.check(Property::Independence, alt.categories == cats, || {
                    Counterexample::new(
                        Property::Independence,
                        format!("alone {cats:?}, in the batch {:?}", alt.categories),
                    )
                    .with_local(loc)
                });
            }
        } else {
            locals
                .iter()
                .for_each(|_| report.skip(Property::Independence));
        }
    }

    if wants(Property::Neutrality) {
        if all_ordered && !locals.is_empty() {
            let m = locals.len();
            let rows: Vec<Vec<f64>> = (0..2)
                .flat_map(|_| locals.iter().rev().map(|l| l.values.clone()))
                .collect();
            let names = (0..rows.len()).map(|i| format!("relabeled_{i}")).collect();
            let relabeled =
                problem.with_alternatives(DecisionMatrix::new(names, rows, ps[0].len())?)?;
            let result = sort_all(&relabeled, &options)?;
            for (i, (loc, cats)) in ordered.iter().enumerate() {
                let copies = [m - 1 - i, 2 * m - 1 - i];
                let same = copies
                    .iter()
                    .all(|&c| result.alternatives[c].categories == cats);
                report.check(Property::Neutrality, same, || {
                    Counterexample::new(
                        Property::Neutrality,
                        format!("categories {cats:?} change under relabeling"),
                    )
                    .with_local(loc)
                });
            }
        } else {
            locals
                .iter()
                .for_each(|_| report.skip(Property::Neutrality));
        }
    }

    // Profile sets with one inner profile removed.
    let removals: Vec<(usize, Option<SortingProblem>)> = (1..k)
        .map(|s| {
            let mut rest = ps.to_vec();
            rest.remove(s);
            let mutated = ReferenceProfileSet::new(rest)
                .and_then(|set| problem.with_profiles(set))
                .ok();
            (s, mutated)
        })
        .collect();
    // Profile sets with a midpoint inserted after profile g.
    let insertions: Vec<(usize, Vec<f64>, Option<SortingProblem>)> = (0..k)
        .map(|g| {
            let mid = midpoint(&ps[g], &ps[g + 1]);
            let mut more = ps.to_vec();
            more.insert(g + 1, mid.clone());
            let mutated = ReferenceProfileSet::new(more)
                .and_then(|set| problem.with_profiles(set))
                .ok();
            (g, mid, mutated)
        })
        .collect();
    let positive = positive_only(tol);
    let reclassify = |p: &SortingProblem, values: &[f64]| -> Result<usize> {
        Ok(p.classify(values, &positive)?[0].index())
    };

    if wants(Property::RemovalStability) {
        for (s, mutated) in &removals {
            for (loc, cats) in &ordered {
                let Some(p) = mutated else {
                    report.skip(Property::RemovalStability);
                    continue;
                };
                let h = cats[0].index();
                let moved = reclassify(p, &loc.values);
                let ok = matches!(moved, Ok(h2) if h2 + 1 >= h && h2 <= h);
                report.check(Property::RemovalStability, ok, || {
                    Counterexample::new(
                        Property::RemovalStability,
                        format!("K_{h} became {moved:?} after removing r_{}", s + 1),
                    )
                    .with_local(loc)
                });
            }
        }
    }

    if wants(Property::InsertionStability) {
        for (g, _, mutated) in &insertions {
            for (loc, cats) in &ordered {
                let Some(p) = mutated else {
                    report.skip(Property::InsertionStability);
                    continue;
                };
                let h = cats[0].index();
                let moved = reclassify(p, &loc.values);
                let ok = matches!(moved, Ok(h2) if h2 >= h && h2 <= h + 1);
                report.check(Property::InsertionStability, ok, || {
                    Counterexample::new(
                        Property::InsertionStability,
                        format!(
                            "K_{h} became {moved:?} after inserting a profile between r_{} and r_{}",
                            g + 1,
                            g + 2
                        ),
                    )
                    .with_local(loc)
                });
            }
        }
    }

    if wants(Property::GuardedInsertionStability) {
        for (g, mid, mutated) in &insertions {
            for (loc, cats) in &ordered {
                let h = cats[0].index();
                let Some(p) = mutated.as_ref().filter(|_| *g + 1 != h) else {
                    report.skip(Property::GuardedInsertionStability);
                    continue;
                };
                let f = &loc.flows.positive;
                let fa = loc.flows.alternative(FlowKind::Positive);
                let c_a = degree(problem, &loc.values, mid)?;
                let c_h = degree(problem, &ps[h - 1], mid)?;
                let c_h1 = degree(problem, &ps[h], mid)?;
                let guarded = fa - f[h] > (c_h1 - c_a) / spread + SIDE_CONDITION_MARGIN
                    && f[h - 1] - fa > (c_a - c_h) / spread + SIDE_CONDITION_MARGIN;
                if !guarded {
                    report.skip(Property::GuardedInsertionStability);
                    continue;
                }
                let expected = if *g >= h { h } else { h + 1 };
                let moved = reclassify(p, &loc.values);
                report.check(
                    Property::GuardedInsertionStability,
                    matches!(moved, Ok(h2) if h2 == expected),
                    || {
                        Counterexample::new(
                            Property::GuardedInsertionStability,
                            format!(
                                "expected K_{expected} after inserting a profile between r_{} and r_{}, got {moved:?}",
                                g + 1,
                                g + 2
                            ),
                        )
                        .with_local(loc)
                    },
                );
            }
        }
    }

    if wants(Property::GuardedRemovalStability) {
        for (l, mutated) in &removals {
            let l1 = l + 1;
            for (loc, cats) in &ordered {
                let h = cats[0].index();
                let Some(p) = mutated.as_ref().filter(|_| l1 != h && l1 != h + 1) else {
                    report.skip(Property::GuardedRemovalStability);
                    continue;
                };
                let f = &loc.flows.positive;
                let a = loc.flows.alternative_index();
                let fa = f[a];
                let m = &loc.matrix;
                let guarded = f[h - 1] - fa
                    > (m.get(h - 1, *l) - m.get(a, *l)) / spread + SIDE_CONDITION_MARGIN
                    && fa - f[h] > (m.get(a, *l) - m.get(h, *l)) / spread + SIDE_CONDITION_MARGIN;
                if !guarded {
                    report.skip(Property::GuardedRemovalStability);
                    continue;
                }
                let expected = if l1 > h + 1 { h } else { h - 1 };
                let moved = reclassify(p, &loc.values);
                report.check(
                    Property::GuardedRemovalStability,
                    matches!(moved, Ok(h2) if h2 == expected),
                    || {
                        Counterexample::new(
                            Property::GuardedRemovalStability,
                            format!("expected K_{expected} after removing r_{l1}, got {moved:?}"),
                        )
                        .with_local(loc)
                    },
                );
            }
        }
    }

    if wants(Property::WeakHomogeneity) {
        for (loc, cats) in &ordered {
            match degree_identical_clone(problem, &loc.values, &mut rng) {
                None => report.skip(Property::WeakHomogeneity),
                Some(clone) => {
                    let other = local(problem, &clone, tol)?;
                    let same = other.categories == Some(*cats) && other.flows == loc.flows;
                    report.check(Property::WeakHomogeneity, same, || {
                        Counterexample::new(
                            Property::WeakHomogeneity,
                            format!(
                                "clone {clone:?} got {:?}, original {cats:?}",
                                other.categories
                            ),
                        )
                        .with_local(loc)
                    });
                }
            }
        }
    }

    if wants(Property::Monotonicity) {
        let best = &ps[0];
        for (loc, cats) in &ordered {
            let better: Vec<f64> = loc
                .values
                .iter()
                .zip(best)
                .map(|(v, b)| {
                    if rng.random_bool(0.3) {
                        *v
                    } else {
                        v + rng.random_range(0.0..=1.0) * (b - v)
                    }
                })
                .collect();
            let other = local(problem, &better, tol)?;
            let ok = match other.categories {
                Some(c) => c.iter().zip(cats).all(|(x, y)| x.at_least_as_good_as(*y)),
                None => false,
            };
            report.check(Property::Monotonicity, ok, || {
                Counterexample::new(
                    Property::Monotonicity,
                    format!(
                        "dominating {better:?} got {:?}, dominated alternative {cats:?}",
                        other.categories
                    ),
                )
                .with_local(loc)
            });
        }
    }

    if wants(Property::CategoryConformity) {
        for h in 1..=k {
            for _ in 0..2 {
                let (upper, lower) = (&ps[h - 1], &ps[h]);
                let probe: Option<Vec<f64>> = upper
                    .iter()
                    .zip(lower)
                    .map(|(u, l)| {
                        let (lo, hi) = (u.min(*l), u.max(*l));
                        (hi > lo).then(|| lo + rng.random_range(0.05..0.95) * (hi - lo))
                    })
                    .collect();
                let Some(probe) = probe else {
                    report.skip(Property::CategoryConformity);
                    continue;
                };
                let inside = degree(problem, &probe, lower)? > SIDE_CONDITION_MARGIN
                    && degree(problem, upper, &probe)? > SIDE_CONDITION_MARGIN;
                if !inside {
                    report.skip(Property::CategoryConformity);
                    continue;
                }
                let loc = local(problem, &probe, tol)?;
                let ok = loc
                    .categories
                    .is_some_and(|c| c.iter().all(|x| x.index() == h));
                report.check(Property::CategoryConformity, ok, || {
                    Counterexample::new(
                        Property::CategoryConformity,
                        format!(
                            "probe between r_{} and r_{h} got {:?}",
                            h + 1,
                            loc.categories
                        ),
                    )
                    .with_local(&loc)
                });
            }
        }
    }

    for (loc, [pos, neg, net]) in &ordered {
        if wants(Property::NegativeAtLeastPositive) {
            report.check(
                Property::NegativeAtLeastPositive,
                neg.at_least_as_good_as(*pos),
                || {
                    Counterexample::new(
                        Property::NegativeAtLeastPositive,
                        format!("negative {neg}, positive {pos}"),
                    )
                    .with_local(loc)
                },
            );
        }
        if wants(Property::NetBetween) {
            let ok = neg.at_least_as_good_as(*net) && net.at_least_as_good_as(*pos);
            report.check(Property::NetBetween, ok, || {
                Counterexample::new(
                    Property::NetBetween,
                    format!("negative {neg}, net {net}, positive {pos}"),
                )
                .with_local(loc)
            });
        }
    }
    Ok(report)
}

/// A different evaluation vector with exactly the same per-criterion degrees
/// against every profile, or `None` if small random moves never keep them.
fn degree_identical_clone(
    problem: &SortingProblem,
    values: &[f64],
    rng: &mut ChaCha8Rng,
) -> Option<Vec<f64>> {
    let ps = problem.profiles().profiles();
    let criteria = problem.criteria();
    let same_degrees = |j: usize, x: f64| {
        ps.iter().all(|r| {
            criteria[j].degree(x, r[j]) == criteria[j].degree(values[j], r[j])
                && criteria[j].degree(r[j], x) == criteria[j].degree(r[j], values[j])
        })
    };
    let mut clone = values.to_vec();
    for j in 0..values.len() {
        let span = (ps[0][j] - ps[ps.len() - 1][j])
            .abs()
            .max(f64::MIN_POSITIVE);
        for scale in [1e-1, 1e-2, 1e-3] {
            let candidate = values[j] + rng.random_range(-1.0..1.0) * scale * span;
            if candidate != values[j] && same_degrees(j, candidate) {
                clone[j] = candidate;
                break;
            }
        }
    }
    (clone != values).then_some(clone)
}

/// Settings for a seeded batch of random problems.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub instances: usize,
    pub seed: u64,
    pub max_criteria: usize,
    pub max_categories: usize,
    pub max_alternatives: usize,
    pub mode: ValidationMode,
    pub functions: Vec<String>,
    pub interaction_density: f64,
    pub interaction_magnitude: f64,
    pub interaction_signs: InteractionSigns,
    pub properties: Vec<Property>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        let gen = InstanceGenConfig::default();
        Self {
            instances: 1000,
            seed: 0,
            max_criteria: 6,
            max_categories: 5,
            max_alternatives: 20,
            mode: ValidationMode::Strong,
            functions: gen.functions,
            interaction_density: 0.6,
            interaction_magnitude: 0.5,
            interaction_signs: InteractionSigns::Any,
            properties: Property::all(),
        }
    }
}

/// Seed of instance `index` in a suite seeded with `base` (splitmix64).
pub fn instance_seed(base: u64, index: usize) -> u64 {
    let mut z = base.wrapping_add((index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Generator settings of instance `index`; its shape is drawn from its seed.
pub fn instance_config(suite: &SuiteConfig, index: usize) -> InstanceGenConfig {
    let seed = instance_seed(suite.seed, index);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5EED);
    let lo = suite.max_criteria.min(2);
    InstanceGenConfig {
        n_criteria: rng.random_range(lo..=suite.max_criteria.max(1)),
        n_categories: rng.random_range(1..=suite.max_categories.max(1)),
        n_alternatives: rng.random_range(1..=suite.max_alternatives.max(1)),
        seed,
        functions: suite.functions.clone(),
        mode: suite.mode,
        interaction_density: suite.interaction_density,
        interaction_magnitude: suite.interaction_magnitude,
        interaction_signs: suite.interaction_signs,
    }
}

/// Generates one instance and runs the selected conditions and properties on
/// it. Counterexamples carry the generator settings and the problem file.
pub fn check_instance(cfg: &InstanceGenConfig, properties: &[Property]) -> Result<PropertyReport> {
    let instance = generate_instance(cfg)?;
    let wanted: BTreeSet<Property> = properties.iter().copied().collect();
    let mut report = if Property::CONDITIONS.iter().any(|p| wanted.contains(p)) {
        check_conditions(&instance.problem)?
    } else {
        PropertyReport::default()
    };
    let propositions: Vec<Property> = Property::PROPOSITIONS
        .into_iter()
        .filter(|p| wanted.contains(p))
        .filter(|p| instance.problem.mode() == ValidationMode::Strong || !p.requires_strong())
        .collect();
    report.merge(check_propositions(
        &instance.problem,
        &propositions,
        cfg.seed ^ 0xC0FFEE,
    )?);
    report.retain(&wanted);
    report.attach(cfg, &instance.file);
    report.seeds = vec![cfg.seed];
    Ok(report)
}

/// Runs [`check_instance`] on every instance of the suite, in parallel, and
/// merges the reports in instance order.
pub fn run_suite(suite: &SuiteConfig) -> Result<PropertyReport> {
    let reports = (0..suite.instances)
        .into_par_iter()
        .map(|i| check_instance(&instance_config(suite, i), &suite.properties))
        .collect::<Result<Vec<_>>>()?;
    let mut total = PropertyReport::default();
    for r in reports {
        total.merge(r);
    }
    Ok(total)
}

/// Comparison of the interaction-free method with weighted-sum FlowSort.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReductionOutcome {
    pub seed: u64,
    pub alternatives: usize,
    pub max_flow_gap: f64,
    pub mismatched_assignments: usize,
}

/// Generates `cfg` without interactions and compares flows and categories
/// with [`classic_flowsort`] using the Shapley values as weights.
pub fn check_reduction(cfg: &InstanceGenConfig) -> Result<ReductionOutcome> {
    let cfg = InstanceGenConfig {
        interaction_density: 0.0,
        ..cfg.clone()
    };
    let instance = generate_instance(&cfg)?;
    let problem = &instance.problem;
    let capacity = problem
        .model()
        .capacity()
        .ok_or_else(|| Error::precondition("the generated model has no capacity"))?;
    let weights = capacity.shapley_interaction()?.shapley().to_vec();
    let options = SortOptions::default();
    let result = sort_all(problem, &options)?;
    let mut max_flow_gap: f64 = 0.0;
    let mut mismatched_assignments = 0;
    for (alt, row) in result
        .alternatives
        .iter()
        .zip(problem.alternatives().rows())
    {
        let classic = classic_flowsort(
            &instance.file.criteria,
            problem.profiles().profiles(),
            row,
            &weights,
            options.tie_tolerance,
        )?;
        for (mine, theirs) in [
            (&alt.flows.positive, &classic.positive),
            (&alt.flows.negative, &classic.negative),
            (&alt.flows.net, &classic.net),
        ] {
            for (a, b) in mine.iter().zip(theirs) {
                max_flow_gap = max_flow_gap.max((a - b).abs());
            }
        }
        let cats: Vec<usize> = alt.categories.iter().map(|c| c.index()).collect();
        if cats != classic.categories {
            mismatched_assignments += 1;
        }
    }
    Ok(ReductionOutcome {
        seed: cfg.seed,
        alternatives: result.alternatives.len(),
        max_flow_gap,
        mismatched_assignments,
    })
}

/// A pair sorted against its own pairwise preference: `better` is assigned a
/// better category than `worse` although `worse` outranks it more.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairwiseViolation {
    pub rule: String,
    pub better: String,
    pub worse: String,
    /// Degree of `worse` over `better`.
    pub forward: f64,
    /// Degree of `better` over `worse`.
    pub backward: f64,
}

/// Pairs whose category order contradicts their direct comparison.
pub fn pairwise_consistency(
    problem: &SortingProblem,
    result: &AssignmentResult,
) -> Result<Vec<PairwiseViolation>> {
    let rows = problem.alternatives().rows();
    let names = problem.alternatives().names();
    let mut out = Vec::new();
    for (r, rule) in result.rules.iter().enumerate() {
        for i in 0..rows.len() {
            for t in 0..rows.len() {
                let (ci, ct) = (
                    result.alternatives[i].categories[r],
                    result.alternatives[t].categories[r],
                );
                if ci.index() >= ct.index() {
                    continue;
                }
                let forward = degree(problem, &rows[t], &rows[i])?;
                let backward = degree(problem, &rows[i], &rows[t])?;
                if forward > backward {
                    out.push(PairwiseViolation {
                        rule: rule.clone(),
                        better: names[i].clone(),
                        worse: names[t].clone(),
                        forward,
                        backward,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Two categories on three equally weighted maximized criteria, where
/// `a_i = (3, 3, 1)` beats the middle profile `(1, 2, 3)`, which beats
/// `a_t = (4, 1, 2)`, while `a_t` beats `a_i`.
pub fn condorcet_example() -> Result<SortingProblem> {
    let criteria: Vec<Criterion> = (1..=3)
        .map(|j| Criterion::usual(format!("g{j}"), Direction::Maximize))
        .collect();
    let profiles = ReferenceProfileSet::new(vec![
        vec![5.0, 5.0, 5.0],
        vec![1.0, 2.0, 3.0],
        vec![0.0, 0.0, 0.0],
    ])?;
    let alternatives = DecisionMatrix::new(
        vec!["a_i".into(), "a_t".into()],
        vec![vec![3.0, 3.0, 1.0], vec![4.0, 1.0, 2.0]],
        3,
    )?;
    let capacity = CapacityModel::additive(vec![1.0 / 3.0; 3])?;
    let model: Arc<dyn OutrankingModel> = Arc::new(ChoquetOutranking::shapley(capacity));
    SortingProblem::new(
        criteria,
        alternatives,
        profiles,
        model,
        ValidationMode::Strict,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn property_names_round_trip() {
        for p in Property::all() {
            assert_eq!(Property::parse(p.name()).unwrap(), p);
        }
        assert!(matches!(
            Property::parse("nope"),
            Err(Error::UnknownStrategy { .. })
        ));
    }

    #[test]
    fn interval_hits_close_the_ends() {
        let f = [1.0, 0.5, 0.0];
        assert_eq!(interval_hits(&f, 0.0, true, 0.0), vec![2]);
        assert_eq!(interval_hits(&f, 0.5, true, 0.0), vec![2]);
        assert_eq!(interval_hits(&f, 0.7, true, 0.0), vec![1]);
        let g = [0.0, 0.5, 1.0];
        assert_eq!(interval_hits(&g, 0.0, false, 0.0), vec![1]);
        assert_eq!(interval_hits(&g, 0.5, false, 0.0), vec![1]);
        assert_eq!(interval_hits(&g, 0.7, false, 0.0), vec![2]);
    }

    #[test]
    fn seeds_differ_per_instance() {
        let a = instance_seed(7, 0);
        let b = instance_seed(7, 1);
        assert_ne!(a, b);
        assert_eq!(a, instance_seed(7, 0));
    }

    #[test]
    fn strong_only_properties_are_refused_on_strict_problems() {
        let problem = condorcet_example().unwrap();
        let err = check_propositions(&problem, &[Property::RemovalStability], 0).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }
}
