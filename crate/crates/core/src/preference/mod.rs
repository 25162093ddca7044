//! Criteria, preference functions, and per-criterion preference degrees.

pub mod functions;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::registry::Registry;
use crate::validation::{Constraint, ValidationReport, Violation};

pub use crate::outranking::validate_profiles;
pub use functions::Thresholds;

/// Maps a performance difference to a preference degree in `[0, 1]`.
///
/// Implementations must return 0 for `d ≤ 0` and be non-decreasing in `d`.
pub trait PreferenceFunction: Send + Sync + fmt::Debug {
    fn name(&self) -> &'static str;

    fn degree(&self, d: f64) -> f64;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Maximize,
    Minimize,
}

impl Direction {
    pub fn flipped(self) -> Self {
        match self {
            Direction::Maximize => Direction::Minimize,
            Direction::Minimize => Direction::Maximize,
        }
    }

    /// Whether `x` is at least as good as `y`.
    pub fn at_least_as_good(self, x: f64, y: f64) -> bool {
        match self {
            Direction::Maximize => x >= y,
            Direction::Minimize => x <= y,
        }
    }
}

/// Serializable description of a criterion; resolved into a [`Criterion`]
/// through a [`Registry`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CriterionSpec {
    pub name: String,
    pub direction: Direction,
    /// Registered preference function name, e.g. `usual` or `linear`.
    #[serde(default = "default_function")]
    pub function: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<f64>,
}

fn default_function() -> String {
    "usual".to_string()
}

impl CriterionSpec {
    pub fn new(
        name: impl Into<String>,
        direction: Direction,
        function: &str,
        t: Thresholds,
    ) -> Self {
        Self {
            name: name.into(),
            direction,
            function: function.to_string(),
            q: t.q,
            p: t.p,
            s: t.s,
        }
    }

    pub fn usual(name: impl Into<String>, direction: Direction) -> Self {
        Self::new(name, direction, "usual", Thresholds::none())
    }

    pub fn thresholds(&self) -> Thresholds {
        Thresholds {
            q: self.q,
            p: self.p,
            s: self.s,
        }
    }
}

/// A criterion with its preference function resolved.
#[derive(Debug, Clone)]
pub struct Criterion {
    pub spec: CriterionSpec,
    function: Arc<dyn PreferenceFunction>,
}

impl Criterion {
    pub fn new(spec: CriterionSpec, registry: &Registry) -> Result<Self> {
        let function = registry
            .preference_function(&spec.function, &spec.thresholds())
            .map_err(|e| match e {
                Error::Structural(m) => Error::structural(format!("criterion {}: {m}", spec.name)),
                Error::Domain(m) => Error::domain(format!("criterion {}: {m}", spec.name)),
                other => other,
            })?;
        Ok(Self { spec, function })
    }

    pub fn with_function(
        name: impl Into<String>,
        direction: Direction,
        function: Arc<dyn PreferenceFunction>,
    ) -> Self {
        let spec = CriterionSpec::new(name, direction, function.name(), Thresholds::none());
        Self { spec, function }
    }

    pub fn usual(name: impl Into<String>, direction: Direction) -> Self {
        Self::with_function(name, direction, Arc::new(functions::Usual))
    }

    pub fn name(&self) -> &str {
        &self.spec.name
    }

    pub fn direction(&self) -> Direction {
        self.spec.direction
    }

    pub fn function(&self) -> &Arc<dyn PreferenceFunction> {
        &self.function
    }

    /// `P_j(x, y)` for evaluations already known to be finite.
    pub fn degree(&self, x: f64, y: f64) -> f64 {
        self.function.degree(oriented(self.spec.direction, x, y))
    }
}

fn oriented(direction: Direction, x: f64, y: f64) -> f64 {
    match direction {
        Direction::Maximize => x - y,
        Direction::Minimize => y - x,
    }
}

/// `d_j(x, y)`, positive when `x` is better than `y` on the criterion.
pub fn signed_difference(direction: Direction, x: f64, y: f64) -> Result<f64> {
    if !x.is_finite() || !y.is_finite() {
        return Err(Error::domain(format!(
            "cannot compare non-finite evaluations {x} and {y}"
        )));
    }
    Ok(oriented(direction, x, y))
}

/// `P_j(d)` for the criterion's preference function.
pub fn preference_degree(criterion: &Criterion, d: f64) -> f64 {
    criterion.function.degree(d)
}

/// Per-criterion degrees `P_j(x, y)`.
pub fn degree_vector(criteria: &[Criterion], x: &[f64], y: &[f64]) -> Vec<f64> {
    criteria
        .iter()
        .enumerate()
        .map(|(j, c)| c.degree(x[j], y[j]))
        .collect()
}

/// Per-criterion preference degrees between all elements of a local set,
/// stored as `[x][y][j]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeTensor {
    size: usize,
    n: usize,
    data: Vec<f64>,
}

impl DegreeTensor {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, x: usize, y: usize) -> &[f64] {
        let start = (x * self.size + y) * self.n;
        &self.data[start..start + self.n]
    }
}

/// Degrees between every pair of `r_1, …, r_{k+1}, a` (in that order).
pub fn pairwise_degrees(
    alternative: &[f64],
    profiles: &ReferenceProfileSet,
    criteria: &[Criterion],
) -> Result<DegreeTensor> {
    let n = criteria.len();
    if alternative.len() != n || profiles.n() != n {
        return Err(Error::structural(format!(
            "{n} criteria but the alternative has {} and the profiles {} evaluations",
            alternative.len(),
            profiles.n()
        )));
    }
    let mut elements: Vec<&[f64]> = profiles.profiles().iter().map(Vec::as_slice).collect();
    elements.push(alternative);
    let size = elements.len();
    let mut data = Vec::with_capacity(size * size * n);
    for x in &elements {
        for y in &elements {
            for (j, c) in criteria.iter().enumerate() {
                data.push(
                    signed_difference(c.direction(), x[j], y[j]).map(|d| c.function.degree(d))?,
                );
            }
        }
    }
    Ok(DegreeTensor { size, n, data })
}

/// Ordered limiting profiles `r_1` (best) to `r_{k+1}` (worst) and the labels
/// of the `k` categories between them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceProfileSet {
    profiles: Vec<Vec<f64>>,
    labels: Vec<String>,
}

impl ReferenceProfileSet {
    /// Categories are labelled `K_1 … K_k`.
    pub fn new(profiles: Vec<Vec<f64>>) -> Result<Self> {
        let labels = (1..profiles.len()).map(|h| format!("K_{h}")).collect();
        Self::with_labels(profiles, labels)
    }

    pub fn with_labels(profiles: Vec<Vec<f64>>, labels: Vec<String>) -> Result<Self> {
        if profiles.len() < 2 {
            return Err(Error::structural(format!(
                "at least two limiting profiles are needed, got {}",
                profiles.len()
            )));
        }
        if labels.len() != profiles.len() - 1 {
            return Err(Error::structural(format!(
                "{} profiles delimit {} categories but {} labels were given",
                profiles.len(),
                profiles.len() - 1,
                labels.len()
            )));
        }
        let n = profiles[0].len();
        for (h, p) in profiles.iter().enumerate() {
            if p.len() != n {
                return Err(Error::structural(format!(
                    "profile r_{} has {} evaluations, expected {n}",
                    h + 1,
                    p.len()
                )));
            }
            if let Some(j) = p.iter().position(|v| !v.is_finite()) {
                return Err(Error::domain(format!(
                    "profile r_{} has a non-finite evaluation on criterion {}",
                    h + 1,
                    j + 1
                )));
            }
        }
        Ok(Self { profiles, labels })
    }

    pub fn profiles(&self) -> &[Vec<f64>] {
        &self.profiles
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Number of categories `k`.
    pub fn categories(&self) -> usize {
        self.labels.len()
    }

    pub fn n(&self) -> usize {
        self.profiles[0].len()
    }

    pub fn best(&self) -> &[f64] {
        &self.profiles[0]
    }

    pub fn worst(&self) -> &[f64] {
        &self.profiles[self.profiles.len() - 1]
    }
}

/// Named alternatives and their evaluations on each criterion's native scale.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct DecisionMatrix {
    names: Vec<String>,
    rows: Vec<Vec<f64>>,
}

impl DecisionMatrix {
    pub fn new(names: Vec<String>, rows: Vec<Vec<f64>>, n: usize) -> Result<Self> {
        if names.len() != rows.len() {
            return Err(Error::structural(format!(
                "{} names for {} alternatives",
                names.len(),
                rows.len()
            )));
        }
        for (name, row) in names.iter().zip(&rows) {
            if row.len() != n {
                return Err(Error::structural(format!(
                    "alternative {name} has {} evaluations, expected {n}",
                    row.len()
                )));
            }
            if let Some(j) = row.iter().position(|v| !v.is_finite()) {
                return Err(Error::domain(format!(
                    "alternative {name} has a non-finite evaluation on criterion {}",
                    j + 1
                )));
            }
        }
        Ok(Self { names, rows })
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.rows[i]
    }
}

/// Checks that every profile is at least as good as every later one on each
/// criterion.
pub fn validate_profile_order(
    profiles: &ReferenceProfileSet,
    criteria: &[Criterion],
) -> ValidationReport {
    let mut report = ValidationReport::new();
    let ps = profiles.profiles();
    for h in 0..ps.len() {
        for l in h + 1..ps.len() {
            for (j, c) in criteria.iter().enumerate() {
                if !c.direction().at_least_as_good(ps[h][j], ps[l][j]) {
                    report.push(
                        Violation::new(
                            Constraint::ProfileOrder,
                            format!(
                                "r_{} = {} is worse than r_{} = {} on {}",
                                h + 1,
                                ps[h][j],
                                l + 1,
                                ps[l][j],
                                c.name()
                            ),
                        )
                        .at(format!("profiles.r_{}.{}", h + 1, c.name())),
                    );
                }
            }
        }
    }
    report
}

/// Checks that every alternative lies between the worst and best profile on
/// every criterion.
pub fn validate_bounds(
    matrix: &DecisionMatrix,
    profiles: &ReferenceProfileSet,
    criteria: &[Criterion],
) -> ValidationReport {
    let mut report = ValidationReport::new();
    let (best, worst) = (profiles.best(), profiles.worst());
    let k1 = profiles.profiles().len();
    for (name, row) in matrix.names().iter().zip(matrix.rows()) {
        for (j, c) in criteria.iter().enumerate() {
            let v = row[j];
            let (bound, label, side) = if !c.direction().at_least_as_good(best[j], v) {
                (best[j], "r_1".to_string(), "better than")
            } else if !c.direction().at_least_as_good(v, worst[j]) {
                (worst[j], format!("r_{k1}"), "worse than")
            } else {
                continue;
            };
            report.push(
                Violation::new(
                    Constraint::EvaluationBounds,
                    format!(
                        "{name} scores {v} on {}, {side} the limiting profile {label} ({bound})",
                        c.name()
                    ),
                )
                .at(format!("alternatives.{name}.{}", c.name())),
            );
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn car_criteria() -> Vec<Criterion> {
        vec![
            Criterion::usual("price", Direction::Minimize),
            Criterion::usual("acceleration", Direction::Minimize),
            Criterion::usual("max_speed", Direction::Maximize),
            Criterion::usual("consumption", Direction::Minimize),
        ]
    }

    fn car_profiles() -> ReferenceProfileSet {
        ReferenceProfileSet::new(vec![
            vec![15000.0, 10.5, 190.0, 3.0],
            vec![16000.0, 11.5, 180.0, 3.4],
            vec![17000.0, 12.5, 170.0, 3.8],
            vec![18000.0, 15.0, 160.0, 4.2],
        ])
        .unwrap()
    }

    #[test]
    fn signed_differences() {
        assert_eq!(
            signed_difference(Direction::Minimize, 16000.0, 15000.0).unwrap(),
            -1000.0
        );
        assert_eq!(
            signed_difference(Direction::Maximize, 185.0, 180.0).unwrap(),
            5.0
        );
        assert_eq!(
            signed_difference(Direction::Maximize, 3.0, 3.0).unwrap(),
            0.0
        );
        assert!(signed_difference(Direction::Maximize, f64::NAN, 3.0).is_err());
    }

    #[test]
    fn first_car_against_profiles() {
        let t = pairwise_degrees(
            &[16000.0, 12.0, 185.0, 3.1],
            &car_profiles(),
            &car_criteria(),
        )
        .unwrap();
        let a = 4;
        let mut row = Vec::new();
        for j in 0..4 {
            for h in 0..4 {
                row.push(t.get(a, h)[j]);
            }
        }
        let expected = [
            0., 0., 1., 1., 0., 0., 1., 1., 0., 1., 1., 1., 0., 1., 1., 1.,
        ];
        assert_eq!(row, expected);
        assert!(t.get(a, a).iter().all(|v| *v == 0.0));
        assert!(t.get(0, 3).iter().all(|v| *v == 1.0));
    }

    #[test]
    fn dimension_mismatch_is_structural() {
        assert!(matches!(
            pairwise_degrees(&[1.0, 2.0], &car_profiles(), &car_criteria()),
            Err(Error::Structural(_))
        ));
        assert!(ReferenceProfileSet::new(vec![vec![1.0]]).is_err());
        assert!(ReferenceProfileSet::new(vec![vec![1.0], vec![1.0, 2.0]]).is_err());
    }

    #[test]
    fn profile_order_names_the_criterion() {
        let profiles = ReferenceProfileSet::new(vec![
            vec![15000.0, 10.5, 190.0, 3.0],
            vec![16000.0, 11.5, 195.0, 3.4],
        ])
        .unwrap();
        let report = validate_profile_order(&profiles, &car_criteria());
        assert_eq!(report.violations.len(), 1);
        assert!(report.violations[0].message.contains("max_speed"));
        assert!(validate_profile_order(&car_profiles(), &car_criteria()).is_valid());
    }

    #[test]
    fn out_of_band_alternative_names_bound() {
        let m = DecisionMatrix::new(
            vec!["cheap".into()],
            vec![vec![14000.0, 12.0, 185.0, 3.1]],
            4,
        )
        .unwrap();
        let report = validate_bounds(&m, &car_profiles(), &car_criteria());
        assert_eq!(report.violations.len(), 1);
        let v = &report.violations[0];
        assert!(
            v.message.contains("price") && v.message.contains("r_1"),
            "{v}"
        );
        assert_eq!(v.location.as_deref(), Some("alternatives.cheap.price"));
    }

    #[test]
    fn criterion_errors_name_the_criterion() {
        let spec = CriterionSpec::new("price", Direction::Minimize, "linear", Thresholds::q(1.0));
        let err = Criterion::new(spec, &Registry::default()).unwrap_err();
        assert!(err.to_string().contains("price"), "{err}");
    }

    proptest! {
        #[test]
        fn degrees_are_exclusive_and_direction_coherent(
            x in -100.0f64..100.0,
            y in -100.0f64..100.0,
            q in 0.0f64..5.0,
            extra in 0.1f64..10.0,
        ) {
            let reg = Registry::default();
            let shapes = [
                ("usual", Thresholds::none()),
                ("u_shape", Thresholds::q(q)),
                ("v_shape", Thresholds::p(q + extra)),
                ("level", Thresholds::qp(q, q + extra)),
                ("linear", Thresholds::qp(q, q + extra)),
                ("gaussian", Thresholds::s(extra)),
            ];
            for (shape, t) in shapes {
                for dir in [Direction::Maximize, Direction::Minimize] {
                    let c = Criterion::new(CriterionSpec::new("c", dir, shape, t), &reg).unwrap();
                    let (pxy, pyx) = (c.degree(x, y), c.degree(y, x));
                    prop_assert!(pxy == 0.0 || pyx == 0.0);
                    let flipped = Criterion::new(CriterionSpec::new("c", dir.flipped(), shape, t), &reg).unwrap();
                    prop_assert_eq!(flipped.degree(-x, -y), pxy);
                }
            }
        }
    }
}
