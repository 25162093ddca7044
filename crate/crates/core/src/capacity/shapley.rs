use std::collections::BTreeMap;

use crate::capacity::MobiusRepresentation;
use crate::error::{Error, Result};
use crate::validation::{Constraint, ValidationReport, Violation};
use crate::REPRESENTATION_TOLERANCE;

/// A 2-additive capacity given by Shapley importances `I_j` and pairwise
/// interaction indices `I_js` (positive for synergy, negative for redundancy).
///
/// Criteria are 0-based; pairs are stored with `j < s` and missing pairs mean
/// no interaction.
#[derive(Debug, Clone, PartialEq)]
pub struct ShapleyInteractionModel {
    shapley: Vec<f64>,
    interactions: BTreeMap<(usize, usize), f64>,
}

impl ShapleyInteractionModel {
    pub fn new<I>(shapley: Vec<f64>, interactions: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((usize, usize), f64)>,
    {
        let n = shapley.len();
        if n == 0 {
            return Err(Error::structural("a capacity needs at least one criterion"));
        }
        if let Some(j) = shapley.iter().position(|v| !v.is_finite()) {
            return Err(Error::domain(format!("I_{} is not finite", j + 1)));
        }
        let mut map = BTreeMap::new();
        for ((a, b), v) in interactions {
            if a == b || a >= n || b >= n {
                return Err(Error::structural(format!(
                    "invalid interaction pair ({}, {}) for {n} criteria",
                    a + 1,
                    b + 1
                )));
            }
            if !v.is_finite() {
                return Err(Error::domain(format!("I_{}{} is not finite", a + 1, b + 1)));
            }
            let key = (a.min(b), a.max(b));
            if map.insert(key, v).is_some() {
                return Err(Error::structural(format!(
                    "interaction ({}, {}) given twice",
                    key.0 + 1,
                    key.1 + 1
                )));
            }
        }
        Ok(Self {
            shapley,
            interactions: map,
        })
    }

    /// No interactions: the Shapley values act as weights of a weighted sum.
    pub fn additive(weights: Vec<f64>) -> Result<Self> {
        Self::new(weights, [])
    }

    pub fn n(&self) -> usize {
        self.shapley.len()
    }

    pub fn shapley(&self) -> &[f64] {
        &self.shapley
    }

    pub fn interaction(&self, j: usize, s: usize) -> f64 {
        self.interactions
            .get(&(j.min(s), j.max(s)))
            .copied()
            .unwrap_or(0.0)
    }

    /// Stored pairs `((j, s), I_js)` with `j < s`.
    pub fn interactions(&self) -> impl Iterator<Item = ((usize, usize), f64)> + '_ {
        self.interactions.iter().map(|(k, v)| (*k, *v))
    }

    /// `I_j − ½ Σ_{s≠j} |I_js|`, the part of criterion `j`'s importance not
    /// tied up in interactions.
    pub fn slack(&self, j: usize) -> f64 {
        let tied: f64 = self
            .interactions
            .iter()
            .filter(|((a, b), _)| *a == j || *b == j)
            .map(|(_, v)| v.abs())
            .sum();
        self.shapley[j] - 0.5 * tied
    }

    /// Converts to Möbius masses without validating.
    pub fn to_mobius(&self) -> MobiusRepresentation {
        let n = self.n();
        let mut singles = self.shapley.clone();
        for (&(j, s), &v) in &self.interactions {
            singles[j] -= 0.5 * v;
            singles[s] -= 0.5 * v;
        }
        MobiusRepresentation::two_additive(&singles, self.interactions())
            .unwrap_or_else(|e| unreachable!("pairs were checked against n = {n}: {e}"))
    }
}

/// Checks `Σ I_j = 1`, `I_j ≥ 0` and the monotonicity slack of every criterion.
pub fn validate_two_additive(model: &ShapleyInteractionModel) -> ValidationReport {
    let tol = REPRESENTATION_TOLERANCE;
    let mut report = ValidationReport::new();
    let total: f64 = model.shapley.iter().sum();
    if (total - 1.0).abs() > tol {
        report.push(Violation::new(
            Constraint::ShapleyNormalization,
            format!("Shapley values sum to {total}, expected 1"),
        ));
    }
    for (j, &v) in model.shapley.iter().enumerate() {
        if v < -tol {
            report.push(Violation::new(
                Constraint::ShapleyNormalization,
                format!("I_{} = {v} is negative", j + 1),
            ));
        }
    }
    for j in 0..model.n() {
        let slack = model.slack(j);
        if slack < -tol {
            report.push(Violation::new(
                Constraint::TwoAdditiveMonotonicity,
                format!(
                    "criterion {}: I_{} − ½Σ|I_{}s| = {slack} < 0",
                    j + 1,
                    j + 1,
                    j + 1
                ),
            ));
        }
    }
    report
}

/// `m({j,s}) = I_js` and `m({j}) = I_j − ½ Σ_s I_js`. Rejects invalid models.
pub fn shapley_interaction_to_mobius(
    model: &ShapleyInteractionModel,
) -> Result<MobiusRepresentation> {
    validate_two_additive(model).into_result()?;
    Ok(model.to_mobius())
}

/// `I_j = m({j}) + ½ Σ_s m({j,s})` for a 2-additive representation.
pub fn shapley_values(m: &MobiusRepresentation) -> Result<Vec<f64>> {
    m.require_two_additive()?;
    let (mut values, pairs) = m.split_two_additive();
    for ((j, s), v) in pairs {
        values[j] += 0.5 * v;
        values[s] += 0.5 * v;
    }
    Ok(values)
}

/// Inverse of [`shapley_interaction_to_mobius`]; total on 2-additive input.
pub fn mobius_to_shapley_interaction(m: &MobiusRepresentation) -> Result<ShapleyInteractionModel> {
    let shapley = shapley_values(m)?;
    let (_, pairs) = m.split_two_additive();
    ShapleyInteractionModel::new(shapley, pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::capacity::Subset;

    fn car_model() -> ShapleyInteractionModel {
        ShapleyInteractionModel::new(
            vec![0.25, 0.21, 0.16, 0.38],
            [((1, 2), -0.08), ((2, 3), 0.10)],
        )
        .unwrap()
    }

    #[test]
    fn two_criteria_conversion() {
        let model = ShapleyInteractionModel::new(vec![0.5, 0.5], [((0, 1), 0.2)]).unwrap();
        let m = shapley_interaction_to_mobius(&model).unwrap();
        assert!((m.mass(Subset::singleton(0)) - 0.4).abs() < 1e-15);
        assert!((m.mass(Subset::singleton(1)) - 0.4).abs() < 1e-15);
        assert!((m.mass(Subset::pair(0, 1)) - 0.2).abs() < 1e-15);
        let back = shapley_values(&m).unwrap();
        assert!((back[0] - 0.5).abs() < 1e-15 && (back[1] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn car_model_masses() {
        let m = shapley_interaction_to_mobius(&car_model()).unwrap();
        let expected = [
            (Subset::singleton(0), 0.25),
            (Subset::singleton(1), 0.25),
            (Subset::singleton(2), 0.15),
            (Subset::singleton(3), 0.33),
            (Subset::pair(1, 2), -0.08),
            (Subset::pair(2, 3), 0.10),
        ];
        for (s, v) in expected {
            assert!((m.mass(s) - v).abs() < 1e-12, "{s}: {}", m.mass(s));
        }
        assert!((m.total_mass() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn car_model_is_valid_with_expected_slack() {
        let model = car_model();
        assert!(validate_two_additive(&model).is_valid());
        assert!((model.slack(2) - 0.07).abs() < 1e-12);
    }

    #[test]
    fn excessive_interaction_violates_both_criteria() {
        let model = ShapleyInteractionModel::new(vec![0.5, 0.5], [((0, 1), 1.2)]).unwrap();
        let report = validate_two_additive(&model);
        let count = report
            .violations
            .iter()
            .filter(|v| v.constraint == Constraint::TwoAdditiveMonotonicity)
            .count();
        assert_eq!(count, 2);
        assert!(matches!(
            shapley_interaction_to_mobius(&model),
            Err(Error::Invalid(_))
        ));
    }

    #[test]
    fn additive_model_is_valid_and_reduces() {
        let model = ShapleyInteractionModel::additive(vec![0.3, 0.3, 0.4]).unwrap();
        assert!(validate_two_additive(&model).is_valid());
        let m = shapley_interaction_to_mobius(&model).unwrap();
        for (j, w) in [0.3, 0.3, 0.4].iter().enumerate() {
            assert_eq!(m.mass(Subset::singleton(j)), *w);
        }
    }

    #[test]
    fn slack_of_minus_tolerance_passes() {
        let model =
            ShapleyInteractionModel::new(vec![0.5 - 1e-13, 0.5 + 1e-13], [((0, 1), 1.0)]).unwrap();
        assert!(!validate_two_additive(&model).has(&Constraint::TwoAdditiveMonotonicity));
    }

    #[test]
    fn normalization_violations() {
        let model = ShapleyInteractionModel::additive(vec![0.5, 0.4]).unwrap();
        assert!(validate_two_additive(&model).has(&Constraint::ShapleyNormalization));
        let model = ShapleyInteractionModel::additive(vec![1.2, -0.2]).unwrap();
        let report = validate_two_additive(&model);
        assert!(report.has(&Constraint::ShapleyNormalization));
    }

    #[test]
    fn round_trip_through_mobius() {
        let model = car_model();
        let back = mobius_to_shapley_interaction(&model.to_mobius()).unwrap();
        for j in 0..4 {
            assert!((back.shapley()[j] - model.shapley()[j]).abs() < 1e-12);
            for s in 0..4 {
                if s != j {
                    assert!((back.interaction(j, s) - model.interaction(j, s)).abs() < 1e-12);
                }
            }
        }
    }
}
