//! Aggregation of per-criterion preference degrees into an outranking degree.

use std::fmt;
use std::sync::Arc;

use crate::capacity::choquet::{shapley_form_unchecked, ShapleyForm};
use crate::capacity::{validate_two_additive, CapacityModel, ChoquetForm};
use crate::error::{Error, Result};
use crate::preference::{degree_vector, validate_profile_order, Criterion, ReferenceProfileSet};
use crate::validation::{Constraint, ValidationMode, ValidationReport, Violation};
use crate::REPRESENTATION_TOLERANCE;

/// Turns the vector `P_j(x, y)` into the degree to which `x` outranks `y`.
pub trait OutrankingModel: Send + Sync + fmt::Debug {
    fn name(&self) -> &str;

    /// Number of criteria the model aggregates.
    fn n(&self) -> usize;

    /// Constraint violations of the model's parameters.
    fn validate(&self) -> Result<ValidationReport>;

    fn degree(&self, degrees: &[f64]) -> Result<f64>;

    /// The capacity behind the model, when it is Choquet-based.
    fn capacity(&self) -> Option<&CapacityModel> {
        None
    }
}

/// Choquet integral of the preference degrees.
#[derive(Debug, Clone)]
pub struct ChoquetOutranking {
    capacity: Arc<CapacityModel>,
    form: Arc<dyn ChoquetForm>,
}

impl ChoquetOutranking {
    pub fn new(capacity: Arc<CapacityModel>, form: Arc<dyn ChoquetForm>) -> Self {
        Self { capacity, form }
    }

    /// Uses the Shapley/interaction formulation.
    pub fn shapley(capacity: CapacityModel) -> Self {
        Self::new(Arc::new(capacity), Arc::new(ShapleyForm))
    }

    pub fn form(&self) -> &Arc<dyn ChoquetForm> {
        &self.form
    }

    pub fn capacity_model(&self) -> &Arc<CapacityModel> {
        &self.capacity
    }
}

impl OutrankingModel for ChoquetOutranking {
    fn name(&self) -> &str {
        self.form.name()
    }

    fn n(&self) -> usize {
        self.capacity.n()
    }

    fn validate(&self) -> Result<ValidationReport> {
        self.capacity.validate()
    }

    fn degree(&self, degrees: &[f64]) -> Result<f64> {
        self.form.integrate(degrees, &self.capacity)
    }

    fn capacity(&self) -> Option<&CapacityModel> {
        Some(&self.capacity)
    }
}

/// Weighted sum of the preference degrees.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedOutranking {
    weights: Vec<f64>,
}

impl WeightedOutranking {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        check_weights(&weights)?;
        Ok(Self { weights })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

impl OutrankingModel for WeightedOutranking {
    fn name(&self) -> &str {
        "weighted"
    }

    fn n(&self) -> usize {
        self.weights.len()
    }

    fn validate(&self) -> Result<ValidationReport> {
        Ok(ValidationReport::new())
    }

    fn degree(&self, degrees: &[f64]) -> Result<f64> {
        if degrees.len() != self.weights.len() {
            return Err(Error::structural(format!(
                "expected {} degrees, got {}",
                self.weights.len(),
                degrees.len()
            )));
        }
        Ok(self.weights.iter().zip(degrees).map(|(w, p)| w * p).sum())
    }
}

fn check_weights(weights: &[f64]) -> Result<()> {
    if weights.is_empty() {
        return Err(Error::structural("no weights given"));
    }
    if let Some(j) = weights.iter().position(|w| !(w.is_finite() && *w > 0.0)) {
        return Err(Error::precondition(format!(
            "weight of criterion {} is {}, expected a positive number",
            j + 1,
            weights[j]
        )));
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::precondition(format!(
            "weights sum to {total}, expected 1"
        )));
    }
    Ok(())
}

fn check_degrees(degrees: &[f64], n: usize) -> Result<()> {
    if degrees.len() != n {
        return Err(Error::structural(format!(
            "expected {n} degrees, got {}",
            degrees.len()
        )));
    }
    if let Some(p) = degrees.iter().find(|p| !(0.0..=1.0).contains(*p)) {
        return Err(Error::domain(format!(
            "preference degree {p} outside [0, 1]"
        )));
    }
    Ok(())
}

/// 2-additive Choquet integral of the preference degrees, in its
/// Shapley/interaction form. Rejects invalid or non-2-additive capacities.
pub fn choquet_outranking_degree(degrees: &[f64], capacity: &CapacityModel) -> Result<f64> {
    let model = capacity.shapley_interaction()?;
    let report = validate_two_additive(model);
    if !report.is_valid() {
        return Err(Error::precondition(format!("invalid capacity:\n{report}")));
    }
    check_degrees(degrees, model.n())?;
    Ok(shapley_form_unchecked(degrees, model))
}

/// `Σ_j w_j P_j(x, y)`; weights must be positive and sum to 1 within 1e-9.
pub fn weighted_outranking_degree(degrees: &[f64], weights: &[f64]) -> Result<f64> {
    check_weights(weights)?;
    check_degrees(degrees, weights.len())?;
    Ok(weights.iter().zip(degrees).map(|(w, p)| w * p).sum())
}

/// Checks the profile ordering required by `mode`.
///
/// Weak mode checks per-criterion ordering only. Strict mode also requires
/// every better profile to outrank every worse one with a positive degree;
/// strong mode requires that degree to be 1 (within 1e-12).
pub fn validate_profiles(
    profiles: &ReferenceProfileSet,
    criteria: &[Criterion],
    model: &dyn OutrankingModel,
    mode: ValidationMode,
) -> Result<ValidationReport> {
    let mut report = validate_profile_order(profiles, criteria);
    if mode == ValidationMode::Weak {
        return Ok(report);
    }
    let ps = profiles.profiles();
    for h in 0..ps.len() {
        for l in h + 1..ps.len() {
            let degree = model.degree(&degree_vector(criteria, &ps[h], &ps[l]))?;
            let location = format!("profiles.r_{}", h + 1);
            if degree <= 0.0 {
                report.push(
                    Violation::new(
                        Constraint::StrictProfilePreference,
                        format!("r_{} does not outrank r_{} (degree {degree})", h + 1, l + 1),
                    )
                    .at(location),
                );
            } else if mode == ValidationMode::Strong
                && (degree - 1.0).abs() > REPRESENTATION_TOLERANCE
            {
                report.push(
                    Violation::new(
                        Constraint::StrongProfilePreference,
                        format!(
                            "r_{} outranks r_{} with degree {degree}, expected 1",
                            h + 1,
                            l + 1
                        ),
                    )
                    .at(location),
                );
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::capacity::ShapleyInteractionModel;
    use crate::preference::Direction;

    fn car_capacity() -> CapacityModel {
        CapacityModel::from_shapley_interaction(
            ShapleyInteractionModel::new(
                vec![0.25, 0.21, 0.16, 0.38],
                [((1, 2), -0.08), ((2, 3), 0.10)],
            )
            .unwrap(),
        )
    }

    #[test]
    fn choquet_degree_of_first_car_over_second_profile() {
        let cap = car_capacity();
        let v = choquet_outranking_degree(&[0.0, 0.0, 1.0, 1.0], &cap).unwrap();
        assert!((v - 0.58).abs() < 1e-12);
        assert_eq!(choquet_outranking_degree(&[0.0; 4], &cap).unwrap(), 0.0);
        assert!((choquet_outranking_degree(&[1.0; 4], &cap).unwrap() - 1.0).abs() < 1e-12);
        assert!(matches!(
            choquet_outranking_degree(&[1.5, 0.0, 0.0, 0.0], &cap),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn invalid_capacity_is_a_precondition_error() {
        let cap = CapacityModel::from_shapley_interaction(
            ShapleyInteractionModel::new(vec![0.5, 0.5], [((0, 1), 1.2)]).unwrap(),
        );
        assert!(matches!(
            choquet_outranking_degree(&[0.5, 0.5], &cap),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn weighted_degree() {
        let w = [0.25; 4];
        assert_eq!(
            weighted_outranking_degree(&[0.0, 0.0, 1.0, 1.0], &w).unwrap(),
            0.5
        );
        assert_eq!(weighted_outranking_degree(&[0.0; 4], &w).unwrap(), 0.0);
        assert!(matches!(
            weighted_outranking_degree(&[0.0; 2], &[0.5, 0.49]),
            Err(Error::Precondition(_))
        ));
        assert!(weighted_outranking_degree(&[0.0; 2], &[0.5, 0.5 + 1e-10]).is_ok());
    }

    #[test]
    fn weighted_matches_additive_choquet() {
        let w = vec![0.1, 0.2, 0.3, 0.4];
        let cap = CapacityModel::additive(w.clone()).unwrap();
        let p = [0.3, 1.0, 0.0, 0.7];
        let a = weighted_outranking_degree(&p, &w).unwrap();
        let b = choquet_outranking_degree(&p, &cap).unwrap();
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn profile_modes() {
        let criteria = vec![
            Criterion::usual("a", Direction::Maximize),
            Criterion::usual("b", Direction::Maximize),
        ];
        let model = WeightedOutranking::new(vec![0.5, 0.5]).unwrap();
        let equal = ReferenceProfileSet::new(vec![
            vec![3.0, 3.0],
            vec![2.0, 2.0],
            vec![2.0, 2.0],
            vec![1.0, 1.0],
        ])
        .unwrap();
        assert!(
            validate_profiles(&equal, &criteria, &model, ValidationMode::Weak)
                .unwrap()
                .is_valid()
        );
        let strict = validate_profiles(&equal, &criteria, &model, ValidationMode::Strict).unwrap();
        assert!(strict.has(&Constraint::StrictProfilePreference));

        let partial = ReferenceProfileSet::new(vec![vec![3.0, 2.0], vec![1.0, 2.0]]).unwrap();
        assert!(
            validate_profiles(&partial, &criteria, &model, ValidationMode::Strict)
                .unwrap()
                .is_valid()
        );
        let strong =
            validate_profiles(&partial, &criteria, &model, ValidationMode::Strong).unwrap();
        assert!(strong.has(&Constraint::StrongProfilePreference));
    }
}
