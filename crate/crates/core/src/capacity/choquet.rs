//! The Choquet integral in its four equivalent formulations.

use crate::capacity::shapley::validate_two_additive;
use crate::capacity::{
    CapacityLattice, CapacityModel, MobiusRepresentation, ShapleyInteractionModel, Subset,
};
use crate::error::{Error, Result};

fn check_values(values: &[f64], n: usize) -> Result<()> {
    if values.len() != n {
        return Err(Error::structural(format!(
            "expected {n} values, got {}",
            values.len()
        )));
    }
    if let Some((j, v)) = values
        .iter()
        .enumerate()
        .find(|(_, v)| !v.is_finite() || **v < 0.0)
    {
        return Err(Error::domain(format!(
            "value {v} of criterion {} must be finite and nonnegative",
            j + 1
        )));
    }
    Ok(())
}

/// `Σ_j [g_(j) − g_(j−1)] μ(N_j)` with values sorted ascending (ties by
/// criterion index) and `N_j` the criteria at positions `j..n`.
pub fn choquet_lattice(values: &[f64], cap: &CapacityLattice) -> Result<f64> {
    check_values(values, cap.n())?;
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
    let mut upper = cap.full();
    let mut previous = 0.0;
    let mut total = 0.0;
    for &j in &order {
        total += (values[j] - previous) * cap.value(upper);
        previous = values[j];
        upper = upper.without(j);
    }
    Ok(total)
}

/// `Σ_T m(T) min_{j∈T} g_j`.
pub fn choquet_mobius(values: &[f64], m: &MobiusRepresentation) -> Result<f64> {
    check_values(values, m.n())?;
    Ok(m.masses()
        .filter(|(t, _)| !t.is_empty())
        .map(|(t, mass)| mass * min_over(values, t))
        .sum())
}

fn min_over(values: &[f64], t: Subset) -> f64 {
    t.indices().map(|j| values[j]).fold(f64::INFINITY, f64::min)
}

/// `Σ_j m({j}) g_j + Σ_{j<s} m({j,s}) min(g_j, g_s)`.
pub fn choquet_two_additive(values: &[f64], m: &MobiusRepresentation) -> Result<f64> {
    m.require_two_additive()?;
    check_values(values, m.n())?;
    let (singles, pairs) = m.split_two_additive();
    let linear: f64 = singles.iter().zip(values).map(|(w, g)| w * g).sum();
    let pairwise: f64 = pairs
        .iter()
        .map(|((j, s), mass)| mass * values[*j].min(values[*s]))
        .sum();
    Ok(linear + pairwise)
}

/// Shapley/interaction formulation: synergetic pairs contribute their minimum,
/// redundant pairs their maximum, and each criterion its non-interacting part
/// `I_j − ½ Σ_s |I_js|`.
pub fn choquet_shapley_form(values: &[f64], model: &ShapleyInteractionModel) -> Result<f64> {
    let report = validate_two_additive(model);
    if !report.is_valid() {
        return Err(Error::precondition(format!(
            "invalid 2-additive model:\n{report}"
        )));
    }
    check_values(values, model.n())?;
    Ok(shapley_form_unchecked(values, model))
}

pub(crate) fn shapley_form_unchecked(values: &[f64], model: &ShapleyInteractionModel) -> f64 {
    let mut total = 0.0;
    let mut tied = vec![0.0; values.len()];
    for ((j, s), i) in model.interactions() {
        if i > 0.0 {
            total += values[j].min(values[s]) * i;
        } else if i < 0.0 {
            total += values[j].max(values[s]) * -i;
        }
        tied[j] += i.abs();
        tied[s] += i.abs();
    }
    for (j, g) in values.iter().enumerate() {
        total += g * (model.shapley()[j] - 0.5 * tied[j]);
    }
    total
}

/// A formula for the Choquet integral of nonnegative values with respect to a
/// capacity.
pub trait ChoquetForm: Send + Sync + std::fmt::Debug {
    fn name(&self) -> &'static str;

    fn integrate(&self, values: &[f64], capacity: &CapacityModel) -> Result<f64>;
}

/// Sorted-differences formula over the full capacity lattice (up to 20 criteria).
#[derive(Debug, Clone, Copy, Default)]
pub struct LatticeForm;

impl ChoquetForm for LatticeForm {
    fn name(&self) -> &'static str {
        "lattice"
    }

    fn integrate(&self, values: &[f64], capacity: &CapacityModel) -> Result<f64> {
        choquet_lattice(values, capacity.lattice()?)
    }
}

/// Sum over all Möbius masses; works for any k-additive capacity.
#[derive(Debug, Clone, Copy, Default)]
pub struct MobiusForm;

impl ChoquetForm for MobiusForm {
    fn name(&self) -> &'static str {
        "mobius"
    }

    fn integrate(&self, values: &[f64], capacity: &CapacityModel) -> Result<f64> {
        choquet_mobius(values, capacity.mobius())
    }
}

/// Singleton and pair masses only.
#[derive(Debug, Clone, Copy, Default)]
pub struct TwoAdditiveForm;

impl ChoquetForm for TwoAdditiveForm {
    fn name(&self) -> &'static str {
        "two_additive"
    }

    fn integrate(&self, values: &[f64], capacity: &CapacityModel) -> Result<f64> {
        choquet_two_additive(values, capacity.two_additive_mobius()?)
    }
}

/// Shapley importance and interaction formulation.
///
/// Validity of the model is the caller's concern here: a [`CapacityModel`] is
/// validated once when a problem is built, not on every evaluation.
#[derive(Debug, Clone, Copy, Default)]
pub struct ShapleyForm;

impl ChoquetForm for ShapleyForm {
    fn name(&self) -> &'static str {
        "shapley"
    }

    fn integrate(&self, values: &[f64], capacity: &CapacityModel) -> Result<f64> {
        let model = capacity.shapley_interaction()?;
        check_values(values, model.n())?;
        Ok(shapley_form_unchecked(values, model))
    }
}
