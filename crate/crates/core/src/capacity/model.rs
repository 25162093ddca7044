use std::sync::OnceLock;

use crate::capacity::lattice::{validate_lattice, CapacityLattice};
use crate::capacity::mobius::{lattice_to_mobius, mobius_to_lattice, validate_mobius};
use crate::capacity::shapley::{mobius_to_shapley_interaction, validate_two_additive};
use crate::capacity::{MobiusRepresentation, ShapleyInteractionModel};
use crate::error::{Error, Result};
use crate::validation::ValidationReport;
use crate::REPRESENTATION_TOLERANCE;

/// The representation a [`CapacityModel`] was built from.
#[derive(Debug, Clone, PartialEq)]
pub enum CapacitySource {
    Lattice(CapacityLattice),
    Mobius(MobiusRepresentation),
    ShapleyInteraction(ShapleyInteractionModel),
}

impl CapacitySource {
    pub fn kind(&self) -> &'static str {
        match self {
            CapacitySource::Lattice(_) => "lattice",
            CapacitySource::Mobius(_) => "mobius",
            CapacitySource::ShapleyInteraction(_) => "shapley_interaction",
        }
    }
}

/// A capacity with one authoritative representation and derived forms.
///
/// Möbius masses are always available. The Shapley/interaction form and the
/// pair-truncated masses exist only when the capacity is 2-additive (masses of
/// larger subsets within the representation tolerance of zero). The full
/// lattice is built on first use and only for up to 20 criteria.
#[derive(Debug)]
pub struct CapacityModel {
    source: CapacitySource,
    mobius: MobiusRepresentation,
    two_additive: Option<(MobiusRepresentation, ShapleyInteractionModel)>,
    lattice: OnceLock<CapacityLattice>,
}

impl Clone for CapacityModel {
    fn clone(&self) -> Self {
        let lattice = OnceLock::new();
        if let Some(l) = self.lattice.get() {
            let _ = lattice.set(l.clone());
        }
        Self {
            source: self.source.clone(),
            mobius: self.mobius.clone(),
            two_additive: self.two_additive.clone(),
            lattice,
        }
    }
}

impl CapacityModel {
    fn build(source: CapacitySource, mobius: MobiusRepresentation) -> Self {
        let two_additive = mobius
            .truncated(2, REPRESENTATION_TOLERANCE)
            .ok()
            .and_then(|pairs| {
                let shapley = mobius_to_shapley_interaction(&pairs).ok()?;
                Some((pairs, shapley))
            });
        Self {
            source,
            mobius,
            two_additive,
            lattice: OnceLock::new(),
        }
    }

    pub fn from_lattice(lattice: CapacityLattice) -> Self {
        let mobius = lattice_to_mobius(&lattice);
        let model = Self::build(CapacitySource::Lattice(lattice.clone()), mobius);
        let _ = model.lattice.set(lattice);
        model
    }

    pub fn from_mobius(mobius: MobiusRepresentation) -> Self {
        Self::build(CapacitySource::Mobius(mobius.clone()), mobius)
    }

    pub fn from_shapley_interaction(model: ShapleyInteractionModel) -> Self {
        let mobius = model.to_mobius();
        let mut built = Self::build(CapacitySource::ShapleyInteraction(model.clone()), mobius);
        // keep the given indices verbatim rather than their round-trip
        if let Some((_, shapley)) = built.two_additive.as_mut() {
            *shapley = model;
        }
        built
    }

    /// The additive capacity with the given weights.
    pub fn additive(weights: Vec<f64>) -> Result<Self> {
        Ok(Self::from_shapley_interaction(
            ShapleyInteractionModel::additive(weights)?,
        ))
    }

    pub fn n(&self) -> usize {
        self.mobius.n()
    }

    pub fn source(&self) -> &CapacitySource {
        &self.source
    }

    /// Checks the constraints of the authoritative representation.
    pub fn validate(&self) -> Result<ValidationReport> {
        Ok(match &self.source {
            CapacitySource::Lattice(l) => validate_lattice(l),
            CapacitySource::Mobius(m) => validate_mobius(m)?,
            CapacitySource::ShapleyInteraction(s) => validate_two_additive(s),
        })
    }

    pub fn mobius(&self) -> &MobiusRepresentation {
        &self.mobius
    }

    pub fn is_two_additive(&self) -> bool {
        self.two_additive.is_some()
    }

    /// Masses restricted to singletons and pairs.
    pub fn two_additive_mobius(&self) -> Result<&MobiusRepresentation> {
        self.two_additive
            .as_ref()
            .map(|(m, _)| m)
            .ok_or_else(|| self.not_two_additive())
    }

    pub fn shapley_interaction(&self) -> Result<&ShapleyInteractionModel> {
        self.two_additive
            .as_ref()
            .map(|(_, s)| s)
            .ok_or_else(|| self.not_two_additive())
    }

    pub fn lattice(&self) -> Result<&CapacityLattice> {
        if let Some(l) = self.lattice.get() {
            return Ok(l);
        }
        let built = mobius_to_lattice(&self.mobius)?;
        Ok(self.lattice.get_or_init(|| built))
    }

    fn not_two_additive(&self) -> Error {
        Error::precondition(format!(
            "the capacity is {}-additive, not 2-additive",
            self.mobius.order()
        ))
    }
}
