//! Capacities (fuzzy measures), their representations, and the Choquet integral.

pub mod choquet;
pub mod lattice;
pub mod mobius;
pub mod model;
pub mod shapley;
pub mod subset;

pub use choquet::{
    choquet_lattice, choquet_mobius, choquet_shapley_form, choquet_two_additive, ChoquetForm,
};
pub use lattice::{interaction_index, validate_lattice, CapacityLattice, MAX_LATTICE_CRITERIA};
pub use mobius::{lattice_to_mobius, mobius_to_lattice, validate_mobius, MobiusRepresentation};
pub use model::{CapacityModel, CapacitySource};
pub use shapley::{
    mobius_to_shapley_interaction, shapley_interaction_to_mobius, shapley_values,
    validate_two_additive, ShapleyInteractionModel,
};
pub use subset::{Subset, MAX_SUBSET_CRITERIA};
