//! FlowSort-Choquet: sorting alternatives evaluated on heterogeneous scales into
//! ordered categories.
//!
//! Each alternative is compared with a set of limiting profiles through
//! per-criterion preference functions, which map raw differences onto a common
//! `[0, 1]` scale. The per-criterion degrees are aggregated with a 2-additive
//! Choquet integral (so interacting criteria can be modelled), turned into
//! positive, negative and net flows, and the alternative is assigned to the
//! category whose bounding profiles bracket its flow.
//!
//! Interchangeable pieces (preference function shapes, Choquet integral
//! formulas, assignment rules) are trait objects registered by name in a
//! [`Registry`], so callers and the CLI pick them at runtime.

pub mod baselines;
pub mod capacity;
pub mod engine;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod outranking;
pub mod preference;
pub mod registry;
pub mod validation;
pub mod verification;

pub use capacity::{
    CapacityLattice, CapacityModel, ChoquetForm, MobiusRepresentation, ShapleyInteractionModel,
    Subset,
};
pub use engine::{
    AlternativeResult, AssignmentResult, AssignmentRule, Category, FlowTable, OutrankingMatrix,
    SortOptions, SortingProblem,
};
pub use error::{Error, Result};
pub use outranking::{ChoquetOutranking, OutrankingModel, WeightedOutranking};
pub use preference::{
    Criterion, CriterionSpec, DecisionMatrix, Direction, PreferenceFunction, ReferenceProfileSet,
};
pub use registry::Registry;
pub use validation::{Constraint, ValidationMode, ValidationReport, Violation};

/// Absolute tolerance for representation round-trips and constraint checks.
pub const REPRESENTATION_TOLERANCE: f64 = 1e-12;

/// Absolute tolerance when comparing different Choquet integral formulas.
pub const CROSS_FORM_TOLERANCE: f64 = 1e-9;

/// Default absolute tolerance under which an alternative's flow is considered
/// tied with a profile flow during assignment.
pub const DEFAULT_TIE_TOLERANCE: f64 = 1e-14;
