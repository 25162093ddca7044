//! Independent oracles, seeded instance generators and executable property
//! checks.

pub mod generate;
pub mod oracle;
pub mod properties;

pub use generate::{
    gen_problem, gen_two_additive, generate_instance, GeneratedInstance, InstanceGenConfig,
    InteractionSigns,
};
pub use oracle::{classic_flowsort, oracle_choquet, oracle_lattice, ClassicOutcome};
pub use properties::{
    check_conditions, check_instance, check_propositions, check_reduction, condorcet_example,
    instance_config, instance_seed, pairwise_consistency, run_suite, Counterexample,
    PairwiseViolation, Property, PropertyReport, ReductionOutcome, SuiteConfig, Tally,
    CONDITION_TOLERANCE, SIDE_CONDITION_MARGIN,
};
