//! Outranking degrees, flows, and flow-based category assignment.

pub mod assign;
pub mod flows;
pub mod sort;

pub use assign::{
    assign_ascending, assign_descending, AssignmentRule, Category, NegativeFlowRule, NetFlowRule,
    PositiveFlowRule,
};
pub use flows::{compute_flows, flows_unchecked, FlowKind, FlowTable, OutrankingMatrix};
pub use sort::{
    sort_all, validate_problem, AlternativeResult, AssignmentResult, SortOptions, SortingProblem,
};
