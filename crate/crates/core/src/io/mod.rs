//! Problem files, scenario batches and report rendering.

pub mod baseline;
pub mod problem;
pub mod report;
pub mod scenario;

pub use baseline::{emit_baseline, run_baseline, BaselineReport};
pub use problem::{
    load_parsed, load_problem, CapacitySpec, LoadedProblem, NamedValues, OptionsSpec, PairValue,
    ProblemFile, RunSettings, SetValue, PROBLEM_SCHEMA,
};
pub use report::{emit_report, emit_scenarios, ReportFormat, SortReport, REPORT_SCHEMA};
pub use scenario::{
    run_scenarios, BaseProblem, Scenario, ScenarioComparison, ScenarioSet, SCENARIO_SCHEMA,
};
