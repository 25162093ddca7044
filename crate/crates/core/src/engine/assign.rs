use std::fmt;

use serde::{Deserialize, Serialize};

use crate::engine::flows::{FlowKind, FlowTable};
use crate::error::{Error, Result};

/// A category index, 1-based: `K_1` is the best category.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Category(usize);

impl Category {
    pub fn new(index: usize) -> Self {
        assert!(index >= 1, "categories are numbered from 1");
        Category(index)
    }

    pub fn index(self) -> usize {
        self.0
    }

    /// Whether `self` is the same as or a better category than `other`.
    pub fn at_least_as_good_as(self, other: Category) -> bool {
        self.0 <= other.0
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K_{}", self.0)
    }
}

/// Maps an alternative's flows to a category.
///
/// `tolerance` is the absolute distance under which an alternative's flow is
/// treated as equal to a profile flow.
pub trait AssignmentRule: Send + Sync + fmt::Debug {
    fn name(&self) -> &'static str;

    fn flow(&self) -> FlowKind;

    fn assign(&self, flows: &FlowTable, tolerance: f64) -> Result<Category>;
}

/// `K_h` such that `φ(r_h) ≥ φ(a) > φ(r_{h+1})` for a flow where higher is
/// better, with `profile_flows` strictly decreasing.
///
/// An alternative tied with the worst profile is placed in the worst category.
pub fn assign_descending(profile_flows: &[f64], value: f64, tolerance: f64) -> Result<Category> {
    let k = profile_flows.len() - 1;
    let h = profile_flows
        .iter()
        .filter(|f| **f >= value - tolerance)
        .count();
    if h == 0 {
        return Err(Error::Inconsistency(format!(
            "flow {value} is above the best profile flow {}",
            profile_flows[0]
        )));
    }
    if h == k + 1 {
        if value < profile_flows[k] - tolerance {
            return Err(Error::Inconsistency(format!(
                "flow {value} is below the worst profile flow {}",
                profile_flows[k]
            )));
        }
        return Ok(Category(k));
    }
    Ok(Category(h))
}

/// `K_h` such that `φ(r_h) < φ(a) ≤ φ(r_{h+1})` for a flow where lower is
/// better, with `profile_flows` strictly increasing.
///
/// An alternative tied with the best profile is placed in the best category.
pub fn assign_ascending(profile_flows: &[f64], value: f64, tolerance: f64) -> Result<Category> {
    let k = profile_flows.len() - 1;
    let h = profile_flows
        .iter()
        .filter(|f| **f < value - tolerance)
        .count();
    if h == k + 1 {
        return Err(Error::Inconsistency(format!(
            "flow {value} is above the worst profile flow {}",
            profile_flows[k]
        )));
    }
    if h == 0 {
        if value < profile_flows[0] - tolerance {
            return Err(Error::Inconsistency(format!(
                "flow {value} is below the best profile flow {}",
                profile_flows[0]
            )));
        }
        return Ok(Category(1));
    }
    Ok(Category(h))
}

/// Assignment on the positive flow.
#[derive(Debug, Clone, Copy, Default)]
pub struct PositiveFlowRule;

impl AssignmentRule for PositiveFlowRule {
    fn name(&self) -> &'static str {
        "positive"
    }

    fn flow(&self) -> FlowKind {
        FlowKind::Positive
    }

    fn assign(&self, flows: &FlowTable, tolerance: f64) -> Result<Category> {
        assign_descending(
            flows.profiles(FlowKind::Positive),
            flows.alternative(FlowKind::Positive),
            tolerance,
        )
    }
}

/// Assignment on the negative flow.
#[derive(Debug, Clone, Copy, Default)]
pub struct NegativeFlowRule;

impl AssignmentRule for NegativeFlowRule {
    fn name(&self) -> &'static str {
        "negative"
    }

    fn flow(&self) -> FlowKind {
        FlowKind::Negative
    }

    fn assign(&self, flows: &FlowTable, tolerance: f64) -> Result<Category> {
        assign_ascending(
            flows.profiles(FlowKind::Negative),
            flows.alternative(FlowKind::Negative),
            tolerance,
        )
    }
}

/// Assignment on the net flow.
#[derive(Debug, Clone, Copy, Default)]
pub struct NetFlowRule;

impl AssignmentRule for NetFlowRule {
    fn name(&self) -> &'static str {
        "net"
    }

    fn flow(&self) -> FlowKind {
        FlowKind::Net
    }

    fn assign(&self, flows: &FlowTable, tolerance: f64) -> Result<Category> {
        assign_descending(
            flows.profiles(FlowKind::Net),
            flows.alternative(FlowKind::Net),
            tolerance,
        )
    }
}
