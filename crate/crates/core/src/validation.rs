use std::fmt;

use serde::{Deserialize, Serialize};

/// How strictly the ordering of limiting profiles is checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ValidationMode {
    /// Profiles are ordered per criterion (each at least as good as the next).
    Weak,
    /// Additionally every better profile has a positive outranking degree over
    /// every worse one.
    #[default]
    Strict,
    /// Additionally every better profile outranks every worse one with degree 1.
    Strong,
}

impl ValidationMode {
    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "weak" => Some(Self::Weak),
            "strict" => Some(Self::Strict),
            "strong" => Some(Self::Strong),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Weak => "weak",
            Self::Strict => "strict",
            Self::Strong => "strong",
        }
    }
}

/// The family of constraint a [`Violation`] refers to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Constraint {
    /// Capacity boundary conditions (empty set 0, full set 1, masses sum to 1).
    Boundary,
    /// Capacity monotonicity (`S ⊆ T ⇒ μ(S) ≤ μ(T)`).
    Monotonicity,
    /// Shapley indices must be nonnegative and sum to 1.
    ShapleyNormalization,
    /// 2-additive monotonicity slack `I_j − ½ Σ |I_js|` must be nonnegative.
    TwoAdditiveMonotonicity,
    /// Profiles must be ordered per criterion.
    ProfileOrder,
    /// Better profiles must strictly outrank worse ones.
    StrictProfilePreference,
    /// Better profiles must outrank worse ones with degree 1.
    StrongProfilePreference,
    /// Alternatives must lie between the worst and best limiting profile.
    EvaluationBounds,
    /// Schema-level problems found while loading a problem file.
    Schema,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub constraint: Constraint,
    pub message: String,
    /// Where in the input the violation originates, when known.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub location: Option<String>,
}

impl Violation {
    pub fn new(constraint: Constraint, message: impl Into<String>) -> Self {
        Self {
            constraint,
            message: message.into(),
            location: None,
        }
    }

    pub fn at(mut self, location: impl Into<String>) -> Self {
        self.location = Some(location.into());
        self
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.location {
            Some(loc) => write!(f, "{loc}: [{:?}] {}", self.constraint, self.message),
            None => write!(f, "[{:?}] {}", self.constraint, self.message),
        }
    }
}

/// Outcome of a validity check. Empty means valid.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, violation: Violation) {
        self.violations.push(violation);
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
    }

    pub fn has(&self, constraint: &Constraint) -> bool {
        self.violations.iter().any(|v| &v.constraint == constraint)
    }

    /// Tags every violation without a location with `location`.
    pub fn located(mut self, location: &str) -> Self {
        for v in &mut self.violations {
            if v.location.is_none() {
                v.location = Some(location.to_string());
            }
        }
        self
    }

    /// Prefixes every location (or sets it, when absent) with `source`, e.g. a
    /// file name.
    pub fn in_source(mut self, source: &str) -> Self {
        for v in &mut self.violations {
            v.location = Some(match v.location.take() {
                Some(loc) => format!("{source}: {loc}"),
                None => source.to_string(),
            });
        }
        self
    }

    /// `Ok(())` when valid, otherwise the report wrapped in [`crate::Error::Invalid`].
    pub fn into_result(self) -> crate::Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(crate::Error::Invalid(self))
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "  - {v}")?;
        }
        Ok(())
    }
}
