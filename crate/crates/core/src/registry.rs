//! Name-keyed registries for the interchangeable parts of the method.
//!
//! Three strategy families are pluggable:
//!
//! * preference function shapes ([`PreferenceFunction`]), built from thresholds
//!   by a factory, since each criterion carries its own parameters;
//! * Choquet integral formulas ([`ChoquetForm`]);
//! * flow-based assignment rules ([`AssignmentRule`]).
//!
//! [`Registry::default`] holds every built-in strategy. Extra strategies can be
//! registered under new names before a problem is loaded.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::capacity::choquet::{LatticeForm, MobiusForm, ShapleyForm, TwoAdditiveForm};
use crate::capacity::ChoquetForm;
use crate::engine::assign::{NegativeFlowRule, NetFlowRule, PositiveFlowRule};
use crate::engine::AssignmentRule;
use crate::error::{Error, Result};
use crate::preference::functions::{self, Thresholds};
use crate::preference::PreferenceFunction;

/// A set of values registered by name.
#[derive(Clone)]
pub struct NamedRegistry<V: Clone> {
    kind: &'static str,
    entries: BTreeMap<String, V>,
}

impl<V: Clone> NamedRegistry<V> {
    pub fn new(kind: &'static str) -> Self {
        Self {
            kind,
            entries: BTreeMap::new(),
        }
    }

    /// Registers `value` under `name`, replacing any previous entry.
    pub fn register(&mut self, name: impl Into<String>, value: V) {
        self.entries.insert(name.into(), value);
    }

    pub fn get(&self, name: &str) -> Result<V> {
        self.entries
            .get(name)
            .cloned()
            .ok_or_else(|| Error::UnknownStrategy {
                kind: self.kind,
                name: name.to_string(),
                available: self.names().join(", "),
            })
    }

    pub fn contains(&self, name: &str) -> bool {
        self.entries.contains_key(name)
    }

    pub fn names(&self) -> Vec<String> {
        self.entries.keys().cloned().collect()
    }
}

impl<V: Clone> std::fmt::Debug for NamedRegistry<V> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("NamedRegistry")
            .field("kind", &self.kind)
            .field("names", &self.names())
            .finish()
    }
}

pub type PreferenceFactory =
    Arc<dyn Fn(&Thresholds) -> Result<Arc<dyn PreferenceFunction>> + Send + Sync>;

/// All strategy registries used when building and solving a problem.
#[derive(Clone, Debug)]
pub struct Registry {
    pub preference_functions: NamedRegistry<PreferenceFactory>,
    pub choquet_forms: NamedRegistry<Arc<dyn ChoquetForm>>,
    pub assignment_rules: NamedRegistry<Arc<dyn AssignmentRule>>,
}

impl Registry {
    /// A registry with nothing registered.
    pub fn empty() -> Self {
        Self {
            preference_functions: NamedRegistry::new("preference function"),
            choquet_forms: NamedRegistry::new("Choquet form"),
            assignment_rules: NamedRegistry::new("assignment rule"),
        }
    }

    pub fn register_preference_function<F>(&mut self, name: &str, factory: F)
    where
        F: Fn(&Thresholds) -> Result<Arc<dyn PreferenceFunction>> + Send + Sync + 'static,
    {
        self.preference_functions.register(name, Arc::new(factory));
    }

    pub fn register_choquet_form(&mut self, form: Arc<dyn ChoquetForm>) {
        self.choquet_forms.register(form.name(), form);
    }

    pub fn register_assignment_rule(&mut self, rule: Arc<dyn AssignmentRule>) {
        self.assignment_rules.register(rule.name(), rule);
    }

    /// Builds the preference function registered as `name` from `thresholds`.
    pub fn preference_function(
        &self,
        name: &str,
        thresholds: &Thresholds,
    ) -> Result<Arc<dyn PreferenceFunction>> {
        let factory = self.preference_functions.get(name)?;
        factory(thresholds)
    }

    pub fn choquet_form(&self, name: &str) -> Result<Arc<dyn ChoquetForm>> {
        self.choquet_forms.get(name)
    }

    pub fn assignment_rule(&self, name: &str) -> Result<Arc<dyn AssignmentRule>> {
        self.assignment_rules.get(name)
    }

    /// The three built-in rules, in positive / negative / net order.
    pub fn standard_rules(&self) -> Vec<Arc<dyn AssignmentRule>> {
        ["positive", "negative", "net"]
            .iter()
            .map(|n| self.assignment_rule(n).expect("built-in rule"))
            .collect()
    }
}

impl Default for Registry {
    fn default() -> Self {
        let mut reg = Self::empty();
        reg.register_preference_function("usual", functions::usual);
        reg.register_preference_function("u_shape", functions::u_shape);
        reg.register_preference_function("v_shape", functions::v_shape);
        reg.register_preference_function("level", functions::level);
        reg.register_preference_function("linear", functions::linear);
        reg.register_preference_function("gaussian", functions::gaussian);

        reg.register_choquet_form(Arc::new(LatticeForm));
        reg.register_choquet_form(Arc::new(MobiusForm));
        reg.register_choquet_form(Arc::new(TwoAdditiveForm));
        reg.register_choquet_form(Arc::new(ShapleyForm));

        reg.register_assignment_rule(Arc::new(PositiveFlowRule));
        reg.register_assignment_rule(Arc::new(NegativeFlowRule));
        reg.register_assignment_rule(Arc::new(NetFlowRule));
        reg
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_registry_lists_builtins() {
        let reg = Registry::default();
        assert_eq!(
            reg.preference_functions.names(),
            vec!["gaussian", "level", "linear", "u_shape", "usual", "v_shape"]
        );
        assert_eq!(
            reg.choquet_forms.names(),
            vec!["lattice", "mobius", "shapley", "two_additive"]
        );
        assert_eq!(
            reg.assignment_rules.names(),
            vec!["negative", "net", "positive"]
        );
    }

    #[test]
    fn unknown_name_lists_alternatives() {
        let reg = Registry::default();
        let err = reg.choquet_form("sugeno").unwrap_err();
        match err {
            Error::UnknownStrategy {
                kind,
                name,
                available,
            } => {
                assert_eq!(kind, "Choquet form");
                assert_eq!(name, "sugeno");
                assert!(available.contains("shapley"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn custom_preference_function_can_be_registered() {
        #[derive(Debug)]
        struct Step;
        impl PreferenceFunction for Step {
            fn name(&self) -> &'static str {
                "step"
            }
            fn degree(&self, d: f64) -> f64 {
                if d > 10.0 {
                    1.0
                } else {
                    0.0
                }
            }
        }
        let mut reg = Registry::default();
        reg.register_preference_function("step", |_| Ok(Arc::new(Step)));
        let f = reg
            .preference_function("step", &Thresholds::default())
            .unwrap();
        assert_eq!(f.degree(11.0), 1.0);
        assert_eq!(f.degree(10.0), 0.0);
    }
}
