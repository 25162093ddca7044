//! The six standard preference function shapes.
//!
//! Every shape returns 0 for `d ≤ 0` and is non-decreasing in `d`. Threshold
//! boundaries are half-open: a difference equal to `q` is still indifference,
//! one equal to `p` is already strict preference.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::preference::PreferenceFunction;

/// Thresholds a preference function may use: indifference `q`, preference `p`
/// and the Gaussian inflection point `s`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<f64>,
}

impl Thresholds {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn q(q: f64) -> Self {
        Self {
            q: Some(q),
            ..Self::default()
        }
    }

    pub fn p(p: f64) -> Self {
        Self {
            p: Some(p),
            ..Self::default()
        }
    }

    pub fn qp(q: f64, p: f64) -> Self {
        Self {
            q: Some(q),
            p: Some(p),
            s: None,
        }
    }

    pub fn s(s: f64) -> Self {
        Self {
            s: Some(s),
            ..Self::default()
        }
    }

    /// Checks that exactly the thresholds named in `used` are present, finite
    /// and nonnegative.
    fn expect(&self, shape: &str, used: &[&str]) -> Result<()> {
        for (name, value) in [("q", self.q), ("p", self.p), ("s", self.s)] {
            match (used.contains(&name), value) {
                (true, None) => {
                    return Err(Error::structural(format!(
                        "{shape} preference function requires threshold {name}"
                    )))
                }
                (false, Some(_)) => {
                    return Err(Error::structural(format!(
                        "{shape} preference function does not use threshold {name}"
                    )))
                }
                (true, Some(v)) if !v.is_finite() || v < 0.0 => {
                    return Err(Error::domain(format!(
                        "threshold {name} = {v} of the {shape} preference function must be finite and nonnegative"
                    )))
                }
                _ => {}
            }
        }
        Ok(())
    }

    fn ordered(&self, shape: &str, strict: bool) -> Result<(f64, f64)> {
        let (q, p) = (self.q.unwrap_or(0.0), self.p.unwrap_or(0.0));
        if p < q || (strict && p == q) {
            return Err(Error::domain(format!(
                "{shape} preference function needs p {} q, got q = {q}, p = {p}",
                if strict { ">" } else { "≥" }
            )));
        }
        Ok((q, p))
    }
}

/// Strict preference for any positive difference.
#[derive(Debug, Clone, Copy)]
pub struct Usual;

impl PreferenceFunction for Usual {
    fn name(&self) -> &'static str {
        "usual"
    }

    fn degree(&self, d: f64) -> f64 {
        if d > 0.0 {
            1.0
        } else {
            0.0
        }
    }
}

/// Indifference up to `q`, strict preference beyond.
#[derive(Debug, Clone, Copy)]
pub struct UShape {
    pub q: f64,
}

impl PreferenceFunction for UShape {
    fn name(&self) -> &'static str {
        "u_shape"
    }

    fn degree(&self, d: f64) -> f64 {
        if d > self.q {
            1.0
        } else {
            0.0
        }
    }
}

/// Linear growth from 0 to strict preference at `p`.
#[derive(Debug, Clone, Copy)]
pub struct VShape {
    pub p: f64,
}

impl PreferenceFunction for VShape {
    fn name(&self) -> &'static str {
        "v_shape"
    }

    fn degree(&self, d: f64) -> f64 {
        if d <= 0.0 {
            0.0
        } else if d >= self.p {
            1.0
        } else {
            d / self.p
        }
    }
}

/// Half preference between `q` and `p`, strict preference beyond `p`.
#[derive(Debug, Clone, Copy)]
pub struct Level {
    pub q: f64,
    pub p: f64,
}

impl PreferenceFunction for Level {
    fn name(&self) -> &'static str {
        "level"
    }

    fn degree(&self, d: f64) -> f64 {
        if d <= self.q || d <= 0.0 {
            0.0
        } else if d <= self.p {
            0.5
        } else {
            1.0
        }
    }
}

/// Indifference up to `q`, then a linear ramp reaching 1 at `p`.
#[derive(Debug, Clone, Copy)]
pub struct Linear {
    pub q: f64,
    pub p: f64,
}

impl PreferenceFunction for Linear {
    fn name(&self) -> &'static str {
        "linear"
    }

    fn degree(&self, d: f64) -> f64 {
        if d <= self.q || d <= 0.0 {
            0.0
        } else if d >= self.p {
            1.0
        } else {
            (d - self.q) / (self.p - self.q)
        }
    }
}

/// `1 − exp(−d² / 2s²)` for positive differences.
#[derive(Debug, Clone, Copy)]
pub struct Gaussian {
    pub s: f64,
}

impl PreferenceFunction for Gaussian {
    fn name(&self) -> &'static str {
        "gaussian"
    }

    fn degree(&self, d: f64) -> f64 {
        if d <= 0.0 {
            0.0
        } else {
            1.0 - (-(d * d) / (2.0 * self.s * self.s)).exp()
        }
    }
}

pub fn usual(t: &Thresholds) -> Result<Arc<dyn PreferenceFunction>> {
    t.expect("usual", &[])?;
    Ok(Arc::new(Usual))
}

pub fn u_shape(t: &Thresholds) -> Result<Arc<dyn PreferenceFunction>> {
    t.expect("u_shape", &["q"])?;
    Ok(Arc::new(UShape { q: t.q.unwrap() }))
}

pub fn v_shape(t: &Thresholds) -> Result<Arc<dyn PreferenceFunction>> {
    t.expect("v_shape", &["p"])?;
    let p = t.p.unwrap();
    if p <= 0.0 {
        return Err(Error::domain("v_shape preference function needs p > 0"));
    }
    Ok(Arc::new(VShape { p }))
}

pub fn level(t: &Thresholds) -> Result<Arc<dyn PreferenceFunction>> {
    t.expect("level", &["q", "p"])?;
    let (q, p) = t.ordered("level", false)?;
    Ok(Arc::new(Level { q, p }))
}

pub fn linear(t: &Thresholds) -> Result<Arc<dyn PreferenceFunction>> {
    t.expect("linear", &["q", "p"])?;
    let (q, p) = t.ordered("linear", true)?;
    Ok(Arc::new(Linear { q, p }))
}

pub fn gaussian(t: &Thresholds) -> Result<Arc<dyn PreferenceFunction>> {
    t.expect("gaussian", &["s"])?;
    let s = t.s.unwrap();
    if s <= 0.0 {
        return Err(Error::domain("gaussian preference function needs s > 0"));
    }
    Ok(Arc::new(Gaussian { s }))
}
