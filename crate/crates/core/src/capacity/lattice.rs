use crate::capacity::Subset;
use crate::error::{Error, Result};
use crate::validation::{Constraint, ValidationReport, Violation};
use crate::REPRESENTATION_TOLERANCE;

/// Largest number of criteria for which the full `2^n` lattice is materialized.
pub const MAX_LATTICE_CRITERIA: usize = 20;

pub(crate) fn check_lattice_size(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::structural("a capacity needs at least one criterion"));
    }
    if n > MAX_LATTICE_CRITERIA {
        return Err(Error::structural(format!(
            "full capacity lattices are limited to {MAX_LATTICE_CRITERIA} criteria, got {n}"
        )));
    }
    Ok(())
}

/// A set function over all subsets of `n` criteria, indexed by subset bitmask.
#[derive(Debug, Clone, PartialEq)]
pub struct CapacityLattice {
    n: usize,
    values: Vec<f64>,
}

impl CapacityLattice {
    /// `values[S.bits()]` is the value of subset `S`; there must be exactly `2^n`.
    pub fn new(n: usize, values: Vec<f64>) -> Result<Self> {
        check_lattice_size(n)?;
        if values.len() != 1usize << n {
            return Err(Error::structural(format!(
                "a lattice over {n} criteria needs {} values, got {}",
                1usize << n,
                values.len()
            )));
        }
        Ok(Self { n, values })
    }

    /// Builds a lattice from explicit `(subset, value)` entries. Every subset,
    /// including the empty set, must appear exactly once.
    pub fn from_entries<I>(n: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Subset, f64)>,
    {
        check_lattice_size(n)?;
        let mut values: Vec<Option<f64>> = vec![None; 1usize << n];
        for (set, value) in entries {
            if set.span() > n {
                return Err(Error::structural(format!(
                    "subset {set} refers to a criterion beyond {n}"
                )));
            }
            let slot = &mut values[set.bits() as usize];
            if slot.is_some() {
                return Err(Error::structural(format!("subset {set} given twice")));
            }
            *slot = Some(value);
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(bits, v)| {
                v.ok_or_else(|| {
                    Error::structural(format!(
                        "missing capacity value for subset {}",
                        Subset::from_bits(bits as u64)
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { n, values })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(Subset) -> f64) -> Result<Self> {
        check_lattice_size(n)?;
        let values = (0..1u64 << n).map(|b| f(Subset::from_bits(b))).collect();
        Ok(Self { n, values })
    }

    /// The additive capacity `μ(S) = Σ_{j∈S} w_j`.
    pub fn additive(weights: &[f64]) -> Result<Self> {
        Self::from_fn(weights.len(), |s| s.indices().map(|j| weights[j]).sum())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn value(&self, set: Subset) -> f64 {
        self.values[set.bits() as usize]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.n)
    }
}

/// Checks boundary conditions and monotonicity.
///
/// Monotonicity is checked on covering pairs `(S, S ∪ {i})`: any violated pair
/// `S ⊂ T` implies a violated covering pair on some chain from `S` to `T`, so
/// an empty report still means the capacity is valid.
pub fn validate_lattice(cap: &CapacityLattice) -> ValidationReport {
    let tol = REPRESENTATION_TOLERANCE;
    let mut report = ValidationReport::new();
    for (bits, v) in cap.values.iter().enumerate() {
        if !v.is_finite() {
            report.push(Violation::new(
                Constraint::Boundary,
                format!("μ({}) is not finite", Subset::from_bits(bits as u64)),
            ));
        }
    }
    let empty = cap.value(Subset::EMPTY);
    if empty.abs() > tol {
        report.push(Violation::new(
            Constraint::Boundary,
            format!("μ(∅) = {empty}, expected 0"),
        ));
    }
    let full = cap.value(cap.full());
    if (full - 1.0).abs() > tol {
        report.push(Violation::new(
            Constraint::Boundary,
            format!("μ(G) = {full}, expected 1"),
        ));
    }
    for bits in 0..cap.values.len() as u64 {
        let s = Subset::from_bits(bits);
        for i in 0..cap.n {
            if s.contains(i) {
                continue;
            }
            let t = s.with(i);
            let (ms, mt) = (cap.value(s), cap.value(t));
            if ms > mt + tol {
                report.push(Violation::new(
                    Constraint::Monotonicity,
                    format!("μ({s}) = {ms} > μ({t}) = {mt} although {s} ⊆ {t}"),
                ));
            }
        }
    }
    report
}

fn factorials(n: usize) -> Vec<f64> {
    let mut f = vec![1.0; n + 2];
    for i in 1..f.len() {
        f[i] = f[i - 1] * i as f64;
    }
    f
}

/// Generalized interaction index of the coalition `t`.
///
/// For a singleton this is the Shapley importance of that criterion; for a
/// pair under a 2-additive capacity it equals the pair's Möbius mass. The
/// combinatorial weight uses `n = |G|`.
pub fn interaction_index(cap: &CapacityLattice, t: Subset) -> Result<f64> {
    if t.is_empty() {
        return Err(Error::domain("interaction index of the empty coalition"));
    }
    if t.span() > cap.n {
        return Err(Error::structural(format!(
            "coalition {t} refers to a criterion beyond {}",
            cap.n
        )));
    }
    let n = cap.n;
    let tl = t.len();
    let fact = factorials(n);
    let rest = cap.full().bits() & !t.bits();
    let mut total = 0.0;
    for k in Subset::from_bits(rest).subsets() {
        let kl = k.len();
        let weight = fact[n - kl - tl] * fact[kl] / fact[n - tl + 1];
        let mut diff = 0.0;
        for b in t.subsets() {
            let sign = if (tl - b.len()).is_multiple_of(2) {
                1.0
            } else {
                -1.0
            };
            diff += sign * cap.value(k.union(b));
        }
        total += weight * diff;
    }
    Ok(total)
}
