use std::collections::BTreeMap;

use crate::capacity::lattice::check_lattice_size;
use crate::capacity::subset::MAX_SUBSET_CRITERIA;
use crate::capacity::{CapacityLattice, Subset};
use crate::error::{Error, Result};
use crate::validation::{Constraint, ValidationReport, Violation};
use crate::REPRESENTATION_TOLERANCE;

/// A pair of criteria and its Möbius mass.
pub(crate) type PairMass = ((usize, usize), f64);

/// Möbius masses `m(T)`; subsets without an entry have mass zero.
#[derive(Debug, Clone, PartialEq)]
pub struct MobiusRepresentation {
    n: usize,
    masses: BTreeMap<Subset, f64>,
}

impl MobiusRepresentation {
    pub fn new<I>(n: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Subset, f64)>,
    {
        if n == 0 || n > MAX_SUBSET_CRITERIA {
            return Err(Error::structural(format!(
                "Möbius representations need 1..={MAX_SUBSET_CRITERIA} criteria, got {n}"
            )));
        }
        let mut masses = BTreeMap::new();
        for (set, mass) in entries {
            if set.span() > n {
                return Err(Error::structural(format!(
                    "subset {set} refers to a criterion beyond {n}"
                )));
            }
            if !mass.is_finite() {
                return Err(Error::domain(format!("mass of {set} is not finite")));
            }
            if masses.insert(set, mass).is_some() {
                return Err(Error::structural(format!("mass for {set} given twice")));
            }
        }
        Ok(Self { n, masses })
    }

    /// A 2-additive representation from singleton and pair masses.
    pub fn two_additive<I>(singletons: &[f64], pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((usize, usize), f64)>,
    {
        let n = singletons.len();
        let mut entries: Vec<(Subset, f64)> = singletons
            .iter()
            .enumerate()
            .map(|(j, &m)| (Subset::singleton(j), m))
            .collect();
        for ((j, s), m) in pairs {
            if j == s || j >= n || s >= n {
                return Err(Error::structural(format!(
                    "invalid criterion pair ({}, {}) for {n} criteria",
                    j + 1,
                    s + 1
                )));
            }
            entries.push((Subset::pair(j, s), m));
        }
        Self::new(n, entries)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mass(&self, set: Subset) -> f64 {
        self.masses.get(&set).copied().unwrap_or(0.0)
    }

    pub fn masses(&self) -> impl Iterator<Item = (Subset, f64)> + '_ {
        self.masses.iter().map(|(s, m)| (*s, *m))
    }

    /// Size of the largest subset carrying a nonzero mass (its k-additivity).
    pub fn order(&self) -> usize {
        self.masses
            .iter()
            .filter(|(_, m)| **m != 0.0)
            .map(|(s, _)| s.len())
            .max()
            .unwrap_or(0)
    }

    pub fn total_mass(&self) -> f64 {
        self.masses.values().sum()
    }

    /// Drops masses on subsets larger than `max_order`, provided none of them
    /// exceeds `tolerance` in magnitude.
    pub fn truncated(&self, max_order: usize, tolerance: f64) -> Result<Self> {
        let mut masses = BTreeMap::new();
        for (&set, &m) in &self.masses {
            if set.len() <= max_order {
                masses.insert(set, m);
            } else if m.abs() > tolerance {
                return Err(Error::precondition(format!(
                    "mass m({set}) = {m} exceeds order {max_order}"
                )));
            }
        }
        Ok(Self { n: self.n, masses })
    }

    pub(crate) fn require_two_additive(&self) -> Result<()> {
        match self.masses.iter().find(|(s, m)| s.len() > 2 && **m != 0.0) {
            Some((s, m)) => Err(Error::precondition(format!(
                "2-additive form requires masses only on singletons and pairs, but m({s}) = {m}"
            ))),
            None => Ok(()),
        }
    }

    /// Singleton masses and nonzero pair masses (`j < s`).
    pub(crate) fn split_two_additive(&self) -> (Vec<f64>, Vec<PairMass>) {
        let mut singles = vec![0.0; self.n];
        let mut pairs = Vec::new();
        for (&set, &m) in &self.masses {
            match set.len() {
                1 => singles[set.indices().next().unwrap()] = m,
                2 if m != 0.0 => {
                    let mut it = set.indices();
                    pairs.push(((it.next().unwrap(), it.next().unwrap()), m));
                }
                _ => {}
            }
        }
        (singles, pairs)
    }
}

/// `μ(S) = Σ_{T⊆S} m(T)` for every subset, via the fast zeta transform.
///
/// Total: the result is not checked for validity.
pub fn mobius_to_lattice(m: &MobiusRepresentation) -> Result<CapacityLattice> {
    check_lattice_size(m.n)?;
    let mut values = vec![0.0; 1usize << m.n];
    for (set, mass) in m.masses() {
        values[set.bits() as usize] = mass;
    }
    for i in 0..m.n {
        let bit = 1usize << i;
        for s in 0..values.len() {
            if s & bit != 0 {
                values[s] += values[s ^ bit];
            }
        }
    }
    CapacityLattice::new(m.n, values)
}

/// Möbius inversion `m(T) = Σ_{S⊆T} (−1)^{|T∖S|} μ(S)`, via the fast transform.
///
/// Every subset gets an entry, including those with zero mass.
pub fn lattice_to_mobius(cap: &CapacityLattice) -> MobiusRepresentation {
    let mut values = cap.values().to_vec();
    for i in 0..cap.n() {
        let bit = 1usize << i;
        for s in 0..values.len() {
            if s & bit != 0 {
                values[s] -= values[s ^ bit];
            }
        }
    }
    let masses = values
        .into_iter()
        .enumerate()
        .filter(|(bits, _)| *bits != 0)
        .map(|(bits, m)| (Subset::from_bits(bits as u64), m))
        .collect();
    MobiusRepresentation { n: cap.n(), masses }
}

/// Boundary (`m(∅) = 0`, masses sum to 1) and monotonicity conditions on the
/// masses.
///
/// For representations of order at most 2 the monotonicity test is the closed
/// form `m({j}) + Σ_{s: m({j,s})<0} m({j,s}) ≥ 0` and works for any `n`;
/// higher orders are checked through marginal contributions on the lattice.
pub fn validate_mobius(m: &MobiusRepresentation) -> Result<ValidationReport> {
    let tol = REPRESENTATION_TOLERANCE;
    let mut report = ValidationReport::new();
    let empty = m.mass(Subset::EMPTY);
    if empty.abs() > tol {
        report.push(Violation::new(
            Constraint::Boundary,
            format!("m(∅) = {empty}, expected 0"),
        ));
    }
    let total = m.total_mass();
    if (total - 1.0).abs() > tol {
        report.push(Violation::new(
            Constraint::Boundary,
            format!("masses sum to {total}, expected 1"),
        ));
    }
    if m.order() <= 2 {
        let (singles, pairs) = m.split_two_additive();
        for (j, &mj) in singles.iter().enumerate() {
            let worst = mj
                + pairs
                    .iter()
                    .filter(|((a, b), v)| (*a == j || *b == j) && *v < 0.0)
                    .map(|(_, v)| v)
                    .sum::<f64>();
            if mj < -tol || worst < -tol {
                report.push(Violation::new(
                    Constraint::Monotonicity,
                    format!(
                        "criterion {}: m({{{}}}) plus its negative pair masses is {}",
                        j + 1,
                        j + 1,
                        worst.min(mj)
                    ),
                ));
            }
        }
        return Ok(report);
    }
    let lattice = mobius_to_lattice(m)?;
    for bits in 0..1u64 << m.n {
        let r = Subset::from_bits(bits);
        for i in (0..m.n).filter(|&i| !r.contains(i)) {
            let marginal = lattice.value(r.with(i)) - lattice.value(r);
            if marginal < -tol {
                report.push(Violation::new(
                    Constraint::Monotonicity,
                    format!(
                        "adding criterion {} to {r} changes the capacity by {marginal}",
                        i + 1
                    ),
                ));
            }
        }
    }
    Ok(report)
}
