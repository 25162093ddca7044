//! Reference implementations written without the library's own conversions,
//! integrals or assignment code, used to cross-check them.

use crate::capacity::{CapacityLattice, ShapleyInteractionModel, Subset};
use crate::error::{Error, Result};
use crate::preference::{CriterionSpec, Direction};

/// Choquet integral as a sum over level sets: each distinct value `t` (in
/// increasing order) contributes `(t − t_prev) · μ({j : x_j ≥ t})`, starting
/// from `t_prev = 0`.
pub fn oracle_choquet(values: &[f64], cap: &CapacityLattice) -> f64 {
    let mut levels = values.to_vec();
    levels.sort_by(f64::total_cmp);
    levels.dedup();
    let mut total = 0.0;
    let mut previous = 0.0;
    for t in levels {
        let upper = Subset::from_indices((0..values.len()).filter(|&j| values[j] >= t));
        total += (t - previous) * cap.value(upper);
        previous = t;
    }
    total
}

/// The capacity lattice of a 2-additive model, built directly from
/// `μ(S) = Σ_{j∈S} (I_j − ½ Σ_{s≠j} I_js) + Σ_{{j,s}⊆S} I_js`.
pub fn oracle_lattice(model: &ShapleyInteractionModel) -> Result<CapacityLattice> {
    let n = model.n();
    let singleton: Vec<f64> = (0..n)
        .map(|j| {
            let half: f64 = (0..n)
                .filter(|&s| s != j)
                .map(|s| model.interaction(j, s))
                .sum::<f64>()
                / 2.0;
            model.shapley()[j] - half
        })
        .collect();
    CapacityLattice::from_fn(n, |set| {
        let members: Vec<usize> = (0..n).filter(|&j| set.contains(j)).collect();
        let mut mu: f64 = members.iter().map(|&j| singleton[j]).sum();
        for (a, &j) in members.iter().enumerate() {
            for &s in &members[a + 1..] {
                mu += model.interaction(j, s);
            }
        }
        mu
    })
}

fn classic_degree(spec: &CriterionSpec, x: f64, y: f64) -> Result<f64> {
    let d = match spec.direction {
        Direction::Maximize => x - y,
        Direction::Minimize => y - x,
    };
    let need = |v: Option<f64>, what: &str| {
        v.ok_or_else(|| Error::precondition(format!("criterion {} lacks {what}", spec.name)))
    };
    if d <= 0.0 {
        return Ok(0.0);
    }
    Ok(match spec.function.as_str() {
        "usual" => 1.0,
        "u_shape" => {
            if d > need(spec.q, "q")? {
                1.0
            } else {
                0.0
            }
        }
        "v_shape" => (d / need(spec.p, "p")?).min(1.0),
        "level" => {
            let (q, p) = (need(spec.q, "q")?, need(spec.p, "p")?);
            if d > p {
                1.0
            } else if d > q {
                0.5
            } else {
                0.0
            }
        }
        "linear" => {
            let (q, p) = (need(spec.q, "q")?, need(spec.p, "p")?);
            ((d - q) / (p - q)).clamp(0.0, 1.0)
        }
        "gaussian" => {
            let s = need(spec.s, "s")?;
            1.0 - (-d * d / (2.0 * s * s)).exp()
        }
        other => {
            return Err(Error::precondition(format!(
                "no reference implementation of preference function {other}"
            )))
        }
    })
}

/// Flows and categories computed by plain weighted-sum FlowSort.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicOutcome {
    /// Local set order: `r_1, …, r_{k+1}, a`.
    pub positive: Vec<f64>,
    pub negative: Vec<f64>,
    pub net: Vec<f64>,
    /// Category indices (1-based) under the positive, negative and net rules.
    pub categories: [usize; 3],
}

/// Weighted-sum FlowSort for one alternative. Ties between an alternative's
/// flow and a profile flow are resolved within `tolerance`, with each end
/// interval closed as needed so that every in-band flow gets a category.
pub fn classic_flowsort(
    criteria: &[CriterionSpec],
    profiles: &[Vec<f64>],
    alternative: &[f64],
    weights: &[f64],
    tolerance: f64,
) -> Result<ClassicOutcome> {
    let mut local: Vec<&[f64]> = profiles.iter().map(Vec::as_slice).collect();
    local.push(alternative);
    let size = local.len();
    let mut pi = vec![vec![0.0; size]; size];
    for x in 0..size {
        for y in 0..size {
            if x == y {
                continue;
            }
            let mut sum = 0.0;
            for (j, spec) in criteria.iter().enumerate() {
                sum += weights[j] * classic_degree(spec, local[x][j], local[y][j])?;
            }
            pi[x][y] = sum;
        }
    }
    let scale = (size - 1) as f64;
    let positive: Vec<f64> = (0..size)
        .map(|x| (0..size).filter(|&y| y != x).map(|y| pi[x][y]).sum::<f64>() / scale)
        .collect();
    let negative: Vec<f64> = (0..size)
        .map(|x| (0..size).filter(|&y| y != x).map(|y| pi[y][x]).sum::<f64>() / scale)
        .collect();
    let net: Vec<f64> = positive.iter().zip(&negative).map(|(p, n)| p - n).collect();
    let a = size - 1;
    let categories = [
        higher_is_better(&positive[..a], positive[a], tolerance)?,
        lower_is_better(&negative[..a], negative[a], tolerance)?,
        higher_is_better(&net[..a], net[a], tolerance)?,
    ];
    Ok(ClassicOutcome {
        positive,
        negative,
        net,
        categories,
    })
}

/// `K_h` with `f_h ≥ v > f_{h+1}`.
fn higher_is_better(f: &[f64], v: f64, tol: f64) -> Result<usize> {
    let k = f.len() - 1;
    for h in 1..=k {
        if f[h - 1] >= v - tol && f[h] < v - tol {
            return Ok(h);
        }
    }
    if (v - f[k]).abs() <= tol {
        return Ok(k);
    }
    Err(Error::Inconsistency(format!(
        "flow {v} lies outside the profile band"
    )))
}

/// `K_h` with `f_h < v ≤ f_{h+1}`.
fn lower_is_better(f: &[f64], v: f64, tol: f64) -> Result<usize> {
    let k = f.len() - 1;
    for h in 1..=k {
        if f[h - 1] < v - tol && f[h] >= v - tol {
            return Ok(h);
        }
    }
    if (v - f[0]).abs() <= tol {
        return Ok(1);
    }
    Err(Error::Inconsistency(format!(
        "flow {v} lies outside the profile band"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::capacity::{choquet_lattice, lattice_to_mobius, mobius_to_lattice};

    fn car_model() -> ShapleyInteractionModel {
        ShapleyInteractionModel::new(
            vec![0.25, 0.21, 0.16, 0.38],
            [((1, 2), -0.08), ((2, 3), 0.10)],
        )
        .unwrap()
    }

    #[test]
    fn level_sets_on_two_criteria() {
        let model = ShapleyInteractionModel::new(vec![0.5, 0.5], [((0, 1), 0.2)]).unwrap();
        let cap = oracle_lattice(&model).unwrap();
        assert!((oracle_choquet(&[3.0, 2.0], &cap) - 2.4).abs() < 1e-12);
        assert!((oracle_choquet(&[1.0, 3.0], &cap) - 1.8).abs() < 1e-12);
    }

    #[test]
    fn dictator() {
        let cap = CapacityLattice::from_fn(3, |s| if s.contains(1) { 1.0 } else { 0.0 }).unwrap();
        assert_eq!(oracle_choquet(&[0.3, 0.7, 0.1], &cap), 0.7);
    }

    #[test]
    fn lattice_agrees_with_library_conversion() {
        let cap = oracle_lattice(&car_model()).unwrap();
        let lib = mobius_to_lattice(&car_model().to_mobius()).unwrap();
        for (a, b) in cap.values().iter().zip(lib.values()) {
            assert!((a - b).abs() < 1e-12);
        }
        let back = lattice_to_mobius(&cap);
        assert!((back.mass(Subset::pair(2, 3)) - 0.10).abs() < 1e-12);
    }

    #[test]
    fn ties_are_grouped() {
        let cap = oracle_lattice(&car_model()).unwrap();
        let x = [0.0, 0.0, 1.0, 1.0];
        assert!((oracle_choquet(&x, &cap) - 0.58).abs() < 1e-12);
        assert!((oracle_choquet(&x, &cap) - choquet_lattice(&x, &cap).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn classic_flowsort_on_two_categories() {
        let criteria = [
            CriterionSpec::usual("g1", Direction::Maximize),
            CriterionSpec::usual("g2", Direction::Maximize),
        ];
        let profiles = vec![vec![10.0, 10.0], vec![5.0, 5.0], vec![0.0, 0.0]];
        let out = classic_flowsort(&criteria, &profiles, &[7.0, 7.0], &[0.5, 0.5], 0.0).unwrap();
        assert_eq!(out.categories, [1, 1, 1]);
        let out = classic_flowsort(&criteria, &profiles, &[0.0, 0.0], &[0.5, 0.5], 0.0).unwrap();
        assert_eq!(out.categories, [2, 2, 2]);
        assert!((out.positive[3] - 0.0).abs() < 1e-15);
    }
}
