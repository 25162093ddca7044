use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::outranking::OutrankingModel;
use crate::preference::DegreeTensor;

/// Outranking degrees between all elements of a local set
/// `r_1, …, r_{k+1}, a`, row `x` outranking column `y`.
#[derive(Debug, Clone, PartialEq)]
pub struct OutrankingMatrix {
    size: usize,
    degrees: Vec<f64>,
}

impl OutrankingMatrix {
    /// Builds the matrix from `f(x, y)` for `x ≠ y`; the diagonal is 0.
    pub fn from_fn(size: usize, mut f: impl FnMut(usize, usize) -> Result<f64>) -> Result<Self> {
        let mut degrees = vec![0.0; size * size];
        for x in 0..size {
            for y in 0..size {
                if x != y {
                    degrees[x * size + y] = f(x, y)?;
                }
            }
        }
        Ok(Self { size, degrees })
    }

    /// Aggregates every off-diagonal degree vector of `tensor` with `model`.
    pub fn from_degrees(tensor: &DegreeTensor, model: &dyn OutrankingModel) -> Result<Self> {
        Self::from_fn(tensor.size(), |x, y| model.degree(tensor.get(x, y)))
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.degrees[x * self.size + y]
    }

    pub fn row(&self, x: usize) -> &[f64] {
        &self.degrees[x * self.size..(x + 1) * self.size]
    }
}

/// Positive, negative and net flows of every element of a local set, in the
/// order `r_1, …, r_{k+1}, a`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlowTable {
    pub positive: Vec<f64>,
    pub negative: Vec<f64>,
    pub net: Vec<f64>,
}

/// Which of the three flows a value refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlowKind {
    Positive,
    Negative,
    Net,
}

impl FlowTable {
    /// Number of limiting profiles `k + 1`.
    pub fn profile_count(&self) -> usize {
        self.positive.len() - 1
    }

    pub fn alternative_index(&self) -> usize {
        self.positive.len() - 1
    }

    pub fn flows(&self, kind: FlowKind) -> &[f64] {
        match kind {
            FlowKind::Positive => &self.positive,
            FlowKind::Negative => &self.negative,
            FlowKind::Net => &self.net,
        }
    }

    /// Flows of the profiles only.
    pub fn profiles(&self, kind: FlowKind) -> &[f64] {
        &self.flows(kind)[..self.profile_count()]
    }

    pub fn alternative(&self, kind: FlowKind) -> f64 {
        self.flows(kind)[self.alternative_index()]
    }

    /// Checks that the profile flows are strictly ordered: positive and net
    /// flows decrease and negative flows increase from `r_1` to `r_{k+1}`.
    pub fn check_profile_order(&self) -> Result<()> {
        let checks = [
            (FlowKind::Positive, "φ⁺", true),
            (FlowKind::Negative, "φ⁻", false),
            (FlowKind::Net, "φ", true),
        ];
        for (kind, symbol, decreasing) in checks {
            let f = self.profiles(kind);
            for h in 0..f.len() - 1 {
                let ok = if decreasing {
                    f[h] > f[h + 1]
                } else {
                    f[h] < f[h + 1]
                };
                if !ok {
                    return Err(Error::Inconsistency(format!(
                        "profile flows are not strictly ordered: {symbol}(r_{}) = {} and {symbol}(r_{}) = {}; the limiting profiles do not separate the categories",
                        h + 1,
                        f[h],
                        h + 2,
                        f[h + 1]
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Flows without any ordering check.
pub fn flows_unchecked(matrix: &OutrankingMatrix) -> FlowTable {
    let size = matrix.size();
    let scale = 1.0 / (size - 1) as f64;
    let positive: Vec<f64> = (0..size)
        .map(|x| matrix.row(x).iter().sum::<f64>() * scale)
        .collect();
    let negative: Vec<f64> = (0..size)
        .map(|x| (0..size).map(|y| matrix.get(y, x)).sum::<f64>() * scale)
        .collect();
    let net = positive.iter().zip(&negative).map(|(p, n)| p - n).collect();
    FlowTable {
        positive,
        negative,
        net,
    }
}

/// `φ⁺(x) = Σ_{y≠x} CI(x, y) / (|R| − 1)`, `φ⁻` with the arguments swapped,
/// and `φ = φ⁺ − φ⁻`. Fails when the profile flows are not strictly ordered.
pub fn compute_flows(matrix: &OutrankingMatrix) -> Result<FlowTable> {
    if matrix.size() < 3 {
        return Err(Error::structural(format!(
            "a local set needs at least two profiles and one alternative, got {} elements",
            matrix.size()
        )));
    }
    let table = flows_unchecked(matrix);
    table.check_profile_order()?;
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Three fully ordered profiles and an alternative equal to the middle one.
    fn matrix() -> OutrankingMatrix {
        let rank = |x: usize| if x == 3 { 1 } else { x };
        let better = |x: usize, y: usize| (rank(x) < rank(y)) as u8 as f64;
        OutrankingMatrix::from_fn(4, |x, y| Ok(better(x, y))).unwrap()
    }

    #[test]
    fn flows_follow_definitions() {
        let m = matrix();
        let t = compute_flows(&m).unwrap();
        assert_eq!(t.positive, vec![1.0, 1.0 / 3.0, 0.0, 1.0 / 3.0]);
        assert_eq!(t.negative, vec![0.0, 1.0 / 3.0, 1.0, 1.0 / 3.0]);
        for x in 0..4 {
            assert_eq!(t.net[x], t.positive[x] - t.negative[x]);
        }
        assert_eq!(t.alternative(FlowKind::Net), 0.0);
    }

    #[test]
    fn unordered_profiles_are_rejected() {
        let m = OutrankingMatrix::from_fn(3, |_, _| Ok(0.0)).unwrap();
        assert!(matches!(compute_flows(&m), Err(Error::Inconsistency(_))));
    }
}
