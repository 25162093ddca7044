//! Direct Choquet scoring after making the criteria commensurate, either by a
//! qualitative scale given by the caller or by min-max normalization.

use serde::Serialize;

use crate::capacity::{choquet_mobius, CapacityModel};
use crate::error::{Error, Result};
use crate::preference::{CriterionSpec, DecisionMatrix, Direction};

/// A decision matrix rescaled to `[0, 1]` per criterion, with the extremes
/// used for the rescaling.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormalizedMatrix {
    pub matrix: DecisionMatrix,
    pub mins: Vec<f64>,
    pub maxs: Vec<f64>,
}

/// Min-max normalization per criterion: `(x − min)/(max − min)` for maximized
/// criteria and `(max − x)/(max − min)` for minimized ones, so the best value
/// always maps to 1. Constant columns are rejected.
pub fn min_max_normalize(
    matrix: &DecisionMatrix,
    criteria: &[CriterionSpec],
) -> Result<NormalizedMatrix> {
    if matrix.is_empty() {
        return Err(Error::structural(
            "cannot normalize an empty decision matrix",
        ));
    }
    let n = criteria.len();
    if matrix.row(0).len() != n {
        return Err(Error::structural(format!(
            "{n} criteria but rows have {} evaluations",
            matrix.row(0).len()
        )));
    }
    let mut mins = vec![f64::INFINITY; n];
    let mut maxs = vec![f64::NEG_INFINITY; n];
    for row in matrix.rows() {
        for j in 0..n {
            mins[j] = mins[j].min(row[j]);
            maxs[j] = maxs[j].max(row[j]);
        }
    }
    if let Some(j) = (0..n).find(|&j| maxs[j] <= mins[j]) {
        return Err(Error::precondition(format!(
            "criterion {} is constant ({}), min-max normalization is undefined",
            criteria[j].name, mins[j]
        )));
    }
    let rows = matrix
        .rows()
        .iter()
        .map(|row| {
            (0..n)
                .map(|j| {
                    let span = maxs[j] - mins[j];
                    match criteria[j].direction {
                        Direction::Maximize => (row[j] - mins[j]) / span,
                        Direction::Minimize => (maxs[j] - row[j]) / span,
                    }
                })
                .collect()
        })
        .collect();
    Ok(NormalizedMatrix {
        matrix: DecisionMatrix::new(matrix.names().to_vec(), rows, n)?,
        mins,
        maxs,
    })
}

/// Choquet integral of every row of a matrix whose criteria share a scale.
pub fn direct_choquet_scores(
    matrix: &DecisionMatrix,
    capacity: &CapacityModel,
) -> Result<Vec<f64>> {
    matrix
        .rows()
        .iter()
        .map(|row| choquet_mobius(row, capacity.mobius()))
        .collect()
}
