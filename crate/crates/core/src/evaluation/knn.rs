use rayon::prelude::*;

use super::features::FeatureMatrix;
use crate::{Error, Result};

/// Classifier tag recorded in reports.
pub const NEAREST_NEIGHBOR: &str = "1nn-euclidean";

/// Labels each test row with the label of its Euclidean-nearest training row.
/// Ties go to the lowest training row.
pub fn classify_1nn(train: &FeatureMatrix, test: &FeatureMatrix) -> Result<Vec<u32>> {
    if train.cols() != test.cols() {
        return Err(Error::InvalidArgument(format!(
            "train has {} columns, test has {}",
            train.cols(),
            test.cols()
        )));
    }
    if train.rows() == 0 {
        return Err(Error::InvalidArgument("training set is empty".into()));
    }
    Ok((0..test.rows())
        .into_par_iter()
        .map(|i| {
            let query = test.row(i);
            let mut best = f64::INFINITY;
            let mut best_row = 0;
            for j in 0..train.rows() {
                // partial sums only grow, so stop once this row cannot win
                let mut dist = 0.0;
                for (a, b) in query.iter().zip(train.row(j)) {
                    dist += (a - b) * (a - b);
                    if dist >= best {
                        break;
                    }
                }
                if dist < best {
                    best = dist;
                    best_row = j;
                }
            }
            train.labels()[best_row]
        })
        .collect())
}

/// Percentage of positions where `predicted` matches `truth`.
pub fn accuracy(predicted: &[u32], truth: &[u32]) -> Result<f64> {
    if predicted.len() != truth.len() {
        return Err(Error::InvalidArgument(format!(
            "{} predictions for {} labels",
            predicted.len(),
            truth.len()
        )));
    }
    if truth.is_empty() {
        return Err(Error::InvalidArgument("no labels to score".into()));
    }
    let hits = predicted.iter().zip(truth).filter(|(p, t)| p == t).count();
    Ok(100.0 * hits as f64 / truth.len() as f64)
}
