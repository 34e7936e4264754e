use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use super::ground_truth::GroundTruthMap;
use super::rng;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Pixel {
    pub row: usize,
    pub col: usize,
}

/// Disjoint train/test partition of the labeled pixels. Both sides are kept
/// in row-major order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainTestSplit {
    pub train: Vec<Pixel>,
    pub test: Vec<Pixel>,
    pub seed: u64,
    pub fraction: f64,
}

/// Uniform random split: shuffle the labeled pixels with the seeded generator
/// and send the first `round(fraction * n)` to training.
pub fn split_labeled_pixels(gt: &GroundTruthMap, fraction: f64, seed: u64) -> Result<TrainTestSplit> {
    if !(fraction > 0.0 && fraction < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "split fraction must lie in (0, 1), got {fraction}"
        )));
    }
    let mut labeled: Vec<Pixel> = (0..gt.lines())
        .flat_map(|row| (0..gt.samples()).map(move |col| Pixel { row, col }))
        .filter(|p| gt.label(p.row, p.col) != 0)
        .collect();
    if labeled.is_empty() {
        return Err(Error::EmptySupport);
    }
    if labeled.len() < 2 {
        return Err(Error::InvalidArgument("a split needs at least 2 labeled pixels".into()));
    }
    let n_train = (fraction * labeled.len() as f64).round() as usize;
    if n_train == 0 || n_train == labeled.len() {
        return Err(Error::InvalidArgument(format!(
            "fraction {fraction} of {} labeled pixels leaves one side empty",
            labeled.len()
        )));
    }

    labeled.shuffle(&mut rng::stream(seed, rng::SPLIT_STREAM));
    let mut test = labeled.split_off(n_train);
    let mut train = labeled;
    train.sort_unstable();
    test.sort_unstable();
    Ok(TrainTestSplit {
        train,
        test,
        seed,
        fraction,
    })
}
