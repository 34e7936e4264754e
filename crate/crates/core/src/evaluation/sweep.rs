use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::features::extract_features;
use super::knn::{accuracy, classify_1nn, NEAREST_NEIGHBOR};
use crate::band_selection::{BandStatistics, SelectionResult, Thresholds};
use crate::data_model::{split_labeled_pixels, GroundTruthMap, HsiCube, TrainTestSplit};
use crate::{Error, Result};

/// Accuracy of the 1-NN classifier on one band subset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AccuracyReport {
    pub n_bands: usize,
    pub accuracy: f64,
    /// Present when the bands came out of a threshold selection.
    pub thresholds: Option<Thresholds>,
    pub seed: u64,
    pub classifier: String,
    pub bands: Vec<usize>,
}

/// Trains on `split.train` and scores on `split.test`. Columns are taken in
/// ascending band order, so the result depends only on the set of bands.
pub fn classify_bands(
    cube: &HsiCube,
    gt: &GroundTruthMap,
    split: &TrainTestSplit,
    bands: &[usize],
) -> Result<AccuracyReport> {
    let mut sorted = bands.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let train = extract_features(cube, &sorted, &split.train, gt)?;
    let test = extract_features(cube, &sorted, &split.test, gt)?;
    let predicted = classify_1nn(&train, &test)?;
    Ok(AccuracyReport {
        n_bands: sorted.len(),
        accuracy: accuracy(&predicted, test.labels())?,
        thresholds: None,
        seed: split.seed,
        classifier: NEAREST_NEIGHBOR.into(),
        bands: sorted,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub relevance_axis: Vec<f64>,
    pub redundancy_axis: Vec<f64>,
    pub bins: usize,
    pub split_seed: u64,
    pub fraction: f64,
}

/// One threshold couple. `accuracy` is `None` when nothing was selected.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepCell {
    pub th_relevance: f64,
    pub th_redundancy: f64,
    pub n_bands: usize,
    pub accuracy: Option<f64>,
    pub selection: SelectionResult,
}

impl SweepCell {
    pub fn is_absent(&self) -> bool {
        self.n_bands == 0
    }
}

/// Cells are stored relevance-major: cell `(r, t)` sits at
/// `r * redundancy_axis.len() + t`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepGrid {
    pub relevance_axis: Vec<f64>,
    pub redundancy_axis: Vec<f64>,
    pub bins: usize,
    pub seed: u64,
    pub fraction: f64,
    pub classifier: String,
    pub cells: Vec<SweepCell>,
}

impl SweepGrid {
    pub fn cell(&self, relevance: usize, redundancy: usize) -> &SweepCell {
        &self.cells[relevance * self.redundancy_axis.len() + redundancy]
    }
}

/// Runs the selection for every threshold couple and scores each nonempty
/// subset on one shared split. Cells that select the same band set share one
/// classification run.
pub fn sweep(cube: &HsiCube, gt: &GroundTruthMap, config: &SweepConfig) -> Result<SweepGrid> {
    if config.relevance_axis.is_empty() || config.redundancy_axis.is_empty() {
        return Err(Error::InvalidArgument("sweep axes must be nonempty".into()));
    }
    let couples: Vec<Thresholds> = config
        .relevance_axis
        .iter()
        .flat_map(|&r| config.redundancy_axis.iter().map(move |&t| (r, t)))
        .map(|(r, t)| Thresholds::new(r, t))
        .collect::<Result<_>>()?;

    let stats = BandStatistics::compute(cube, gt, config.bins)?;
    let split = split_labeled_pixels(gt, config.fraction, config.split_seed)?;
    let selections: Vec<SelectionResult> = couples.iter().map(|&th| stats.select(th)).collect::<Result<_>>()?;

    let mut scored: BTreeMap<Vec<usize>, f64> = BTreeMap::new();
    for s in &selections {
        let mut key = s.selected.clone();
        key.sort_unstable();
        if !key.is_empty() && !scored.contains_key(&key) {
            let report = classify_bands(cube, gt, &split, &key)?;
            scored.insert(key, report.accuracy);
        }
    }

    let cells = selections
        .into_iter()
        .map(|selection| {
            let mut key = selection.selected.clone();
            key.sort_unstable();
            SweepCell {
                th_relevance: selection.thresholds.th_relevance,
                th_redundancy: selection.thresholds.th_redundancy,
                n_bands: key.len(),
                accuracy: scored.get(&key).copied(),
                selection,
            }
        })
        .collect();

    Ok(SweepGrid {
        relevance_axis: config.relevance_axis.clone(),
        redundancy_axis: config.redundancy_axis.clone(),
        bins: config.bins,
        seed: config.split_seed,
        fraction: config.fraction,
        classifier: NEAREST_NEIGHBOR.into(),
        cells,
    })
}
