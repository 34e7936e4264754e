use serde::{Deserialize, Serialize};

use super::ranking::{rank_by_relevance, RelevanceRanking, Thresholds};
use super::redundancy::{build_redundancy_matrix, pairwise_nmi, select_nonredundant, PickRecord, RedundancyMatrix};
use crate::data_model::{GroundTruthMap, HsiCube};
use crate::info_theory::relevance::quantize_cube;
use crate::info_theory::relevance_curve;
use crate::{Error, Result};

/// Outcome of the two-threshold selection with everything needed to audit it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectionResult {
    /// Original band indices in admission order.
    pub selected: Vec<usize>,
    pub thresholds: Thresholds,
    pub ranking: RelevanceRanking,
    pub decision_log: Vec<PickRecord>,
}

impl SelectionResult {
    fn from_parts(thresholds: Thresholds, ranking: RelevanceRanking, d: Option<&RedundancyMatrix>) -> Result<Self> {
        let chosen = match d {
            Some(d) => select_nonredundant(d, thresholds.th_redundancy)?,
            None => Default::default(),
        };
        Ok(Self {
            selected: chosen.selected,
            thresholds,
            ranking,
            decision_log: chosen.decision_log,
        })
    }
}

/// Relevance curve, cutoff, pairwise normalized MI over labeled pixels, then
/// greedy redundancy control.
pub fn select_bands(cube: &HsiCube, gt: &GroundTruthMap, th: Thresholds, bins: usize) -> Result<SelectionResult> {
    let curve = relevance_curve(cube, gt, bins)?;
    let ranking = rank_by_relevance(&curve, th.th_relevance)?;
    if ranking.is_empty() {
        return SelectionResult::from_parts(th, ranking, None);
    }
    let d = build_redundancy_matrix(cube, &ranking, bins, &gt.labeled_mask())?;
    SelectionResult::from_parts(th, ranking, Some(&d))
}

/// The relevance curve and the full band-by-band normalized MI table of one
/// cube, computed once so many threshold couples can be evaluated cheaply.
/// [`BandStatistics::select`] returns exactly what [`select_bands`] would.
#[derive(Debug, Clone, PartialEq)]
pub struct BandStatistics {
    pub mi_curve: Vec<f64>,
    nmi: RedundancyMatrix,
}

impl BandStatistics {
    pub fn compute(cube: &HsiCube, gt: &GroundTruthMap, bins: usize) -> Result<Self> {
        let mi_curve = relevance_curve(cube, gt, bins)?;
        let mask = gt.labeled_mask();
        let rasters = quantize_cube(cube, bins, &mask)?;
        let nmi = pairwise_nmi((0..cube.bands()).collect(), &rasters, &mask)?;
        Ok(Self { mi_curve, nmi })
    }

    pub fn bands(&self) -> usize {
        self.mi_curve.len()
    }

    /// Normalized MI between two original bands.
    pub fn nmi(&self, a: usize, b: usize) -> f64 {
        self.nmi.get(a, b)
    }

    pub fn redundancy_matrix(&self, ranking: &RelevanceRanking) -> Result<RedundancyMatrix> {
        if let Some(&b) = ranking.surviving.iter().find(|&&b| b >= self.bands()) {
            return Err(Error::InvalidArgument(format!(
                "ranking references band {b} of {}",
                self.bands()
            )));
        }
        Ok(self.nmi.submatrix(&ranking.surviving))
    }

    pub fn select(&self, th: Thresholds) -> Result<SelectionResult> {
        let ranking = rank_by_relevance(&self.mi_curve, th.th_relevance)?;
        if ranking.is_empty() {
            return SelectionResult::from_parts(th, ranking, None);
        }
        let d = self.redundancy_matrix(&ranking)?;
        SelectionResult::from_parts(th, ranking, Some(&d))
    }
}
