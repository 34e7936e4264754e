use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::ranking::{check_redundancy, RelevanceRanking};
use crate::data_model::HsiCube;
use crate::info_theory::{normalized_mi, quantize_band_masked, DiscreteRaster, PixelMask};
use crate::{Error, Result};

/// Written over a visited cell so it is never picked again. Exceeds every
/// legal threshold and every normalized MI value.
pub const SENTINEL: f64 = 2.0;

/// Pairwise normalized MI among relevance survivors, indexed by position in
/// the ranking (ascending MI). The diagonal is 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RedundancyMatrix {
    bands: Vec<usize>,
    cells: Vec<f64>,
}

impl RedundancyMatrix {
    /// `cells` is row-major `n x n` for `n = bands.len()`. It must be
    /// symmetric with a unit diagonal and off-diagonal values in `[0, 1]`.
    pub fn from_cells(bands: Vec<usize>, cells: Vec<f64>) -> Result<Self> {
        let n = bands.len();
        if cells.len() != n * n {
            return Err(Error::InvalidArgument(format!(
                "redundancy matrix for {n} bands needs {} cells, got {}",
                n * n,
                cells.len()
            )));
        }
        for i in 0..n {
            if cells[i * n + i] != 1.0 {
                return Err(Error::InvalidArgument(format!(
                    "diagonal cell {i} is {}, expected 1",
                    cells[i * n + i]
                )));
            }
            for j in 0..i {
                let v = cells[i * n + j];
                if !(0.0..=1.0).contains(&v) {
                    return Err(Error::InvalidArgument(format!("cell ({i}, {j}) = {v} outside [0, 1]")));
                }
                if v != cells[j * n + i] {
                    return Err(Error::InvalidArgument(format!(
                        "cells ({i}, {j}) and ({j}, {i}) differ"
                    )));
                }
            }
        }
        Ok(Self { bands, cells })
    }

    pub fn n(&self) -> usize {
        self.bands.len()
    }

    /// Original band index of each row/column.
    pub fn bands(&self) -> &[usize] {
        &self.bands
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.cells[i * self.n() + j]
    }

    pub fn cells(&self) -> &[f64] {
        &self.cells
    }

    /// Restriction to `rows` (positions into this matrix), in that order.
    pub(crate) fn submatrix(&self, rows: &[usize]) -> Self {
        let bands = rows.iter().map(|&r| self.bands[r]).collect();
        let cells = rows
            .iter()
            .flat_map(|&i| rows.iter().map(move |&j| (i, j)))
            .map(|(i, j)| self.get(i, j))
            .collect();
        Self { bands, cells }
    }
}

/// Normalized MI between every pair of ranked bands, each band quantized over
/// `mask` with its own min-max range.
pub fn build_redundancy_matrix(
    cube: &HsiCube,
    ranking: &RelevanceRanking,
    bins: usize,
    mask: &PixelMask,
) -> Result<RedundancyMatrix> {
    if ranking.is_empty() {
        return Err(Error::InvalidArgument("ranking has no surviving bands".into()));
    }
    if let Some(&b) = ranking.surviving.iter().find(|&&b| b >= cube.bands()) {
        return Err(Error::InvalidArgument(format!(
            "ranking references band {b} but the cube has {} bands",
            cube.bands()
        )));
    }
    let rasters: Vec<DiscreteRaster> = ranking
        .surviving
        .par_iter()
        .map(|&b| quantize_band_masked(cube.band(b), cube.samples(), cube.lines(), bins, mask))
        .collect::<Result<_>>()?;
    pairwise_nmi(ranking.surviving.clone(), &rasters, mask)
}

/// Fills the symmetric table. Each pair is evaluated once with the lower
/// original band index as the first argument, so the value of a pair does not
/// depend on which subset it was computed in.
pub(crate) fn pairwise_nmi(
    bands: Vec<usize>,
    rasters: &[DiscreteRaster],
    mask: &PixelMask,
) -> Result<RedundancyMatrix> {
    let n = bands.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let values: Vec<f64> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (lo, hi) = if bands[i] < bands[j] { (i, j) } else { (j, i) };
            normalized_mi(&rasters[lo], &rasters[hi], mask)
        })
        .collect::<Result<_>>()?;

    let mut cells = vec![1.0; n * n];
    for (&(i, j), &v) in pairs.iter().zip(&values) {
        cells[i * n + j] = v;
        cells[j * n + i] = v;
    }
    Ok(RedundancyMatrix { bands, cells })
}

/// A member of the selected set compared against a candidate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MemberCheck {
    pub band: usize,
    pub u: f64,
}

/// What happened to one side of a picked pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Admission {
    /// Below the threshold against every member listed in `checked`, which
    /// is the whole selected set at admission time.
    Admitted { checked: Vec<MemberCheck> },
    /// Already a member; set insertion is a no-op.
    AlreadySelected,
    /// `conflict` is the first member (in admission order) at or above the
    /// threshold.
    Rejected { conflict: MemberCheck },
}

/// One iteration of the selection loop. The picked cell and its mirror are
/// both overwritten with [`SENTINEL`] afterwards.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PickRecord {
    pub iteration: usize,
    /// Matrix positions `(x, y)` with `x < y`.
    pub cell: (usize, usize),
    /// Original band indices of `x` and `y`.
    pub bands: (usize, usize),
    pub u: f64,
    pub x: Admission,
    pub y: Admission,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct NonRedundantSet {
    /// Original band indices in admission order.
    pub selected: Vec<usize>,
    pub decision_log: Vec<PickRecord>,
}

/// Greedy redundancy control over `d`.
///
/// Cells are visited from the smallest value upwards, ties broken by row and
/// then column, until no unvisited cell lies below `th_redundancy`. For the
/// visited cell `(x, y)`, `x` is admitted if its value against every selected
/// band is below the threshold, then `y` likewise (with `x` possibly already
/// counted). The matrix is symmetric and every visit retires a cell together
/// with its mirror, so this order is exactly the order of repeated argmin
/// scans over the working matrix; sorting the qualifying upper-triangle cells
/// once replaces those scans. Admission tests always read the original values.
pub fn select_nonredundant(d: &RedundancyMatrix, th_redundancy: f64) -> Result<NonRedundantSet> {
    check_redundancy(th_redundancy)?;
    let n = d.n();
    let mut queue: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| d.get(i, j) < th_redundancy)
        .collect();
    queue.sort_by(|&(a, b), &(c, e)| d.get(a, b).total_cmp(&d.get(c, e)).then((a, b).cmp(&(c, e))));

    let mut member = vec![false; n];
    let mut order: Vec<usize> = Vec::new();
    let mut log = Vec::with_capacity(queue.len());

    let admit = |cand: usize, member: &mut Vec<bool>, order: &mut Vec<usize>| -> Admission {
        if member[cand] {
            return Admission::AlreadySelected;
        }
        let mut checked = Vec::with_capacity(order.len());
        for &l in order.iter() {
            let check = MemberCheck {
                band: d.bands[l],
                u: d.get(cand, l),
            };
            if check.u >= th_redundancy {
                return Admission::Rejected { conflict: check };
            }
            checked.push(check);
        }
        member[cand] = true;
        order.push(cand);
        Admission::Admitted { checked }
    };

    for (iteration, &(x, y)) in queue.iter().enumerate() {
        let x_outcome = admit(x, &mut member, &mut order);
        let y_outcome = admit(y, &mut member, &mut order);
        log.push(PickRecord {
            iteration,
            cell: (x, y),
            bands: (d.bands[x], d.bands[y]),
            u: d.get(x, y),
            x: x_outcome,
            y: y_outcome,
        });
    }

    Ok(NonRedundantSet {
        selected: order.iter().map(|&i| d.bands[i]).collect(),
        decision_log: log,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matrix(bands: &[usize], upper: &[f64]) -> RedundancyMatrix {
        let n = bands.len();
        let mut cells = vec![1.0; n * n];
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                cells[i * n + j] = upper[k];
                cells[j * n + i] = upper[k];
                k += 1;
            }
        }
        RedundancyMatrix::from_cells(bands.to_vec(), cells).unwrap()
    }

    #[test]
    fn global_minimum_pair_enters_first() {
        // bands 16 and 18 share the smallest value, as in the synthetic study
        let d = matrix(&[12, 8, 16, 18], &[0.13, 0.17, 0.23, 0.20, 0.27, 0.07]);
        let out = select_nonredundant(&d, 0.7).unwrap();
        assert_eq!(out.decision_log[0].bands, (16, 18));
        assert_eq!(&out.selected[..2], &[16, 18]);
        assert_eq!(out.selected.len(), 4);
    }

    #[test]
    fn everything_redundant_selects_nothing() {
        let d = matrix(&[0, 1, 2], &[0.8, 0.9, 0.75]);
        let out = select_nonredundant(&d, 0.7).unwrap();
        assert!(out.selected.is_empty());
        assert!(out.decision_log.is_empty());
    }

    #[test]
    fn empty_matrix_gives_empty_result() {
        let d = RedundancyMatrix::from_cells(vec![], vec![]).unwrap();
        assert_eq!(select_nonredundant(&d, 0.5).unwrap(), NonRedundantSet::default());
    }

    #[test]
    fn redundant_candidate_is_rejected_with_conflict() {
        // 0-1 and 0-2 are fine, 1-2 is redundant
        let d = matrix(&[0, 1, 2], &[0.1, 0.2, 0.9]);
        let out = select_nonredundant(&d, 0.5).unwrap();
        assert_eq!(out.selected, vec![0, 1]);
        let second = &out.decision_log[1];
        assert_eq!(second.x, Admission::AlreadySelected);
        assert_eq!(
            second.y,
            Admission::Rejected {
                conflict: MemberCheck { band: 1, u: 0.9 }
            }
        );
    }

    #[test]
    fn ties_break_by_row_then_column() {
        let d = matrix(&[5, 6, 7, 8], &[0.3, 0.1, 0.3, 0.1, 0.3, 0.1]);
        let out = select_nonredundant(&d, 0.5).unwrap();
        let cells: Vec<_> = out.decision_log.iter().map(|p| p.cell).collect();
        assert_eq!(cells, vec![(0, 2), (1, 2), (2, 3), (0, 1), (0, 3), (1, 3)]);
    }

    #[test]
    fn rejects_asymmetric_or_bad_diagonal() {
        assert!(RedundancyMatrix::from_cells(vec![0, 1], vec![1.0, 0.2, 0.3, 1.0]).is_err());
        assert!(RedundancyMatrix::from_cells(vec![0, 1], vec![0.9, 0.2, 0.2, 1.0]).is_err());
    }

    #[test]
    fn threshold_range_checked() {
        let d = matrix(&[0, 1], &[0.1]);
        assert!(select_nonredundant(&d, 0.0).is_err());
        assert!(select_nonredundant(&d, 1.5).is_err());
    }
}
