use rayon::prelude::*;

use super::estimators::JointHistogram;
use super::raster::{quantize_band_masked, DiscreteRaster, PixelMask};
use crate::data_model::{GroundTruthMap, HsiCube};
use crate::{Error, Result};

/// Default number of equal-width bins per band.
pub const DEFAULT_BINS: usize = 256;

/// MI between every band and the ground truth, over labeled pixels only.
/// Entry `b` of the result belongs to band `b`.
pub fn relevance_curve(cube: &HsiCube, gt: &GroundTruthMap, bins: usize) -> Result<Vec<f64>> {
    check_spatial(cube, gt)?;
    let mask = gt.labeled_mask();
    if mask.is_empty() {
        return Err(Error::EmptySupport);
    }
    let labels = gt.raster();
    quantize_cube(cube, bins, &mask)?
        .par_iter()
        .map(|band| Ok(JointHistogram::build(band, &labels, &mask)?.mutual_information()))
        .collect()
}

pub(crate) fn check_spatial(cube: &HsiCube, gt: &GroundTruthMap) -> Result<()> {
    if (cube.lines(), cube.samples()) != (gt.lines(), gt.samples()) {
        return Err(Error::dims((cube.lines(), cube.samples()), (gt.lines(), gt.samples())));
    }
    Ok(())
}

/// Quantizes every band with its own masked min-max range.
pub(crate) fn quantize_cube(cube: &HsiCube, bins: usize, mask: &PixelMask) -> Result<Vec<DiscreteRaster>> {
    (0..cube.bands())
        .into_par_iter()
        .map(|b| quantize_band_masked(cube.band(b), cube.samples(), cube.lines(), bins, mask))
        .collect()
}
