use std::ops::RangeInclusive;

use crate::data_model::{GroundTruthMap, HsiCube};
use crate::{Error, Result};

/// Per-pixel arithmetic mean of the bands in `range`, accumulated in band
/// order.
pub fn band_average(cube: &HsiCube, range: RangeInclusive<usize>) -> Result<Vec<f64>> {
    let (first, last) = (*range.start(), *range.end());
    if first > last {
        return Err(Error::InvalidArgument(format!("band range {first}..={last} is empty")));
    }
    if last >= cube.bands() {
        return Err(Error::InvalidArgument(format!(
            "band range {first}..={last} exceeds the {} bands of the cube",
            cube.bands()
        )));
    }
    let mut sum = vec![0.0; cube.pixels_per_band()];
    for b in range {
        for (acc, &v) in sum.iter_mut().zip(cube.band(b)) {
            *acc += v;
        }
    }
    let count = (last - first + 1) as f64;
    Ok(sum.into_iter().map(|s| s / count).collect())
}

/// A reference label map built without ground truth: average the bands in
/// `range` and bin the mean image into `levels` labels `1..=levels` with
/// equal-width min-max bins. Every pixel is labeled.
pub fn estimate_ground_truth(cube: &HsiCube, range: RangeInclusive<usize>, levels: u32) -> Result<GroundTruthMap> {
    if levels == 0 {
        return Err(Error::InvalidArgument("need at least one label level".into()));
    }
    let mean = band_average(cube, range)?;
    let lo = mean.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = mean.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let labels = if hi > lo {
        let scale = f64::from(levels) / (hi - lo);
        mean.iter()
            .map(|&m| 1 + (((m - lo) * scale).floor() as u32).min(levels - 1))
            .collect()
    } else {
        vec![1; mean.len()]
    };
    GroundTruthMap::new(cube.lines(), cube.samples(), labels)
}
