use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A 2-D grid of symbols drawn from `0..alphabet_size`, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscreteRaster {
    width: usize,
    height: usize,
    alphabet_size: usize,
    values: Vec<u32>,
}

impl DiscreteRaster {
    pub fn new(width: usize, height: usize, alphabet_size: usize, values: Vec<u32>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidArgument(format!(
                "raster must have at least one pixel, got {width}x{height}"
            )));
        }
        if alphabet_size == 0 {
            return Err(Error::InvalidArgument("alphabet size must be positive".into()));
        }
        if values.len() != width * height {
            return Err(Error::InvalidArgument(format!(
                "raster {width}x{height} needs {} values, got {}",
                width * height,
                values.len()
            )));
        }
        if let Some(&value) = values.iter().find(|&&v| v as usize >= alphabet_size) {
            return Err(Error::SymbolOutOfRange { value, alphabet_size });
        }
        Ok(Self {
            width,
            height,
            alphabet_size,
            values,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn get(&self, row: usize, col: usize) -> u32 {
        self.values[row * self.width + col]
    }

    pub(crate) fn dims(&self) -> (usize, usize) {
        (self.height, self.width)
    }
}

/// Per-pixel inclusion flags restricting where estimators look.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PixelMask {
    width: usize,
    height: usize,
    included: Vec<bool>,
}

impl PixelMask {
    pub fn new(width: usize, height: usize, included: Vec<bool>) -> Result<Self> {
        if included.len() != width * height {
            return Err(Error::InvalidArgument(format!(
                "mask {width}x{height} needs {} flags, got {}",
                width * height,
                included.len()
            )));
        }
        Ok(Self {
            width,
            height,
            included,
        })
    }

    /// Mask including every pixel.
    pub fn all(width: usize, height: usize) -> Self {
        Self {
            width,
            height,
            included: vec![true; width * height],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn included(&self) -> &[bool] {
        &self.included
    }

    pub fn count(&self) -> usize {
        self.included.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.included.iter().any(|&b| b)
    }

    pub(crate) fn dims(&self) -> (usize, usize) {
        (self.height, self.width)
    }
}

/// Equal-width min-max binning of a raw band into `bins` symbols.
///
/// `v` maps to `floor((v - min) * bins / (max - min))`, clamped to `bins - 1`.
/// A constant band maps entirely to symbol 0.
pub fn quantize_band(values: &[f64], width: usize, height: usize, bins: usize) -> Result<DiscreteRaster> {
    quantize_with_range(values, width, height, bins, None)
}

/// Like [`quantize_band`], but the binning range is the min-max over the
/// included pixels only. Excluded pixels are clamped into the edge bins, so
/// they never influence the symbols of included pixels.
pub fn quantize_band_masked(
    values: &[f64],
    width: usize,
    height: usize,
    bins: usize,
    mask: &PixelMask,
) -> Result<DiscreteRaster> {
    if mask.dims() != (height, width) {
        return Err(Error::dims((height, width), mask.dims()));
    }
    if mask.is_empty() {
        return Err(Error::EmptySupport);
    }
    quantize_with_range(values, width, height, bins, Some(mask))
}

fn quantize_with_range(
    values: &[f64],
    width: usize,
    height: usize,
    bins: usize,
    mask: Option<&PixelMask>,
) -> Result<DiscreteRaster> {
    if bins < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 bins, got {bins}")));
    }
    if width == 0 || height == 0 || values.len() != width * height {
        return Err(Error::InvalidArgument(format!(
            "raster {width}x{height} needs {} values, got {}",
            width * height,
            values.len()
        )));
    }
    if let Some(i) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite {
            row: i / width,
            col: i % width,
            value: values[i],
        });
    }

    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for (i, &v) in values.iter().enumerate() {
        if mask.is_none_or(|m| m.included[i]) {
            lo = lo.min(v);
            hi = hi.max(v);
        }
    }

    let top = (bins - 1) as u32;
    let symbols = if hi > lo {
        let scale = bins as f64 / (hi - lo);
        values
            .iter()
            .map(|&v| {
                let bin = ((v - lo) * scale).floor();
                if bin <= 0.0 {
                    0
                } else {
                    (bin as u32).min(top)
                }
            })
            .collect()
    } else {
        vec![0; values.len()]
    };
    DiscreteRaster::new(width, height, bins, symbols)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_raster_maps_to_zero() {
        let r = quantize_band(&[42.0; 12], 4, 3, 256).unwrap();
        assert!(r.values().iter().all(|&v| v == 0));
        assert_eq!(r.alphabet_size(), 256);
    }

    #[test]
    fn sensor_range_endpoints_split_into_two_bins() {
        let r = quantize_band(&[955.0, 9406.0], 2, 1, 2).unwrap();
        assert_eq!(r.values(), &[0, 1]);
    }

    #[test]
    fn sixteen_levels_map_to_identity() {
        let raw: Vec<f64> = (0..16).map(f64::from).collect();
        let r = quantize_band(&raw, 4, 4, 16).unwrap();
        assert_eq!(r.values(), &(0..16).collect::<Vec<u32>>()[..]);
    }

    #[test]
    fn non_finite_value_names_pixel() {
        let mut raw = vec![1.0; 6];
        raw[4] = f64::NAN;
        match quantize_band(&raw, 3, 2, 4) {
            Err(Error::NonFinite { row: 1, col: 1, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_single_bin() {
        assert!(quantize_band(&[1.0, 2.0], 2, 1, 1).is_err());
    }

    #[test]
    fn masked_range_ignores_excluded_pixels() {
        let raw = [0.0, 10.0, 20.0, 1000.0];
        let mask = PixelMask::new(4, 1, vec![true, true, true, false]).unwrap();
        let r = quantize_band_masked(&raw, 4, 1, 4, &mask).unwrap();
        // range is [0, 20]; the excluded outlier clamps to the top bin
        assert_eq!(r.values(), &[0, 2, 3, 3]);
    }

    #[test]
    fn symbols_must_fit_alphabet() {
        assert!(matches!(
            DiscreteRaster::new(2, 1, 2, vec![0, 2]),
            Err(Error::SymbolOutOfRange { value: 2, .. })
        ));
    }
}
