//! Plug-in (histogram) estimators of entropy and mutual information over
//! masked discrete rasters, plus Fano bounds on classification error.
//!
//! All quantities are in bits. Estimators only ever look at the pixels a
//! [`PixelMask`] includes.

mod estimators;
mod fano;
mod raster;
pub(crate) mod relevance;

pub use estimators::{entropy, joint_entropy, mutual_information, normalized_mi, JointHistogram};
pub use fano::{fano_bounds, FanoBounds};
pub use raster::{quantize_band, quantize_band_masked, DiscreteRaster, PixelMask};
pub use relevance::{relevance_curve, DEFAULT_BINS};
