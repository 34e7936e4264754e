//! Band selection for hyperspectral cubes driven by mutual information.
//!
//! The pipeline has two filter stages that are controlled independently:
//!
//! 1. **Relevance.** Each band is quantized and its mutual information (MI)
//!    with the ground-truth label map is estimated over labeled pixels. Bands
//!    at or below `th_relevance` bits are dropped.
//! 2. **Redundancy.** The survivors are ordered by ascending MI and the
//!    pairwise normalized MI `U(a, b) = MI(a, b) / sqrt(H(a) H(b))` is
//!    tabulated. Pairs are visited from the least to the most redundant and a
//!    band is admitted only if its `U` with every band already admitted stays
//!    below `th_redundancy`.
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`info_theory`] | histogram estimators, Fano bounds, relevance curves |
//! | [`band_selection`] | the two-threshold selector, the bandwidth-rejection baseline, estimated ground truth |
//! | [`data_model`] | cubes, ground-truth maps, splits, the synthetic band generator |
//! | [`evaluation`] | 1-NN classification, threshold sweeps, CSV/JSON reports |
//!
//! Band indices are zero-based throughout.

pub mod band_selection;
pub mod data_model;
pub mod error;
pub mod evaluation;
pub mod info_theory;

pub use error::{Error, Result};
