//! Classification harness and threshold sweeps.
//!
//! Selection only ever sees quantized bands; classification works on the raw
//! reflectance of the selected bands.

mod features;
mod knn;
mod report;
mod sweep;

pub use features::{export_features_csv, extract_features, FeatureMatrix};
pub use knn::{accuracy, classify_1nn, NEAREST_NEIGHBOR};
pub use report::{
    curve_csv, emit_report, parse_accuracy_json, parse_baseline_json, parse_selection_json, parse_sweep_json, Report,
    ReportFormat, SCHEMA_VERSION,
};
pub use sweep::{classify_bands, sweep, AccuracyReport, SweepCell, SweepConfig, SweepGrid};
