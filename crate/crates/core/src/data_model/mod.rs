//! Cubes, ground-truth maps, train/test splits and synthetic band suites.

mod cube;
mod ground_truth;
pub mod rng;
mod split;
mod synth;

pub use cube::{load_cube, read_header, sidecar_path, write_cube, ByteOrder, CubeHeader, DType, HsiCube, Interleave};
pub use ground_truth::{load_ground_truth, write_ground_truth, GroundTruthMap};
pub use split::{split_labeled_pixels, Pixel, TrainTestSplit};
pub use synth::{synthesize_bands, synthetic_ground_truth, DisjointPair, DuplicatePair, SyntheticSpec};
