//! Two-threshold band selection and the bandwidth-rejection baseline.

mod baseline;
mod estimated_gt;
mod pipeline;
mod ranking;
mod redundancy;

pub use baseline::{bandwidth_rejection, BaselineSelection};
pub use estimated_gt::{band_average, estimate_ground_truth};
pub use pipeline::{select_bands, BandStatistics, SelectionResult};
pub use ranking::{rank_by_relevance, RelevanceRanking, Thresholds};
pub use redundancy::{
    build_redundancy_matrix, select_nonredundant, Admission, MemberCheck, NonRedundantSet, PickRecord,
    RedundancyMatrix, SENTINEL,
};
