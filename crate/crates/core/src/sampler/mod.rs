//! Monte Carlo trees and root-configuration counts under both models.

mod report;
mod root_count;
mod trees;

pub use report::{
    dkw_epsilon, empirical_report, empirical_report_with_threads, lane_rng, CdfPoint,
    SampleReport, DEFAULT_DKW_ALPHA, LANES, RNG_NAME,
};
pub use root_count::{sample_root_count, RootCountSampler};
pub use trees::{sample_uniform_labeled, sample_yule_labeled};
