//! Exact laws of the root-configuration count under both tree models.

mod cdf;
mod moments;
mod pmf;

pub use cdf::{cdf_table, cdf_table_for, figure_grid, max_normal_deviation, CdfRow};
pub use moments::{log_moments, log_moments_with_bits, mean_log_f64, LogMoments, DEFAULT_FRACTIONAL_BITS};
pub use pmf::{
    pmf, pmf_divisor_sum, pmf_oracle, pmf_sequence, pmf_sequence_with_cap, pmf_with_cap, Pmf,
    DEFAULT_PMF_CAP, DIVISOR_SUM_CAP, ORACLE_CAP,
};
